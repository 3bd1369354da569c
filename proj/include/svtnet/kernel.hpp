#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svtnet/persistence.hpp"

namespace svtnet {

struct KernelParams {
    double sigma = 1.0;
    double xi = 1.0;
};

struct GramMatrix {
    Eigen::MatrixXd k;
    std::vector<std::string> ids;
    bool normalized = false;

    int size() const { return static_cast<int>(k.rows()); }
};

/// Gaussian diagram kernel with mirrored counter-terms,
/// K(E,F) = 1/(sigma sqrt(2 pi)) * sum (exp(-d^2/2s^2) - exp(-dbar^2/2s^2)).
double kernel_value(const Diagram3D& e, const Diagram3D& f, const KernelParams& p);

/// sigma^2 = half the median over diagrams of the per-diagram median
/// squared (birth,death) pair distance; xi = sigma.
KernelParams bandwidth_heuristic(const std::vector<Diagram3D>& diagrams);

GramMatrix gram_matrix(const std::vector<Diagram3D>& diagrams, const KernelParams& p,
                       bool normalized,
                       std::vector<std::string> ids = {});

GramMatrix normalize_kernel(const GramMatrix& k);

GramMatrix combine_grams(const std::vector<GramMatrix>& grams,
                         const std::vector<double>& weights);

/// Raw Gram matrices of the diagrams restricted to tau <= cutoff, one per
/// cutoff, sharing one pass over the point pairs.
std::vector<Eigen::MatrixXd> gram_tau_prefix(const std::vector<Diagram3D>& diagrams,
                                             const KernelParams& p,
                                             const std::vector<double>& cutoffs);

}  // namespace svtnet
