#pragma once

#include <utility>
#include <vector>

#include "svtnet/persistence.hpp"

namespace svtnet {

/// Exact bottleneck distance between two fixed-tau diagrams under the
/// infinity norm, matching to the diagonal allowed. Returns +inf when
/// the essential (infinite-death) pair counts differ.
double bottleneck_2d(const Diagram2D& x, const Diagram2D& y);

/// Bottleneck under the relative infinity norm
/// max(|b1-b2|, |d1-d2|, xi*|tau1-tau2|); diagonal projections stay in
/// their tau plane. Points flagged essential are excluded.
double bottleneck_3d(const Diagram3D& e, const Diagram3D& f, double xi);

/// Left and right side of the perturbation bound: the 3D bottleneck of
/// the two scale-variant diagrams vs. 2*tau_K times the spectral norm
/// of the Laplacian difference.
std::pair<double, double> stability_gap(const WeightedGraph& g, const WeightedGraph& h,
                                        const std::vector<double>& tau_grid, int dim,
                                        double xi);

/// Matrix 2-norm via power iteration on A^T A.
double spectral_norm(const Eigen::MatrixXd& a, double tol = 1e-10);

}  // namespace svtnet
