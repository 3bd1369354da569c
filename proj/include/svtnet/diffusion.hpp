#pragma once

#include <vector>

#include <Eigen/Dense>

#include "svtnet/graph.hpp"

namespace svtnet {

/// Rows of `points` are the diffusion probability vectors p(tau|i).
struct DiffusionPointCloud {
    double tau = 0.0;
    Eigen::MatrixXd points;
};

struct DistanceMatrix {
    double tau = 0.0;
    Eigen::MatrixXd d;

    int size() const { return static_cast<int>(d.rows()); }
};

/// Eigensystem of the symmetric similarity transform
/// S = D^{1/2} L D^{-1/2} (D = diag of node strengths, 1 for isolated
/// nodes). S shares eigenvalues with the random-walk Laplacian.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending, in [0, 2]
    Eigen::MatrixXd eigenvectors;  // row i is the eigenvector of eigenvalue i
    Eigen::VectorXd dsqrt;         // sqrt of node strengths (1 for isolated)

    Eigen::MatrixXd reconstruct_laplacian() const;
};

SpectralDecomposition spectral_decompose(const RandomWalkLaplacian& lap);

/// exp(-tau L) computed through the cached spectral decomposition.
Eigen::MatrixXd heat_kernel(const SpectralDecomposition& sd, double tau);
Eigen::MatrixXd heat_kernel(const RandomWalkLaplacian& lap, double tau);

DiffusionPointCloud point_cloud(const SpectralDecomposition& sd, double tau);
DiffusionPointCloud point_cloud(const RandomWalkLaplacian& lap, double tau);

DistanceMatrix distance_matrix(const DiffusionPointCloud& pc);

DistanceMatrix average_distance_matrix(const std::vector<DistanceMatrix>& mats,
                                       bool normalized);

/// Eigenvalue after the largest consecutive ratio among the smallest 20%
/// of the spectrum (zero modes guarded by delta = 1e-9).
double detect_lambda_sep(const SpectralDecomposition& sd);

double suggest_tau_max(const SpectralDecomposition& sd, double gap_factor = 10.0);

}  // namespace svtnet
