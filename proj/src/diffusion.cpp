#include "svtnet/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svtnet {

namespace {
constexpr double kZeroModeGuard = 1e-9;
}

Eigen::MatrixXd SpectralDecomposition::reconstruct_laplacian() const {
    const int n = static_cast<int>(eigenvalues.size());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        s.noalias() += eigenvalues(i) * (eigenvectors.row(i).transpose() * eigenvectors.row(i));
    }
    // undo the similarity transform: L = D^{-1/2} S D^{1/2}
    return dsqrt.cwiseInverse().asDiagonal() * s * dsqrt.asDiagonal();
}

SpectralDecomposition spectral_decompose(const RandomWalkLaplacian& lap) {
    const int n = lap.size();
    SpectralDecomposition sd;
    sd.dsqrt = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i) {
        if (lap.strength(i) > 0.0) sd.dsqrt(i) = std::sqrt(lap.strength(i));
    }
    Eigen::MatrixXd sym = sd.dsqrt.asDiagonal() * lap.matrix *
                          sd.dsqrt.cwiseInverse().asDiagonal();
    sym = 0.5 * (sym + sym.transpose().eval());  // kill rounding asymmetry
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of the diffusion operator failed");
    }
    sd.eigenvalues = solver.eigenvalues();
    sd.eigenvectors = solver.eigenvectors().transpose();
    return sd;
}

Eigen::MatrixXd heat_kernel(const SpectralDecomposition& sd, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("heat kernel timescale must be positive");
    }
    const Eigen::VectorXd decay = (-tau * sd.eigenvalues.array()).exp().matrix();
    Eigen::MatrixXd exp_sym = sd.eigenvectors.transpose() * decay.asDiagonal() * sd.eigenvectors;
    Eigen::MatrixXd result = sd.dsqrt.cwiseInverse().asDiagonal() * exp_sym * sd.dsqrt.asDiagonal();
    if (!result.allFinite()) {
        throw std::runtime_error("heat kernel produced non-finite entries");
    }
    return result;
}

Eigen::MatrixXd heat_kernel(const RandomWalkLaplacian& lap, double tau) {
    return heat_kernel(spectral_decompose(lap), tau);
}

DiffusionPointCloud point_cloud(const SpectralDecomposition& sd, double tau) {
    DiffusionPointCloud pc;
    pc.tau = tau;
    pc.points = heat_kernel(sd, tau);
    const int n = static_cast<int>(pc.points.rows());
    for (int i = 0; i < n; ++i) {
        const double row_sum = pc.points.row(i).sum();
        if (std::abs(row_sum - 1.0) > 1e-9) {
            throw std::runtime_error("diffusion row does not conserve probability");
        }
        for (int j = 0; j < n; ++j) {
            double v = pc.points(i, j);
            if (v < -1e-12 || v > 1.0 + 1e-12) {
                throw std::runtime_error("diffusion probability out of [0, 1]");
            }
            if (v < 0.0) pc.points(i, j) = 0.0;
        }
    }
    return pc;
}

DiffusionPointCloud point_cloud(const RandomWalkLaplacian& lap, double tau) {
    return point_cloud(spectral_decompose(lap), tau);
}

DistanceMatrix distance_matrix(const DiffusionPointCloud& pc) {
    const int n = static_cast<int>(pc.points.rows());
    DistanceMatrix dm;
    dm.tau = pc.tau;
    dm.d = Eigen::MatrixXd::Zero(n, n);
    const Eigen::VectorXd sq = pc.points.rowwise().squaredNorm();
    Eigen::MatrixXd gram = pc.points * pc.points.transpose();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d2 = sq(i) + sq(j) - 2.0 * gram(i, j);
            double d = std::sqrt(std::max(0.0, d2));
            dm.d(i, j) = d;
            dm.d(j, i) = d;
        }
    }
    return dm;
}

DistanceMatrix average_distance_matrix(const std::vector<DistanceMatrix>& mats,
                                       bool normalized) {
    if (mats.empty()) {
        throw std::invalid_argument("average of an empty distance-matrix list");
    }
    const int n = mats.front().size();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (const auto& m : mats) {
        if (m.size() != n) {
            throw std::invalid_argument("distance matrices of different sizes");
        }
        if (normalized) {
            const double mx = m.d.maxCoeff();
            if (mx <= 0.0) {
                throw std::invalid_argument("cannot normalize an all-zero distance matrix");
            }
            acc += m.d / mx;
        } else {
            acc += m.d;
        }
    }
    DistanceMatrix out;
    out.tau = 0.0;
    out.d = acc / static_cast<double>(mats.size());
    return out;
}

double detect_lambda_sep(const SpectralDecomposition& sd) {
    const int n = static_cast<int>(sd.eigenvalues.size());
    if (n < 2) {
        throw std::invalid_argument("need at least two eigenvalues to detect lambda_sep");
    }
    if (sd.eigenvalues(n - 1) <= kZeroModeGuard) {
        throw std::invalid_argument("all eigenvalues are zero (empty graph)");
    }
    const int window = std::max(1, static_cast<int>(0.2 * n));
    double best_ratio = -1.0;
    double lambda_sep = sd.eigenvalues(n - 1);
    for (int k = 0; k < window && k + 1 < n; ++k) {
        const double lo = std::max(sd.eigenvalues(k), kZeroModeGuard);
        const double ratio = sd.eigenvalues(k + 1) / lo;
        if (ratio > best_ratio && sd.eigenvalues(k + 1) > kZeroModeGuard) {
            best_ratio = ratio;
            lambda_sep = sd.eigenvalues(k + 1);
        }
    }
    return lambda_sep;
}

double suggest_tau_max(const SpectralDecomposition& sd, double gap_factor) {
    if (!(gap_factor > 0.0)) {
        throw std::invalid_argument("gap_factor must be positive");
    }
    return gap_factor / detect_lambda_sep(sd);
}

}  // namespace svtnet
