#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace svtnet {

struct ExperimentConfig {
    std::string out_dir;  // empty: compute only, write nothing
    std::uint64_t seed = 12345;
    bool full_scale = false;
    int threads = 1;
};

/// Community-strength sweep of the four-community planted-partition
/// model: kappa statistic per mixing ratio r and the detected transition.
struct GnTransitionResult {
    std::vector<double> r_values;
    std::vector<double> kappa;  // one per split position s = 2..M
    double r_star = 0.0;
};

GnTransitionResult run_gn_transition(const ExperimentConfig& cfg);

/// Four-class model identification (planted-partition / small-world,
/// original and degree-preserving randomizations), plus the two-class
/// configuration-only subproblem against the common-measures features.
struct ModelIdResult {
    double mean_accuracy = 0.0;
    double conf_svt_accuracy = 0.0;
    double conf_common_accuracy = 0.0;
    std::vector<std::string> class_names;
    Eigen::MatrixXd confusion;  // row-normalized, rows = true class
};

ModelIdResult run_model_id(const ExperimentConfig& cfg);

/// Preferential-attachment vs. configuration classification accuracy as a
/// function of the largest diffusion timescale kept.
struct BaTauMaxResult {
    std::vector<double> tau_max;
    std::vector<double> accuracy;
};

BaTauMaxResult run_ba_taumax(const ExperimentConfig& cfg);

}  // namespace svtnet
