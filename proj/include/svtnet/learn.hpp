#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svtnet/kernel.hpp"

namespace svtnet {

/// Kernel Fisher discriminant ratio over all contiguous splits of an
/// ordered sample sequence. values[t] is the statistic for the split
/// where the second segment starts at position s = t + 2 (1-based),
/// s = 2..M. argmax ties resolve to the smallest s.
struct KfdrSeries {
    std::vector<double> values;
    double eta = 0.0;
    int argmax_index = 0;  // index into values

    int change_position() const { return argmax_index + 2; }
};

KfdrSeries kfdr_series(const Eigen::MatrixXd& k, double eta);

/// Convenience wrapper: position s (1-based start of the second segment)
/// maximizing the discriminant ratio.
int detect_changepoint(const Eigen::MatrixXd& k, double eta);

/// One-vs-one support vector machine on a precomputed kernel.
struct SvmModel {
    struct BinaryModel {
        int positive_class = 0;
        int negative_class = 0;
        std::vector<int> sv_index;       // indices into the training set
        std::vector<double> sv_coeff;    // alpha_i * y_i
        double bias = 0.0;
    };
    std::vector<int> classes;
    std::vector<BinaryModel> binaries;
    double c = 1.0;
};

/// Sequential minimal optimization with maximal-violating-pair selection;
/// stops when the KKT violation drops below `tol`.
SvmModel svm_train(const Eigen::MatrixXd& k, const std::vector<int>& labels, double c,
                   double tol = 1e-3, long max_iter = 10000000);

/// k_test_train(i, j) = kernel between test sample i and training sample j.
std::vector<int> svm_predict(const SvmModel& model, const Eigen::MatrixXd& k_test_train);

/// Decision value of one binary model for each test row.
std::vector<double> svm_decision(const SvmModel::BinaryModel& bin,
                                 const Eigen::MatrixXd& k_test_train);

struct KernelPcaResult {
    Eigen::MatrixXd coords;       // rows = samples, cols = components
    Eigen::VectorXd eigenvalues;  // one per component, descending
};

/// Principal components in feature space from the double-centered Gram
/// matrix; negative eigenvalues are clamped to zero.
KernelPcaResult kernel_pca(const Eigen::MatrixXd& k, int n_components);

struct CrossValidationResult {
    double mean_accuracy = 0.0;
    std::vector<double> repeat_accuracies;
    std::vector<int> classes;
    Eigen::MatrixXd confusion;  // row-normalized, rows = true class
    std::vector<double> chosen_c;
};

/// Stratified k-fold cross-validation, repeated; C is chosen per training
/// fold by an inner 3-fold search over `c_grid`.
CrossValidationResult cross_validate(const Eigen::MatrixXd& k, const std::vector<int>& labels,
                                     int folds, int repeats, unsigned long seed,
                                     const std::vector<double>& c_grid = {0.01, 0.1, 1.0, 10.0,
                                                                          100.0});

}  // namespace svtnet
