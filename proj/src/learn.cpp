#include "svtnet/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace svtnet {

namespace {

void check_square(const Eigen::MatrixXd& k) {
    if (k.rows() != k.cols() || k.rows() == 0) {
        throw std::invalid_argument("kernel matrix must be square and nonempty");
    }
}

}  // namespace

KfdrSeries kfdr_series(const Eigen::MatrixXd& k, double eta) {
    check_square(k);
    if (!(eta > 0.0)) {
        throw std::invalid_argument("regularization eta must be positive");
    }
    const int m = static_cast<int>(k.rows());
    if (m < 2) {
        throw std::invalid_argument("need at least two samples for a split");
    }
    KfdrSeries out;
    out.eta = eta;
    out.values.reserve(m - 1);
    for (int s = 2; s <= m; ++s) {
        const int m1 = s - 1;
        const int m2 = m - m1;
        // within-segment centering of the kernel rows
        Eigen::MatrixXd nk = k;
        Eigen::RowVectorXd mean1 = k.topRows(m1).colwise().mean();
        Eigen::RowVectorXd mean2 = k.bottomRows(m2).colwise().mean();
        nk.topRows(m1).rowwise() -= mean1;
        nk.bottomRows(m2).rowwise() -= mean2;

        Eigen::MatrixXd b = (1.0 / m) * nk + eta * Eigen::MatrixXd::Identity(m, m);
        Eigen::VectorXd delta(m);
        delta.head(m1).setConstant(-1.0 / m1);
        delta.tail(m2).setConstant(1.0 / m2);
        Eigen::VectorXd x = b.partialPivLu().solve(delta);
        out.values.push_back((static_cast<double>(m1) * m2 / m) * delta.dot(k * x));
    }
    out.argmax_index = 0;
    for (size_t t = 1; t < out.values.size(); ++t) {
        if (out.values[t] > out.values[out.argmax_index]) {
            out.argmax_index = static_cast<int>(t);
        }
    }
    return out;
}

int detect_changepoint(const Eigen::MatrixXd& k, double eta) {
    return kfdr_series(k, eta).change_position();
}

namespace {

/// Binary SMO on the dual problem min 1/2 a'Qa - e'a, 0 <= a <= C,
/// y'a = 0, with Q_ij = y_i y_j K_ij.
struct BinarySmo {
    const Eigen::MatrixXd& k;
    const std::vector<double>& y;
    double c;
    double tol;
    long max_iter;

    std::vector<double> alpha;
    double bias = 0.0;

    void solve() {
        const int n = static_cast<int>(y.size());
        alpha.assign(n, 0.0);
        std::vector<double> grad(n, -1.0);  // grad_i = (Qa)_i - 1

        for (long iter = 0; iter < max_iter; ++iter) {
            // maximal violating pair
            int i = -1, j = -1;
            double gmax = -std::numeric_limits<double>::infinity();
            double gmin = std::numeric_limits<double>::infinity();
            for (int t = 0; t < n; ++t) {
                const bool up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
                const bool low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
                const double v = -y[t] * grad[t];
                if (up && v > gmax) {
                    gmax = v;
                    i = t;
                }
                if (low && v < gmin) {
                    gmin = v;
                    j = t;
                }
            }
            if (i < 0 || j < 0 || gmax - gmin < tol) break;

            // analytic update of the pair (i, j)
            const double qii = k(i, i), qjj = k(j, j), qij = y[i] * y[j] * k(i, j);
            double quad = qii + qjj - 2.0 * y[i] * y[j] * k(i, j);
            (void)qij;
            if (quad <= 0.0) quad = 1e-12;
            const double delta = (gmax - gmin) / quad;

            const double old_ai = alpha[i], old_aj = alpha[j];
            alpha[i] += y[i] * delta;
            alpha[j] -= y[j] * delta;

            // clip to the box keeping y'a constant
            double sum = y[i] * old_ai + y[j] * old_aj;
            alpha[i] = std::clamp(alpha[i], 0.0, c);
            alpha[j] = y[j] * (sum - y[i] * alpha[i]);
            alpha[j] = std::clamp(alpha[j], 0.0, c);
            alpha[i] = y[i] * (sum - y[j] * alpha[j]);
            alpha[i] = std::clamp(alpha[i], 0.0, c);

            const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
            if (dai == 0.0 && daj == 0.0) break;
            for (int t = 0; t < n; ++t) {
                grad[t] += y[t] * (y[i] * k(i, t) * dai + y[j] * k(j, t) * daj);
            }
        }

        // bias from the free support vectors, midpoint fallback otherwise
        double sum = 0.0;
        int count = 0;
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < static_cast<int>(y.size()); ++t) {
            const double yg = y[t] * grad[t];
            if (alpha[t] > 0.0 && alpha[t] < c) {
                sum += -yg;
                ++count;
            } else if ((y[t] > 0 && alpha[t] == 0.0) || (y[t] < 0 && alpha[t] == c)) {
                ub = std::min(ub, -yg);
            } else {
                lb = std::max(lb, -yg);
            }
        }
        if (count > 0) {
            bias = sum / count;
        } else if (std::isfinite(ub) && std::isfinite(lb)) {
            bias = 0.5 * (ub + lb);
        } else {
            bias = 0.0;
        }
    }
};

}  // namespace

SvmModel svm_train(const Eigen::MatrixXd& k, const std::vector<int>& labels, double c,
                   double tol, long max_iter) {
    check_square(k);
    if (static_cast<int>(labels.size()) != k.rows()) {
        throw std::invalid_argument("label count does not match kernel size");
    }
    if (!(c > 0.0)) {
        throw std::invalid_argument("margin penalty C must be positive");
    }
    SvmModel model;
    model.c = c;
    model.classes = labels;
    std::sort(model.classes.begin(), model.classes.end());
    model.classes.erase(std::unique(model.classes.begin(), model.classes.end()),
                        model.classes.end());
    if (model.classes.size() < 2) {
        throw std::invalid_argument("need at least two classes");
    }

    for (size_t a = 0; a < model.classes.size(); ++a) {
        for (size_t b = a + 1; b < model.classes.size(); ++b) {
            const int pos = model.classes[a], neg = model.classes[b];
            std::vector<int> idx;
            std::vector<double> y;
            for (size_t t = 0; t < labels.size(); ++t) {
                if (labels[t] == pos) {
                    idx.push_back(static_cast<int>(t));
                    y.push_back(1.0);
                } else if (labels[t] == neg) {
                    idx.push_back(static_cast<int>(t));
                    y.push_back(-1.0);
                }
            }
            Eigen::MatrixXd sub(idx.size(), idx.size());
            for (size_t r = 0; r < idx.size(); ++r) {
                for (size_t s = 0; s < idx.size(); ++s) {
                    sub(r, s) = k(idx[r], idx[s]);
                }
            }
            BinarySmo smo{sub, y, c, tol, max_iter};
            smo.solve();

            SvmModel::BinaryModel bin;
            bin.positive_class = pos;
            bin.negative_class = neg;
            bin.bias = smo.bias;
            for (size_t t = 0; t < idx.size(); ++t) {
                if (smo.alpha[t] > 0.0) {
                    bin.sv_index.push_back(idx[t]);
                    bin.sv_coeff.push_back(smo.alpha[t] * y[t]);
                }
            }
            model.binaries.push_back(std::move(bin));
        }
    }
    return model;
}

std::vector<double> svm_decision(const SvmModel::BinaryModel& bin,
                                 const Eigen::MatrixXd& k_test_train) {
    std::vector<double> out(k_test_train.rows());
    for (Eigen::Index r = 0; r < k_test_train.rows(); ++r) {
        double v = bin.bias;
        for (size_t t = 0; t < bin.sv_index.size(); ++t) {
            v += bin.sv_coeff[t] * k_test_train(r, bin.sv_index[t]);
        }
        out[r] = v;
    }
    return out;
}

std::vector<int> svm_predict(const SvmModel& model, const Eigen::MatrixXd& k_test_train) {
    const Eigen::Index n = k_test_train.rows();
    std::map<int, int> class_slot;
    for (size_t i = 0; i < model.classes.size(); ++i) {
        class_slot[model.classes[i]] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> votes(n, std::vector<int>(model.classes.size(), 0));
    for (const auto& bin : model.binaries) {
        std::vector<double> dec = svm_decision(bin, k_test_train);
        for (Eigen::Index r = 0; r < n; ++r) {
            const int winner = dec[r] >= 0.0 ? bin.positive_class : bin.negative_class;
            ++votes[r][class_slot[winner]];
        }
    }
    std::vector<int> out(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        int best = 0;
        for (size_t s = 1; s < votes[r].size(); ++s) {
            if (votes[r][s] > votes[r][best]) best = static_cast<int>(s);
        }
        out[r] = model.classes[best];
    }
    return out;
}

KernelPcaResult kernel_pca(const Eigen::MatrixXd& k, int n_components) {
    check_square(k);
    const int m = static_cast<int>(k.rows());
    if (n_components < 1 || n_components > m) {
        throw std::invalid_argument("component count must be in [1, sample count]");
    }
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) -
                        Eigen::MatrixXd::Constant(m, m, 1.0 / m);
    Eigen::MatrixXd centered = h * k * h;
    centered = 0.5 * (centered + centered.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(centered);

    KernelPcaResult out;
    out.coords.resize(m, n_components);
    out.eigenvalues.resize(n_components);
    for (int c = 0; c < n_components; ++c) {
        const int src = m - 1 - c;  // eigenvalues ascending in the solver
        const double lam = std::max(0.0, es.eigenvalues()(src));
        out.eigenvalues(c) = lam;
        out.coords.col(c) = es.eigenvectors().col(src) * std::sqrt(lam);
    }
    return out;
}

namespace {

std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels, int folds,
                                               std::mt19937_64& rng) {
    std::map<int, std::vector<int>> by_class;
    for (size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(static_cast<int>(i));
    }
    std::vector<std::vector<int>> fold_idx(folds);
    for (auto& [lbl, idx] : by_class) {
        (void)lbl;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (size_t t = 0; t < idx.size(); ++t) {
            fold_idx[t % folds].push_back(idx[t]);
        }
    }
    return fold_idx;
}

Eigen::MatrixXd slice(const Eigen::MatrixXd& k, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t s = 0; s < cols.size(); ++s) {
            out(r, s) = k(rows[r], cols[s]);
        }
    }
    return out;
}

double accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
    int hits = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == pred[i]) ++hits;
    }
    return truth.empty() ? 0.0 : static_cast<double>(hits) / truth.size();
}

double select_c(const Eigen::MatrixXd& k_train, const std::vector<int>& y_train,
                const std::vector<double>& c_grid, std::mt19937_64& rng) {
    const int inner_folds = 3;
    auto fold_idx = stratified_folds(y_train, inner_folds, rng);
    double best_c = c_grid.front();
    double best_acc = -1.0;
    for (double c : c_grid) {
        double acc_sum = 0.0;
        int acc_count = 0;
        for (int f = 0; f < inner_folds; ++f) {
            std::vector<int> tr, te;
            for (int g = 0; g < inner_folds; ++g) {
                auto& dst = (g == f) ? te : tr;
                dst.insert(dst.end(), fold_idx[g].begin(), fold_idx[g].end());
            }
            if (te.empty() || tr.empty()) continue;
            std::vector<int> y_tr, y_te;
            for (int i : tr) y_tr.push_back(y_train[i]);
            for (int i : te) y_te.push_back(y_train[i]);
            std::vector<int> uniq = y_tr;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            if (uniq.size() < 2) continue;
            SvmModel m = svm_train(slice(k_train, tr, tr), y_tr, c);
            auto pred = svm_predict(m, slice(k_train, te, tr));
            acc_sum += accuracy(y_te, pred);
            ++acc_count;
        }
        const double acc = acc_count > 0 ? acc_sum / acc_count : 0.0;
        if (acc > best_acc) {
            best_acc = acc;
            best_c = c;
        }
    }
    return best_c;
}

}  // namespace

CrossValidationResult cross_validate(const Eigen::MatrixXd& k, const std::vector<int>& labels,
                                     int folds, int repeats, unsigned long seed,
                                     const std::vector<double>& c_grid) {
    check_square(k);
    if (static_cast<int>(labels.size()) != k.rows()) {
        throw std::invalid_argument("label count does not match kernel size");
    }
    if (folds < 2 || repeats < 1) {
        throw std::invalid_argument("need folds >= 2 and repeats >= 1");
    }
    if (c_grid.empty()) {
        throw std::invalid_argument("empty C grid");
    }

    CrossValidationResult out;
    out.classes = labels;
    std::sort(out.classes.begin(), out.classes.end());
    out.classes.erase(std::unique(out.classes.begin(), out.classes.end()), out.classes.end());
    std::map<int, int> class_slot;
    for (size_t i = 0; i < out.classes.size(); ++i) {
        class_slot[out.classes[i]] = static_cast<int>(i);
    }
    const int nc = static_cast<int>(out.classes.size());
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(nc, nc);

    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < repeats; ++rep) {
        auto fold_idx = stratified_folds(labels, folds, rng);
        double rep_acc_sum = 0.0;
        int rep_fold_count = 0;
        for (int f = 0; f < folds; ++f) {
            std::vector<int> tr, te;
            for (int g = 0; g < folds; ++g) {
                auto& dst = (g == f) ? te : tr;
                dst.insert(dst.end(), fold_idx[g].begin(), fold_idx[g].end());
            }
            if (te.empty()) continue;
            std::vector<int> y_tr, y_te;
            for (int i : tr) y_tr.push_back(labels[i]);
            for (int i : te) y_te.push_back(labels[i]);

            const double c = c_grid.size() == 1 ? c_grid.front()
                                                : select_c(slice(k, tr, tr), y_tr, c_grid, rng);
            out.chosen_c.push_back(c);
            SvmModel m = svm_train(slice(k, tr, tr), y_tr, c);
            auto pred = svm_predict(m, slice(k, te, tr));
            rep_acc_sum += accuracy(y_te, pred);
            ++rep_fold_count;
            for (size_t i = 0; i < y_te.size(); ++i) {
                counts(class_slot[y_te[i]], class_slot[pred[i]]) += 1.0;
            }
        }
        out.repeat_accuracies.push_back(rep_acc_sum / rep_fold_count);
    }
    out.mean_accuracy = 0.0;
    for (double a : out.repeat_accuracies) out.mean_accuracy += a;
    out.mean_accuracy /= out.repeat_accuracies.size();

    out.confusion = counts;
    for (int r = 0; r < nc; ++r) {
        const double row = counts.row(r).sum();
        if (row > 0.0) out.confusion.row(r) /= row;
    }
    return out;
}

}  // namespace svtnet
