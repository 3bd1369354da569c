#include "svtnet/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace svtnet {

namespace {

struct BnPoint {
    double b, d, tau;
};

inline double pair_cost(const BnPoint& x, const BnPoint& y, double xi) {
    return std::max({std::abs(x.b - y.b), std::abs(x.d - y.d), xi * std::abs(x.tau - y.tau)});
}

inline double diag_cost(const BnPoint& x) { return (x.d - x.b) / 2.0; }

/// Perfect-matching feasibility at threshold c in the augmented bipartite
/// graph (left: X plus diagonal copies of Y, right: Y plus diagonal copies
/// of X); diagonal copies match each other at zero cost.
class BottleneckMatcher {
public:
    BottleneckMatcher(std::vector<BnPoint> xs, std::vector<BnPoint> ys, double xi)
        : xs_(std::move(xs)), ys_(std::move(ys)), xi_(xi) {}

    double distance() {
        if (xs_.empty() && ys_.empty()) return 0.0;
        std::vector<double> candidates{0.0};
        for (const auto& x : xs_) candidates.push_back(diag_cost(x));
        for (const auto& y : ys_) candidates.push_back(diag_cost(y));
        for (const auto& x : xs_)
            for (const auto& y : ys_) candidates.push_back(pair_cost(x, y, xi_));
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        size_t lo = 0, hi = candidates.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (feasible(candidates[mid])) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return candidates[lo];
    }

private:
    bool edge_ok(size_t left, size_t right, double c) const {
        const size_t nx = xs_.size(), ny = ys_.size();
        if (left < nx) {
            if (right < ny) return pair_cost(xs_[left], ys_[right], xi_) <= c;
            return (right - ny) == left && diag_cost(xs_[left]) <= c;
        }
        // left is the diagonal copy of y_{left-nx}
        if (right < ny) return (left - nx) == right && diag_cost(ys_[right]) <= c;
        return true;  // diagonal with diagonal, cost 0
    }

    bool augment(size_t left, double c, std::vector<int>& match_right,
                 std::vector<char>& visited) const {
        const size_t total = xs_.size() + ys_.size();
        for (size_t right = 0; right < total; ++right) {
            if (visited[right] || !edge_ok(left, right, c)) continue;
            visited[right] = 1;
            if (match_right[right] < 0 ||
                augment(static_cast<size_t>(match_right[right]), c, match_right, visited)) {
                match_right[right] = static_cast<int>(left);
                return true;
            }
        }
        return false;
    }

    bool feasible(double c) const {
        const size_t total = xs_.size() + ys_.size();
        std::vector<int> match_right(total, -1);
        for (size_t left = 0; left < total; ++left) {
            std::vector<char> visited(total, 0);
            if (!augment(left, c, match_right, visited)) return false;
        }
        return true;
    }

    std::vector<BnPoint> xs_, ys_;
    double xi_;
};

/// Essential classes must match among themselves; sorted births minimize
/// the maximal difference.
double essential_cost(std::vector<double> bx, std::vector<double> by) {
    if (bx.size() != by.size()) return kInfiniteDeath;
    std::sort(bx.begin(), bx.end());
    std::sort(by.begin(), by.end());
    double cost = 0.0;
    for (size_t i = 0; i < bx.size(); ++i) {
        cost = std::max(cost, std::abs(bx[i] - by[i]));
    }
    return cost;
}

}  // namespace

double bottleneck_2d(const Diagram2D& x, const Diagram2D& y) {
    std::vector<BnPoint> xs, ys;
    std::vector<double> bx_inf, by_inf;
    for (const auto& p : x.pairs) {
        if (std::isinf(p.death)) {
            bx_inf.push_back(p.birth);
        } else {
            xs.push_back(BnPoint{p.birth, p.death, 0.0});
        }
    }
    for (const auto& p : y.pairs) {
        if (std::isinf(p.death)) {
            by_inf.push_back(p.birth);
        } else {
            ys.push_back(BnPoint{p.birth, p.death, 0.0});
        }
    }
    const double ess = essential_cost(std::move(bx_inf), std::move(by_inf));
    if (std::isinf(ess)) return kInfiniteDeath;
    return std::max(ess, BottleneckMatcher(std::move(xs), std::move(ys), 0.0).distance());
}

double bottleneck_3d(const Diagram3D& e, const Diagram3D& f, double xi) {
    if (!(xi > 0.0)) {
        throw std::invalid_argument("rescaling coefficient xi must be positive");
    }
    std::vector<BnPoint> xs, ys;
    for (const auto& p : e.points) {
        if (!p.essential) xs.push_back(BnPoint{p.birth, p.death, p.tau});
    }
    for (const auto& p : f.points) {
        if (!p.essential) ys.push_back(BnPoint{p.birth, p.death, p.tau});
    }
    return BottleneckMatcher(std::move(xs), std::move(ys), xi).distance();
}

std::pair<double, double> stability_gap(const WeightedGraph& g, const WeightedGraph& h,
                                        const std::vector<double>& tau_grid, int dim,
                                        double xi) {
    if (g.node_count() != h.node_count()) {
        throw std::invalid_argument("stability bound needs equal node counts");
    }
    RandomWalkLaplacian lg = build_laplacian(g);
    RandomWalkLaplacian lh = build_laplacian(h);
    Diagram3D dg = scale_variant_diagram(lg, tau_grid, dim);
    Diagram3D dh = scale_variant_diagram(lh, tau_grid, dim);
    const double lhs = bottleneck_3d(dg, dh, xi);
    const double rhs = 2.0 * tau_grid.back() * spectral_norm(lg.matrix - lh.matrix);
    return {lhs, rhs};
}

double spectral_norm(const Eigen::MatrixXd& a, double tol) {
    if (a.size() == 0) return 0.0;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(a.cols());
    for (int i = 0; i < v.size(); ++i) v(i) = gauss(rng);
    v.normalize();
    double sigma = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        Eigen::VectorXd w = a.transpose() * (a * v);
        double norm = w.norm();
        if (norm == 0.0) return 0.0;
        w /= norm;
        double next = std::sqrt(norm);
        if (std::abs(next - sigma) <= tol * std::max(1.0, next)) {
            return next;
        }
        sigma = next;
        v = w;
    }
    return sigma;
}

}  // namespace svtnet
