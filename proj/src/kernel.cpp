#include "svtnet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svtnet {

namespace {

// Tau planes farther apart than this exponent contribute below double
// rounding of the sum and are skipped.
constexpr double kCutoffExponent = 80.0;

// A diagram grouped by timescale plane, points stored in two contiguous
// arrays so whole tau bands can be processed with one vectorized pass.
struct BucketedDiagram {
    std::vector<double> tau;      // one entry per plane, ascending
    std::vector<int> offset;      // tau.size() + 1 prefix offsets into births
    Eigen::ArrayXd births;
    Eigen::ArrayXd deaths;
    int planes() const { return static_cast<int>(tau.size()); }
    int size(int b) const { return offset[b + 1] - offset[b]; }
};

BucketedDiagram bucket_by_tau(const Diagram3D& d) {
    std::vector<const DiagramPoint*> pts;
    pts.reserve(d.points.size());
    for (const auto& p : d.points) pts.push_back(&p);
    std::stable_sort(pts.begin(), pts.end(),
                     [](const DiagramPoint* a, const DiagramPoint* b) { return a->tau < b->tau; });
    BucketedDiagram out;
    out.births.resize(pts.size());
    out.deaths.resize(pts.size());
    out.offset.push_back(0);
    size_t start = 0;
    while (start < pts.size()) {
        size_t stop = start;
        while (stop < pts.size() && pts[stop]->tau == pts[start]->tau) ++stop;
        out.tau.push_back(pts[start]->tau);
        for (size_t t = start; t < stop; ++t) {
            out.births(t) = pts[t]->birth;
            out.deaths(t) = pts[t]->death;
        }
        out.offset.push_back(static_cast<int>(stop));
        start = stop;
    }
    return out;
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

/// Sum over point pairs of two single tau planes: direct Gaussian minus the
/// mirrored (death, birth) counter-term, both sharing the tau offset.
double block_sum(const BucketedDiagram& e, int be, const BucketedDiagram& f, int bf,
                 double tau_term, double inv2s2) {
    const int fo = f.offset[bf], fn = f.size(bf);
    auto fb = f.births.segment(fo, fn);
    auto fd = f.deaths.segment(fo, fn);
    double direct = 0.0, mirror = 0.0;
    for (int i = e.offset[be]; i < e.offset[be + 1]; ++i) {
        const double b = e.births(i), d = e.deaths(i);
        direct += (-((fb - b).square() + (fd - d).square()) * inv2s2).exp().sum();
        mirror += (-((fd - b).square() + (fb - d).square()) * inv2s2).exp().sum();
    }
    return (direct - mirror) * std::exp(-tau_term * inv2s2);
}

double raw_kernel(const BucketedDiagram& e, const BucketedDiagram& f, const KernelParams& p) {
    const double inv2s2 = 1.0 / (2.0 * p.sigma * p.sigma);
    const double xi2 = p.xi * p.xi;
    KahanSum total;
    Eigen::ArrayXd penalty;
    // planes farther apart than this window fall below the cutoff exponent
    const double window = std::sqrt(kCutoffExponent / (xi2 * inv2s2));
    for (int be = 0; be < e.planes(); ++be) {
        const auto lo_it =
            std::lower_bound(f.tau.begin(), f.tau.end(), e.tau[be] - window);
        const auto hi_it = std::upper_bound(lo_it, f.tau.end(), e.tau[be] + window);
        const int lo = static_cast<int>(lo_it - f.tau.begin());
        const int hi = static_cast<int>(hi_it - f.tau.begin());
        const int fo = f.offset[lo], fn = f.offset[hi] - fo;
        if (fn == 0) continue;
        penalty.resize(fn);
        for (int bf = lo; bf < hi; ++bf) {
            const double dt = e.tau[be] - f.tau[bf];
            penalty.segment(f.offset[bf] - fo, f.size(bf)) = xi2 * dt * dt;
        }
        auto fb = f.births.segment(fo, fn);
        auto fd = f.deaths.segment(fo, fn);
        for (int i = e.offset[be]; i < e.offset[be + 1]; ++i) {
            const double b = e.births(i), d = e.deaths(i);
            const double direct =
                (-((fb - b).square() + (fd - d).square() + penalty) * inv2s2).exp().sum();
            const double mirror =
                (-((fd - b).square() + (fb - d).square() + penalty) * inv2s2).exp().sum();
            total.add(direct - mirror);
        }
    }
    return total.sum / (p.sigma * std::sqrt(2.0 * std::numbers::pi));
}

void check_params(const KernelParams& p) {
    if (!(p.sigma > 0.0) || !(p.xi > 0.0)) {
        throw std::invalid_argument("kernel parameters sigma and xi must be positive");
    }
}

double median_inplace(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const size_t m = v.size();
    if (m % 2 == 1) return v[m / 2];
    return 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

// Deterministic total preorder on bucketed diagrams so argument order
// never changes the floating-point summation order (exact symmetry).
bool buckets_less(const BucketedDiagram& a, const BucketedDiagram& b) {
    if (a.tau.size() != b.tau.size()) return a.tau.size() < b.tau.size();
    if (a.tau != b.tau) return a.tau < b.tau;
    if (a.offset != b.offset) return a.offset < b.offset;
    for (Eigen::Index j = 0; j < a.births.size(); ++j) {
        if (a.births(j) != b.births(j)) return a.births(j) < b.births(j);
        if (a.deaths(j) != b.deaths(j)) return a.deaths(j) < b.deaths(j);
    }
    return false;
}

double kernel_value(const Diagram3D& e, const Diagram3D& f, const KernelParams& p) {
    check_params(p);
    auto be = bucket_by_tau(e);
    auto bf = bucket_by_tau(f);
    if (buckets_less(bf, be)) std::swap(be, bf);
    return raw_kernel(be, bf, p);
}

KernelParams bandwidth_heuristic(const std::vector<Diagram3D>& diagrams) {
    if (diagrams.empty()) {
        throw std::invalid_argument("bandwidth heuristic needs at least one diagram");
    }
    std::vector<double> per_diagram;
    for (const auto& d : diagrams) {
        const auto& pts = d.points;
        if (pts.size() < 2) continue;
        std::vector<double> dists;
        dists.reserve(pts.size() * (pts.size() - 1) / 2);
        for (size_t i = 0; i < pts.size(); ++i) {
            for (size_t j = i + 1; j < pts.size(); ++j) {
                const double db = pts[i].birth - pts[j].birth;
                const double dd = pts[i].death - pts[j].death;
                dists.push_back(db * db + dd * dd);
            }
        }
        per_diagram.push_back(median_inplace(dists));
    }
    if (per_diagram.empty()) {
        throw std::invalid_argument("bandwidth heuristic needs a diagram with >= 2 points");
    }
    const double sigma2 = 0.5 * median_inplace(per_diagram);
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("degenerate diagrams (coincident points); sigma would be 0");
    }
    const double sigma = std::sqrt(sigma2);
    return KernelParams{sigma, sigma};
}

GramMatrix gram_matrix(const std::vector<Diagram3D>& diagrams, const KernelParams& p,
                       bool normalized, std::vector<std::string> ids) {
    check_params(p);
    const int m = static_cast<int>(diagrams.size());
    if (ids.empty()) {
        for (int i = 0; i < m; ++i) ids.push_back("diagram_" + std::to_string(i));
    }
    if (static_cast<int>(ids.size()) != m) {
        throw std::invalid_argument("identifier count does not match diagram count");
    }
    std::vector<BucketedDiagram> buckets;
    buckets.reserve(m);
    for (const auto& d : diagrams) buckets.push_back(bucket_by_tau(d));

    GramMatrix out;
    out.ids = std::move(ids);
    out.k = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double v = raw_kernel(buckets[i], buckets[j], p);
            out.k(i, j) = v;
            out.k(j, i) = v;
        }
    }
    if (normalized) return normalize_kernel(out);
    return out;
}

GramMatrix normalize_kernel(const GramMatrix& k) {
    const int m = k.size();
    for (int i = 0; i < m; ++i) {
        if (!(k.k(i, i) > 0.0)) {
            throw std::invalid_argument("cannot normalize: zero self-similarity for '" +
                                        k.ids[i] + "' (empty diagram?)");
        }
    }
    GramMatrix out;
    out.ids = k.ids;
    out.normalized = true;
    out.k = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out.k(i, j) = k.k(i, j) / std::sqrt(k.k(i, i) * k.k(j, j));
        }
    }
    return out;
}

GramMatrix combine_grams(const std::vector<GramMatrix>& grams,
                         const std::vector<double>& weights) {
    if (grams.empty() || grams.size() != weights.size()) {
        throw std::invalid_argument("need one weight per Gram matrix");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("combination weights must be nonnegative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        throw std::invalid_argument("combination weights must sum to 1");
    }
    const int m = grams.front().size();
    for (const auto& g : grams) {
        if (g.size() != m) throw std::invalid_argument("Gram matrices of different sizes");
        if (!g.normalized) {
            throw std::invalid_argument("combine_grams expects normalized inputs");
        }
    }
    GramMatrix out;
    out.ids = grams.front().ids;
    out.normalized = true;
    out.k = Eigen::MatrixXd::Zero(m, m);
    for (size_t g = 0; g < grams.size(); ++g) {
        out.k += weights[g] * grams[g].k;
    }
    return out;
}

std::vector<Eigen::MatrixXd> gram_tau_prefix(const std::vector<Diagram3D>& diagrams,
                                             const KernelParams& p,
                                             const std::vector<double>& cutoffs) {
    check_params(p);
    if (cutoffs.empty() || !std::is_sorted(cutoffs.begin(), cutoffs.end())) {
        throw std::invalid_argument("cutoffs must be a nonempty ascending list");
    }
    const int m = static_cast<int>(diagrams.size());
    const int nc = static_cast<int>(cutoffs.size());
    std::vector<BucketedDiagram> buckets;
    buckets.reserve(m);
    for (const auto& d : diagrams) buckets.push_back(bucket_by_tau(d));

    const double inv2s2 = 1.0 / (2.0 * p.sigma * p.sigma);
    const double xi2 = p.xi * p.xi;
    const double prefactor = 1.0 / (p.sigma * std::sqrt(2.0 * std::numbers::pi));

    std::vector<Eigen::MatrixXd> out(nc, Eigen::MatrixXd::Zero(m, m));
    std::vector<double> per_cutoff(nc);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            std::fill(per_cutoff.begin(), per_cutoff.end(), 0.0);
            const BucketedDiagram& de = buckets[i];
            const BucketedDiagram& df = buckets[j];
            for (int be = 0; be < de.planes(); ++be) {
                for (int bf = 0; bf < df.planes(); ++bf) {
                    // a plane pair enters every slice whose cutoff covers
                    // the later of the two tau planes
                    const double top = std::max(de.tau[be], df.tau[bf]);
                    auto it = std::lower_bound(cutoffs.begin(), cutoffs.end(), top);
                    if (it == cutoffs.end()) continue;
                    const double dt = de.tau[be] - df.tau[bf];
                    const double tau_term = xi2 * dt * dt;
                    if (tau_term * inv2s2 > kCutoffExponent) continue;
                    per_cutoff[it - cutoffs.begin()] += block_sum(de, be, df, bf, tau_term, inv2s2);
                }
            }
            double acc = 0.0;
            for (int c = 0; c < nc; ++c) {
                acc += per_cutoff[c];
                out[c](i, j) = acc * prefactor;
                out[c](j, i) = out[c](i, j);
            }
        }
    }
    return out;
}

}  // namespace svtnet
