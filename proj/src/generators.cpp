#include "svtnet/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace svtnet {

namespace {

constexpr int kGnNodes = 128;
constexpr int kGnCommunities = 4;
constexpr int kGnCommunitySize = 32;
// Classical benchmark calibration: expected degree 16, i.e.
// 31 * p_in + 96 * p_out = 16 with p_out = r * p_in.
constexpr double kGnExpectedDegree = 16.0;

inline long long edge_key(int u, int v, int n) {
    if (u > v) std::swap(u, v);
    return static_cast<long long>(u) * n + v;
}

WeightedGraph generate_gn(const GeneratorSpec& spec, std::mt19937_64& rng) {
    if (spec.n != kGnNodes) {
        throw std::invalid_argument("GN model is the 128-node benchmark (4 communities of 32)");
    }
    if (!(spec.r > 0.0 && spec.r <= 1.0)) {
        throw std::invalid_argument("GN ratio r must be in (0, 1]");
    }
    const double p_in = kGnExpectedDegree /
                        (kGnCommunitySize - 1 + (kGnNodes - kGnCommunitySize) * spec.r);
    const double p_out = spec.r * p_in;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Edge> edges;
    for (int i = 0; i < kGnNodes; ++i) {
        for (int j = i + 1; j < kGnNodes; ++j) {
            const bool same = (i / kGnCommunitySize) == (j / kGnCommunitySize);
            const double p = same ? p_in : p_out;
            if (unif(rng) < p) edges.push_back(Edge{i, j, 1.0});
        }
    }
    return WeightedGraph(kGnNodes, std::move(edges));
}

WeightedGraph generate_er(const GeneratorSpec& spec, std::mt19937_64& rng) {
    if (!(spec.p_link > 0.0 && spec.p_link < 1.0)) {
        throw std::invalid_argument("ER p_link must be in (0, 1)");
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Edge> edges;
    for (int i = 0; i < spec.n; ++i) {
        for (int j = i + 1; j < spec.n; ++j) {
            if (unif(rng) < spec.p_link) edges.push_back(Edge{i, j, 1.0});
        }
    }
    return WeightedGraph(spec.n, std::move(edges));
}

WeightedGraph generate_ws(const GeneratorSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n;
    const int k = spec.k;
    if (k <= 0 || k % 2 != 0 || k >= n) {
        throw std::invalid_argument("WS neighbor count k must be positive, even and < n");
    }
    if (!(spec.beta >= 0.0 && spec.beta <= 1.0)) {
        throw std::invalid_argument("WS beta must be in [0, 1]");
    }
    std::unordered_set<long long> present;
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j <= k / 2; ++j) {
        for (int i = 0; i < n; ++i) {
            int v = (i + j) % n;
            edges.emplace_back(i, v);
            present.insert(edge_key(i, v, n));
        }
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (auto& [u, v] : edges) {
        if (unif(rng) >= spec.beta) continue;
        // Rewire the far endpoint, keeping the graph simple. A full
        // neighborhood leaves the edge untouched.
        if (present.size() >= static_cast<size_t>(n) * (n - 1) / 2) continue;
        for (int attempt = 0; attempt < 64 * n; ++attempt) {
            int w = pick(rng);
            if (w == u || present.count(edge_key(u, w, n))) continue;
            present.erase(edge_key(u, v, n));
            present.insert(edge_key(u, w, n));
            v = w;
            break;
        }
    }
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) out.push_back(Edge{u, v, 1.0});
    return WeightedGraph(n, std::move(out));
}

WeightedGraph generate_ba(const GeneratorSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n;
    const int m0 = spec.m0;
    if (m0 < 1 || m0 > 50) {
        throw std::invalid_argument("BA m0 must be in [1, 50]");
    }
    if (n <= m0) {
        throw std::invalid_argument("BA needs n > m0");
    }
    std::vector<Edge> edges;
    std::vector<int> repeated;  // one entry per edge endpoint; drives preferential choice
    std::vector<char> chosen(n, 0);
    for (int t = m0; t < n; ++t) {
        const int m = std::min(m0, t);
        std::vector<int> targets;
        targets.reserve(m);
        std::uniform_int_distribution<int> uniform_existing(0, t - 1);
        while (static_cast<int>(targets.size()) < m) {
            int candidate;
            if (repeated.empty()) {
                candidate = uniform_existing(rng);
            } else {
                std::uniform_int_distribution<size_t> pick(0, repeated.size() - 1);
                candidate = repeated[pick(rng)];
            }
            if (chosen[candidate]) {
                // duplicate target: fall back to a uniform draw
                candidate = uniform_existing(rng);
                if (chosen[candidate]) continue;
            }
            chosen[candidate] = 1;
            targets.push_back(candidate);
        }
        for (int target : targets) {
            chosen[target] = 0;
            edges.push_back(Edge{target, t, 1.0});
            repeated.push_back(target);
            repeated.push_back(t);
        }
    }
    return WeightedGraph(n, std::move(edges));
}

}  // namespace

Model model_from_string(const std::string& s) {
    if (s == "gn") return Model::GN;
    if (s == "er") return Model::ER;
    if (s == "ws") return Model::WS;
    if (s == "ba") return Model::BA;
    throw std::invalid_argument("unknown model '" + s + "' (expected gn|er|ws|ba)");
}

std::string model_to_string(Model m) {
    switch (m) {
        case Model::GN: return "gn";
        case Model::ER: return "er";
        case Model::WS: return "ws";
        case Model::BA: return "ba";
    }
    return "?";
}

WeightedGraph generate(const GeneratorSpec& spec) {
    if (spec.n < 2) {
        throw std::invalid_argument("generator needs n >= 2");
    }
    std::mt19937_64 rng(spec.seed);
    switch (spec.model) {
        case Model::GN: return generate_gn(spec, rng);
        case Model::ER: return generate_er(spec, rng);
        case Model::WS: return generate_ws(spec, rng);
        case Model::BA: return generate_ba(spec, rng);
    }
    throw std::invalid_argument("unknown model tag");
}

WeightedGraph configuration_model(const WeightedGraph& g, std::uint64_t seed) {
    if (!g.is_unweighted()) {
        throw std::invalid_argument("configuration model expects an unweighted simple graph");
    }
    const int n = g.node_count();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edges().size());
    std::unordered_set<long long> present;
    for (const auto& e : g.edges()) {
        edges.emplace_back(e.u, e.v);
        present.insert(edge_key(e.u, e.v, n));
    }
    const size_t m = edges.size();
    if (m < 2) {
        std::vector<Edge> out;
        for (const auto& [u, v] : edges) out.push_back(Edge{u, v, 1.0});
        return WeightedGraph(n, std::move(out));
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, m - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    const size_t target_swaps = 10 * m;
    const size_t max_proposals = 200 * m;
    size_t swaps = 0;
    for (size_t proposal = 0; proposal < max_proposals && swaps < target_swaps; ++proposal) {
        size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (coin(rng)) std::swap(c, d);
        // proposed: (a,d) and (c,b)
        if (a == d || c == b) continue;
        long long k1 = edge_key(a, d, n), k2 = edge_key(c, b, n);
        if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
        present.erase(edge_key(a, b, n));
        present.erase(edge_key(c, d, n));
        present.insert(k1);
        present.insert(k2);
        edges[i] = {a, d};
        edges[j] = {c, b};
        ++swaps;
    }
    std::vector<Edge> out;
    out.reserve(m);
    for (const auto& [u, v] : edges) out.push_back(Edge{u, v, 1.0});
    return WeightedGraph(n, std::move(out));
}

}  // namespace svtnet
