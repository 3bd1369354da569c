#include "svtnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace svtnet {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) {
        throw std::invalid_argument("graph must have at least one node");
    }
    std::unordered_set<long long> seen;
    seen.reserve(edges_.size() * 2);
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_) {
            throw std::invalid_argument("edge endpoint out of range: (" +
                                        std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ")");
        }
        if (e.u == e.v) {
            throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        }
        if (e.w < 0.0 || !std::isfinite(e.w)) {
            throw std::invalid_argument("edge weight must be a nonnegative finite value");
        }
        long long key = static_cast<long long>(e.u) * n_ + e.v;
        if (!seen.insert(key).second) {
            throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) +
                                        "," + std::to_string(e.v) + ")");
        }
    }
    strength_.assign(n_, 0.0);
    for (const auto& e : edges_) {
        strength_[e.u] += e.w;
        strength_[e.v] += e.w;
    }
}

std::vector<int> WeightedGraph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

bool WeightedGraph::is_unweighted() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.w == 1.0; });
}

std::vector<std::vector<std::pair<int, double>>> WeightedGraph::adjacency_list() const {
    std::vector<std::vector<std::pair<int, double>>> adj(n_);
    for (const auto& e : edges_) {
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }
    return adj;
}

Eigen::MatrixXd WeightedGraph::adjacency_matrix() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& e : edges_) {
        a(e.u, e.v) = e.w;
        a(e.v, e.u) = e.w;
    }
    return a;
}

RandomWalkLaplacian build_laplacian(const WeightedGraph& g) {
    const int n = g.node_count();
    RandomWalkLaplacian lap;
    lap.matrix = Eigen::MatrixXd::Zero(n, n);
    lap.strength = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        lap.strength(i) = g.strength(i);
        if (g.strength(i) != 0.0) lap.matrix(i, i) = 1.0;
    }
    for (const auto& e : g.edges()) {
        if (e.w == 0.0) continue;
        lap.matrix(e.u, e.v) = -e.w / g.strength(e.u);
        lap.matrix(e.v, e.u) = -e.w / g.strength(e.v);
    }
    return lap;
}

namespace {

bool parse_edge_line(const std::string& line, long long& u, long long& v,
                     double& w, bool& has_weight) {
    std::istringstream ss(line);
    if (!(ss >> u >> v)) return false;
    has_weight = static_cast<bool>(ss >> w);
    std::string rest;
    if (ss >> rest) return false;
    return true;
}

}  // namespace

WeightedGraph load_edge_list(const std::string& path, int n_hint, bool reindex) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open edge list: " + path);
    }
    std::vector<Edge> raw;
    std::vector<std::pair<long long, long long>> raw_ids;
    std::string line;
    long long max_id = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            // "# n=<count>" comments (written by save_edge_list) keep
            // trailing isolated nodes across a round trip.
            if (first != std::string::npos) {
                auto pos = line.find("n=", first);
                if (pos != std::string::npos) {
                    long long n_comment = 0;
                    std::istringstream ns(line.substr(pos + 2));
                    if (ns >> n_comment && n_comment > n_hint) {
                        n_hint = static_cast<int>(n_comment);
                    }
                }
            }
            continue;
        }
        long long u, v;
        double w = 1.0;
        bool has_w = false;
        if (!parse_edge_line(line, u, v, w, has_w)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": cannot parse edge line '" + line + "'");
        }
        if (u < 0 || v < 0) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": negative node id");
        }
        if (u == v) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": self-loop at node " + std::to_string(u));
        }
        if (has_w && (w < 0.0 || !std::isfinite(w))) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": negative or non-finite weight");
        }
        raw_ids.emplace_back(u, v);
        raw.push_back(Edge{0, 0, w});
        max_id = std::max({max_id, u, v});
    }

    if (reindex) {
        std::unordered_map<long long, int> remap;
        std::vector<long long> order;
        for (const auto& [u, v] : raw_ids) {
            if (remap.emplace(u, 0).second) order.push_back(u);
            if (remap.emplace(v, 0).second) order.push_back(v);
        }
        std::sort(order.begin(), order.end());
        for (size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<int>(i);
        for (size_t i = 0; i < raw.size(); ++i) {
            raw[i].u = remap[raw_ids[i].first];
            raw[i].v = remap[raw_ids[i].second];
        }
        std::ofstream map_out(path + ".nodemap");
        map_out << "# original reindexed\n";
        for (long long id : order) map_out << id << " " << remap[id] << "\n";
        int n = std::max<int>(static_cast<int>(order.size()), n_hint);
        if (n < 1) n = 1;
        return WeightedGraph(n, std::move(raw));
    }

    for (size_t i = 0; i < raw.size(); ++i) {
        raw[i].u = static_cast<int>(raw_ids[i].first);
        raw[i].v = static_cast<int>(raw_ids[i].second);
    }
    int n = std::max<int>(static_cast<int>(max_id + 1), n_hint);
    if (n < 1) n = 1;
    try {
        return WeightedGraph(n, std::move(raw));
    } catch (const std::invalid_argument& ex) {
        throw std::runtime_error(path + ": " + ex.what());
    }
}

void save_edge_list(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write edge list: " + path);
    }
    out << "# n=" << g.node_count() << "\n";
    out.precision(17);
    for (const auto& e : g.edges()) {
        out << e.u << " " << e.v << " " << e.w << "\n";
    }
}

}  // namespace svtnet
