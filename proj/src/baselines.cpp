#include "svtnet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <stack>
#include <stdexcept>

namespace svtnet {

namespace {

constexpr int kUnreached = -1;

std::vector<std::vector<int>> simple_adjacency(const WeightedGraph& g) {
    std::vector<std::vector<int>> adj(g.node_count());
    for (const Edge& e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), kUnreached);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v]) {
            if (dist[u] == kUnreached) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    return dist;
}

std::vector<std::vector<int>> connected_components(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comps.emplace_back();
        std::queue<int> q;
        comp[s] = static_cast<int>(comps.size()) - 1;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comps.back().push_back(v);
            for (int u : adj[v]) {
                if (comp[u] < 0) {
                    comp[u] = comp[v];
                    q.push(u);
                }
            }
        }
    }
    return comps;
}

/// Efficiency of the subgraph induced on `nodes`: mean of 1/d over
/// ordered pairs, unreachable pairs contributing 0.
double subgraph_efficiency(const std::vector<std::vector<int>>& adj,
                           const std::vector<int>& nodes) {
    const int m = static_cast<int>(nodes.size());
    if (m < 2) return 0.0;
    std::vector<int> local(adj.size(), -1);
    for (int t = 0; t < m; ++t) local[nodes[t]] = t;
    std::vector<std::vector<int>> sub(m);
    for (int t = 0; t < m; ++t) {
        for (int u : adj[nodes[t]]) {
            if (local[u] >= 0) sub[t].push_back(local[u]);
        }
    }
    double total = 0.0;
    for (int s = 0; s < m; ++s) {
        auto dist = bfs_distances(sub, s);
        for (int t = 0; t < m; ++t) {
            if (t != s && dist[t] > 0) total += 1.0 / dist[t];
        }
    }
    return total / (static_cast<double>(m) * (m - 1));
}

/// Brandes betweenness for nodes and edges in one pass, normalized as
/// 2/((n-1)(n-2)) for nodes and 2/(n(n-1)) for edges.
void betweenness(const std::vector<std::vector<int>>& adj, double& avg_node,
                 double& avg_edge) {
    const int n = static_cast<int>(adj.size());
    std::vector<double> node_bc(n, 0.0);
    std::map<std::pair<int, int>, double> edge_bc;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, kUnreached);
        std::vector<double> sigma(n, 0.0), delta(n, 0.0);
        std::vector<std::vector<int>> pred(n);
        std::vector<int> order;
        std::queue<int> q;
        dist[s] = 0;
        sigma[s] = 1.0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int u : adj[v]) {
                if (dist[u] == kUnreached) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
                if (dist[u] == dist[v] + 1) {
                    sigma[u] += sigma[v];
                    pred[u].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int w = *it;
            for (int v : pred[w]) {
                double share = sigma[v] / sigma[w] * (1.0 + delta[w]);
                delta[v] += share;
                edge_bc[{std::min(v, w), std::max(v, w)}] += share;
            }
            if (w != s) node_bc[w] += delta[w];
        }
    }
    // undirected: each pair counted from both endpoints
    double node_sum = 0.0;
    for (double b : node_bc) node_sum += b / 2.0;
    double edge_sum = 0.0;
    for (auto& [e, b] : edge_bc) {
        (void)e;
        edge_sum += b / 2.0;
    }
    const double node_norm = n > 2 ? 2.0 / (static_cast<double>(n - 1) * (n - 2)) : 0.0;
    const double edge_norm = n > 1 ? 2.0 / (static_cast<double>(n) * (n - 1)) : 0.0;
    avg_node = n > 0 ? node_sum * node_norm / n : 0.0;
    avg_edge = edge_bc.empty() ? 0.0 : edge_sum * edge_norm / edge_bc.size();
}

/// Mean first-passage times of the simple random walk on one component,
/// from the fundamental matrix Z = (I - P + 1 pi^T)^{-1}; averaged over
/// ordered pairs i != j.
double component_mfpt_sum(const std::vector<std::vector<int>>& adj,
                          const std::vector<int>& nodes, long long& pair_count) {
    const int m = static_cast<int>(nodes.size());
    if (m < 2) return 0.0;
    std::vector<int> local(adj.size(), -1);
    for (int t = 0; t < m; ++t) local[nodes[t]] = t;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd deg(m);
    double total_deg = 0.0;
    for (int t = 0; t < m; ++t) {
        deg(t) = static_cast<double>(adj[nodes[t]].size());
        total_deg += deg(t);
        for (int u : adj[nodes[t]]) p(t, local[u]) = 1.0 / deg(t);
    }
    Eigen::VectorXd pi = deg / total_deg;  // stationary distribution
    Eigen::MatrixXd z = (Eigen::MatrixXd::Identity(m, m) - p +
                         Eigen::VectorXd::Ones(m) * pi.transpose())
                            .partialPivLu()
                            .solve(Eigen::MatrixXd::Identity(m, m));
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            if (i == j) continue;
            sum += (z(j, j) - z(i, j)) / pi(j);
        }
    }
    pair_count += static_cast<long long>(m) * (m - 1);
    return sum;
}

double modularity(const std::vector<Edge>& edges, const std::vector<int>& comm,
                  const std::vector<double>& strength, double two_m) {
    if (two_m == 0.0) return 0.0;
    double q = 0.0;
    for (const Edge& e : edges) {
        if (comm[e.u] == comm[e.v]) q += 2.0 * e.w / two_m;
    }
    std::map<int, double> comm_strength;
    for (size_t i = 0; i < comm.size(); ++i) comm_strength[comm[i]] += strength[i];
    for (auto& [c, s] : comm_strength) {
        (void)c;
        q -= (s / two_m) * (s / two_m);
    }
    return q;
}

/// One Louvain pass: local moves to the best neighboring community until
/// no move improves modularity, then aggregation; repeated to a fixed point.
double louvain_once(const WeightedGraph& g, std::mt19937_64& rng) {
    int n = g.node_count();
    std::vector<Edge> edges = g.edges();
    std::vector<double> strength(g.strengths());
    double two_m = 0.0;
    for (const Edge& e : edges) two_m += 2.0 * e.w;
    if (two_m == 0.0) return 0.0;

    std::vector<int> membership(n);  // community of each original node
    std::iota(membership.begin(), membership.end(), 0);

    while (true) {
        std::vector<int> comm(n);
        std::iota(comm.begin(), comm.end(), 0);
        std::vector<double> comm_strength = strength;
        std::vector<std::vector<std::pair<int, double>>> adj(n);
        std::vector<double> self_loop(n, 0.0);
        for (const Edge& e : edges) {
            if (e.u == e.v) {
                self_loop[e.u] += e.w;
            } else {
                adj[e.u].emplace_back(e.v, e.w);
                adj[e.v].emplace_back(e.u, e.w);
            }
        }
        std::vector<int> visit(n);
        std::iota(visit.begin(), visit.end(), 0);
        std::shuffle(visit.begin(), visit.end(), rng);

        bool moved_any = false;
        bool improved = true;
        while (improved) {
            improved = false;
            for (int v : visit) {
                const int old_c = comm[v];
                std::map<int, double> links;  // weight from v into each community
                links[old_c] += 0.0;
                for (auto& [u, w] : adj[v]) links[comm[u]] += w;
                comm_strength[old_c] -= strength[v];
                double best_gain = 0.0;
                int best_c = old_c;
                const double base = links[old_c];
                for (auto& [c, w] : links) {
                    const double gain =
                        (w - base) * 2.0 / two_m -
                        2.0 * strength[v] * (comm_strength[c] - comm_strength[old_c]) /
                            (two_m * two_m);
                    if (gain > best_gain + 1e-12) {
                        best_gain = gain;
                        best_c = c;
                    }
                }
                comm_strength[best_c] += strength[v];
                comm[v] = best_c;
                if (best_c != old_c) {
                    improved = true;
                    moved_any = true;
                }
            }
        }
        if (!moved_any) break;

        // aggregate communities into a smaller graph
        std::map<int, int> relabel;
        for (int v = 0; v < n; ++v) {
            if (!relabel.count(comm[v])) {
                int next = static_cast<int>(relabel.size());
                relabel[comm[v]] = next;
            }
        }
        for (int& m : membership) m = relabel[comm[m]];
        const int nn = static_cast<int>(relabel.size());
        std::map<std::pair<int, int>, double> agg;
        for (const Edge& e : edges) {
            int a = relabel[comm[e.u]], b = relabel[comm[e.v]];
            if (a > b) std::swap(a, b);
            agg[{a, b}] += e.w;
        }
        edges.clear();
        for (auto& [key, w] : agg) edges.push_back(Edge{key.first, key.second, w});
        strength.assign(nn, 0.0);
        // a self-loop contributes its weight twice, matching 2m bookkeeping
        for (const Edge& e : edges) {
            strength[e.u] += e.w;
            strength[e.v] += e.w;
        }
        n = nn;
    }
    return modularity(g.edges(), membership, g.strengths(), two_m);
}

}  // namespace

double louvain_modularity(const WeightedGraph& g, int restarts, unsigned long seed) {
    double best = 0.0;  // the all-in-one-community partition scores 0
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + static_cast<unsigned long>(r));
        best = std::max(best, louvain_once(g, rng));
    }
    return best;
}

std::array<double, MeasureVector::kCount> MeasureVector::as_array() const {
    return {density,
            transitivity,
            diameter,
            radius,
            degree_assortativity,
            global_efficiency,
            connected_parts,
            avg_clustering,
            avg_triangles,
            avg_local_efficiency,
            avg_edge_betweenness,
            avg_node_betweenness,
            avg_closeness,
            avg_eccentricity,
            avg_shortest_path,
            avg_degree_centrality,
            max_modularity,
            avg_mean_first_passage};
}

const std::array<std::string, MeasureVector::kCount>& MeasureVector::names() {
    static const std::array<std::string, kCount> n = {"density",
                                                      "transitivity",
                                                      "diameter",
                                                      "radius",
                                                      "degree_assortativity",
                                                      "global_efficiency",
                                                      "connected_parts",
                                                      "avg_clustering",
                                                      "avg_triangles",
                                                      "avg_local_efficiency",
                                                      "avg_edge_betweenness",
                                                      "avg_node_betweenness",
                                                      "avg_closeness",
                                                      "avg_eccentricity",
                                                      "avg_shortest_path",
                                                      "avg_degree_centrality",
                                                      "max_modularity",
                                                      "avg_mean_first_passage"};
    return n;
}

MeasureVector common_measures(const WeightedGraph& g) {
    const int n = g.node_count();
    if (n < 2) {
        throw std::invalid_argument("common measures need at least two nodes");
    }
    auto adj = simple_adjacency(g);
    const long long m = static_cast<long long>(g.edges().size());
    MeasureVector out;

    out.density = 2.0 * m / (static_cast<double>(n) * (n - 1));

    // triangles and clustering from common-neighbor counts
    std::vector<long long> tri(n, 0);
    long long wedge_total = 0;
    double clustering_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        const auto& nb = adj[v];
        const int d = static_cast<int>(nb.size());
        long long t = 0;
        for (size_t a = 0; a < nb.size(); ++a) {
            for (size_t b = a + 1; b < nb.size(); ++b) {
                if (std::binary_search(adj[nb[a]].begin(), adj[nb[a]].end(), nb[b])) ++t;
            }
        }
        tri[v] = t;
        wedge_total += static_cast<long long>(d) * (d - 1);
        if (d >= 2) clustering_sum += 2.0 * t / (static_cast<double>(d) * (d - 1));
    }
    long long tri_total = 0;
    for (long long t : tri) tri_total += t;  // each triangle counted 3 times
    out.transitivity = wedge_total > 0 ? 6.0 * (tri_total / 3.0) / wedge_total : 0.0;
    out.avg_clustering = clustering_sum / n;
    out.avg_triangles = static_cast<double>(tri_total) / n;

    // distances: global efficiency over all pairs, eccentricity family on
    // the largest connected component
    auto comps = connected_components(adj);
    out.connected_parts = static_cast<double>(comps.size());
    size_t largest = 0;
    for (size_t c = 1; c < comps.size(); ++c) {
        if (comps[c].size() > comps[largest].size()) largest = c;
    }
    std::vector<char> in_largest(n, 0);
    for (int v : comps[largest]) in_largest[v] = 1;

    double eff_sum = 0.0, closeness_sum = 0.0;
    double ecc_sum = 0.0, sp_sum = 0.0;
    long long sp_pairs = 0;
    int diam = 0, rad = std::numeric_limits<int>::max();
    for (int s = 0; s < n; ++s) {
        auto dist = bfs_distances(adj, s);
        int reach = 0, ecc = 0;
        long long dist_sum = 0;
        for (int t = 0; t < n; ++t) {
            if (dist[t] == kUnreached) continue;
            ++reach;
            dist_sum += dist[t];
            ecc = std::max(ecc, dist[t]);
            if (t != s) eff_sum += 1.0 / dist[t];
        }
        if (reach > 1) {
            // harmonic-free closeness with the reachable-fraction factor
            closeness_sum += (static_cast<double>(reach - 1) / (n - 1)) *
                             (static_cast<double>(reach - 1) / dist_sum);
        }
        if (in_largest[s]) {
            ecc_sum += ecc;
            sp_sum += static_cast<double>(dist_sum);
            sp_pairs += reach - 1;
            diam = std::max(diam, ecc);
            rad = std::min(rad, ecc);
        }
    }
    out.global_efficiency = eff_sum / (static_cast<double>(n) * (n - 1));
    out.avg_closeness = closeness_sum / n;
    out.diameter = static_cast<double>(diam);
    out.radius = comps[largest].size() > 1 ? static_cast<double>(rad) : 0.0;
    out.avg_eccentricity = ecc_sum / comps[largest].size();
    out.avg_shortest_path = sp_pairs > 0 ? sp_sum / sp_pairs : 0.0;

    // degree assortativity (Pearson over edge-endpoint degrees); regular
    // graphs have zero variance and map to 0
    if (m > 0) {
        double sxy = 0.0, sx = 0.0, sx2 = 0.0;
        for (const Edge& e : g.edges()) {
            const double du = static_cast<double>(adj[e.u].size());
            const double dv = static_cast<double>(adj[e.v].size());
            sxy += du * dv;
            sx += 0.5 * (du + dv);
            sx2 += 0.5 * (du * du + dv * dv);
        }
        const double inv_m = 1.0 / static_cast<double>(m);
        const double num = inv_m * sxy - (inv_m * sx) * (inv_m * sx);
        const double den = inv_m * sx2 - (inv_m * sx) * (inv_m * sx);
        out.degree_assortativity = std::abs(den) > 1e-12 ? num / den : 0.0;
    }

    double local_eff_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        std::vector<int> nbrs(adj[v].begin(), adj[v].end());
        local_eff_sum += subgraph_efficiency(adj, nbrs);
    }
    out.avg_local_efficiency = local_eff_sum / n;

    betweenness(adj, out.avg_node_betweenness, out.avg_edge_betweenness);

    double deg_sum = 0.0;
    for (int v = 0; v < n; ++v) deg_sum += static_cast<double>(adj[v].size()) / (n - 1);
    out.avg_degree_centrality = deg_sum / n;

    out.max_modularity = louvain_modularity(g);

    double mfpt_sum = 0.0;
    long long mfpt_pairs = 0;
    for (const auto& comp : comps) {
        mfpt_sum += component_mfpt_sum(adj, comp, mfpt_pairs);
    }
    out.avg_mean_first_passage = mfpt_pairs > 0 ? mfpt_sum / mfpt_pairs : 0.0;

    return out;
}

std::vector<MeasureVector> minmax_normalize(const std::vector<MeasureVector>& rows) {
    if (rows.empty()) return {};
    std::vector<std::array<double, MeasureVector::kCount>> vals;
    vals.reserve(rows.size());
    for (const auto& r : rows) vals.push_back(r.as_array());
    for (int c = 0; c < MeasureVector::kCount; ++c) {
        double lo = vals[0][c], hi = vals[0][c];
        for (const auto& v : vals) {
            lo = std::min(lo, v[c]);
            hi = std::max(hi, v[c]);
        }
        const double span = hi - lo;
        for (auto& v : vals) {
            v[c] = span > 0.0 ? (v[c] - lo) / span : 0.0;
        }
    }
    std::vector<MeasureVector> out(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        MeasureVector mv;
        auto& v = vals[r];
        mv.density = v[0];
        mv.transitivity = v[1];
        mv.diameter = v[2];
        mv.radius = v[3];
        mv.degree_assortativity = v[4];
        mv.global_efficiency = v[5];
        mv.connected_parts = v[6];
        mv.avg_clustering = v[7];
        mv.avg_triangles = v[8];
        mv.avg_local_efficiency = v[9];
        mv.avg_edge_betweenness = v[10];
        mv.avg_node_betweenness = v[11];
        mv.avg_closeness = v[12];
        mv.avg_eccentricity = v[13];
        mv.avg_shortest_path = v[14];
        mv.avg_degree_centrality = v[15];
        mv.max_modularity = v[16];
        mv.avg_mean_first_passage = v[17];
        out[r] = mv;
    }
    return out;
}

namespace {

double spectral_radius_sym(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return std::max(std::abs(es.eigenvalues()(0)),
                    std::abs(es.eigenvalues()(a.rows() - 1)));
}

// 1^T A^m 1 for m = 0..k; the product-graph walk sum factorizes as the
// product of the per-graph sums
std::vector<double> walk_sums(const Eigen::MatrixXd& a, int k) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> out;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    out.push_back(static_cast<double>(n));
    for (int m = 1; m <= k; ++m) {
        v = a * v;
        out.push_back(v.sum());
    }
    return out;
}

}  // namespace

double random_walk_kernel(const WeightedGraph& g, const WeightedGraph& h,
                          const RandomWalkParams& params) {
    Eigen::MatrixXd a = g.adjacency_matrix();
    Eigen::MatrixXd b = h.adjacency_matrix();
    switch (params.variant) {
        case RandomWalkVariant::KStep: {
            if (params.k < 0 ||
                static_cast<int>(params.lambdas.size()) != params.k + 1) {
                throw std::invalid_argument("kstep needs k+1 weights lambda_0..lambda_k");
            }
            auto sa = walk_sums(a, params.k);
            auto sb = walk_sums(b, params.k);
            double total = 0.0;
            for (int m = 0; m <= params.k; ++m) {
                if (!(params.lambdas[m] > 0.0)) {
                    throw std::invalid_argument("kstep weights must be positive");
                }
                total += params.lambdas[m] * sa[m] * sb[m];
            }
            return total;
        }
        case RandomWalkVariant::Geometric: {
            const double lam = params.lambda;
            if (!(lam > 0.0)) {
                throw std::invalid_argument("geometric decay lambda must be positive");
            }
            if (lam * spectral_radius_sym(a) * spectral_radius_sym(b) >= 1.0) {
                throw std::invalid_argument(
                    "geometric walk series diverges: lambda * rho(A) * rho(A') >= 1");
            }
            // fixed point of X = 1 + lambda * A X B on the product graph
            Eigen::MatrixXd x = Eigen::MatrixXd::Ones(a.rows(), b.rows());
            for (int iter = 0; iter < 1000000; ++iter) {
                Eigen::MatrixXd next =
                    Eigen::MatrixXd::Ones(a.rows(), b.rows()) + lam * a * x * b;
                const double diff = (next - x).cwiseAbs().maxCoeff();
                x = std::move(next);
                if (diff < 1e-13 * std::max(1.0, x.cwiseAbs().maxCoeff())) break;
            }
            return x.sum();
        }
        case RandomWalkVariant::Exponential: {
            // sum over e^{beta A (x) B} via both spectra:
            // sum_ij e^{beta mu_i nu_j} (1'u_i)^2 (1'w_j)^2
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(a), eb(b);
            Eigen::VectorXd pa = ea.eigenvectors().transpose() * Eigen::VectorXd::Ones(a.rows());
            Eigen::VectorXd pb = eb.eigenvectors().transpose() * Eigen::VectorXd::Ones(b.rows());
            double total = 0.0;
            for (int i = 0; i < a.rows(); ++i) {
                for (int j = 0; j < b.rows(); ++j) {
                    total += std::exp(params.beta * ea.eigenvalues()(i) * eb.eigenvalues()(j)) *
                             pa(i) * pa(i) * pb(j) * pb(j);
                }
            }
            return total;
        }
    }
    throw std::logic_error("unknown random walk variant");
}

double shortest_path_kernel(const WeightedGraph& g, const WeightedGraph& h) {
    auto histogram = [](const WeightedGraph& gr) {
        auto adj = simple_adjacency(gr);
        std::map<int, double> hist;
        for (int s = 0; s < gr.node_count(); ++s) {
            auto dist = bfs_distances(adj, s);
            for (int d : dist) {
                if (d != kUnreached) hist[d] += 1.0;
            }
        }
        return hist;
    };
    auto ha = histogram(g);
    auto hb = histogram(h);
    double total = 0.0;
    for (auto& [len, count] : ha) {
        auto it = hb.find(len);
        if (it != hb.end()) total += count * it->second;
    }
    return total;
}

namespace {

/// Class index of the induced subgraph on {a,b,c[,d]}. For up to four
/// vertices, (edge count, sorted degree sequence) separates all
/// isomorphism classes.
int graphlet3_class(const std::vector<std::vector<char>>& am, int a, int b, int c) {
    return am[a][b] + am[a][c] + am[b][c];  // 0..3 edges = 4 classes
}

int graphlet4_class(const std::vector<std::vector<char>>& am, int a, int b, int c, int d) {
    const int v[4] = {a, b, c, d};
    int deg[4] = {0, 0, 0, 0};
    int edges = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (am[v[i]][v[j]]) {
                ++edges;
                ++deg[i];
                ++deg[j];
            }
        }
    }
    std::sort(deg, deg + 4);
    switch (edges) {
        case 0: return 0;                       // empty
        case 1: return 1;                       // one edge
        case 2: return deg[3] == 2 ? 2 : 3;     // path P3+v vs two disjoint edges
        case 3:
            if (deg[3] == 3) return 4;          // star
            if (deg[0] == 0) return 5;          // triangle + isolated vertex
            return 6;                           // path P4
        case 4: return deg[0] == 1 ? 7 : 8;     // paw (triangle+pendant) vs cycle C4
        case 5: return 9;                       // diamond
        default: return 10;                     // complete K4
    }
}

}  // namespace

std::vector<long long> graphlet_counts(const WeightedGraph& g, int k) {
    if (k != 3 && k != 4) {
        throw std::invalid_argument("graphlet size k must be 3 or 4");
    }
    const int n = g.node_count();
    if (n < k) {
        throw std::invalid_argument("graph smaller than graphlet size");
    }
    std::vector<std::vector<char>> am(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) am[e.u][e.v] = am[e.v][e.u] = 1;

    std::vector<long long> counts(k == 3 ? 4 : 11, 0);
    if (k == 3) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) ++counts[graphlet3_class(am, a, b, c)];
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d)
                        ++counts[graphlet4_class(am, a, b, c, d)];
    }
    return counts;
}

double graphlet_kernel(const WeightedGraph& g, const WeightedGraph& h, int k) {
    auto ca = graphlet_counts(g, k);
    auto cb = graphlet_counts(h, k);
    double total = 0.0;
    for (size_t i = 0; i < ca.size(); ++i) {
        total += static_cast<double>(ca[i]) * static_cast<double>(cb[i]);
    }
    return total;
}

double wl_kernel(const WeightedGraph& g, const WeightedGraph& h, int iterations) {
    if (iterations < 0) {
        throw std::invalid_argument("iteration count must be nonnegative");
    }
    auto adj_a = simple_adjacency(g);
    auto adj_b = simple_adjacency(h);
    std::vector<int> la(g.node_count(), 0), lb(h.node_count(), 0);
    std::map<int, long long> ha, hb;

    auto accumulate = [](const std::vector<int>& labels, std::map<int, long long>& hist) {
        for (int l : labels) ++hist[l];
    };
    accumulate(la, ha);
    accumulate(lb, hb);

    int next_label = 1;
    std::map<std::pair<int, std::vector<int>>, int> dictionary;
    auto relabel = [&](const std::vector<std::vector<int>>& adj, std::vector<int>& labels) {
        std::vector<int> fresh(labels.size());
        for (size_t v = 0; v < labels.size(); ++v) {
            std::vector<int> nb;
            nb.reserve(adj[v].size());
            for (int u : adj[v]) nb.push_back(labels[u]);
            std::sort(nb.begin(), nb.end());
            auto key = std::make_pair(labels[v], std::move(nb));
            auto [it, inserted] = dictionary.emplace(std::move(key), next_label);
            if (inserted) ++next_label;
            fresh[v] = it->second;
        }
        labels = std::move(fresh);
    };

    for (int round = 0; round < iterations; ++round) {
        relabel(adj_a, la);
        relabel(adj_b, lb);
        accumulate(la, ha);
        accumulate(lb, hb);
    }
    double total = 0.0;
    for (auto& [l, c] : ha) {
        auto it = hb.find(l);
        if (it != hb.end()) total += static_cast<double>(c) * static_cast<double>(it->second);
    }
    return total;
}

}  // namespace svtnet
