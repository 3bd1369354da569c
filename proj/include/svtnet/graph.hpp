#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace svtnet {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

/// Undirected weighted graph with nonnegative edge weights.
/// Immutable after construction; node strengths W_i are cached.
class WeightedGraph {
public:
    WeightedGraph(int n, std::vector<Edge> edges);

    int node_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double strength(int i) const { return strength_[i]; }
    const std::vector<double>& strengths() const { return strength_; }

    /// Integer degree (edge count per node), ignoring weights.
    std::vector<int> degrees() const;

    bool is_unweighted() const;

    std::vector<std::vector<std::pair<int, double>>> adjacency_list() const;
    Eigen::MatrixXd adjacency_matrix() const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<double> strength_;
};

/// Random-walk Laplacian l_ij: 1 on the diagonal of non-isolated nodes,
/// -w_ij/W_i off diagonal, all-zero rows for isolated nodes.
/// Node strengths ride along so the symmetric similarity transform is
/// available downstream.
struct RandomWalkLaplacian {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd strength;

    int size() const { return static_cast<int>(matrix.rows()); }
};

RandomWalkLaplacian build_laplacian(const WeightedGraph& g);

/// Parses "i j [w]" lines ('#' comments, LF or CRLF). Node count is
/// max index + 1, or n_hint if larger. With reindex=true, non-contiguous
/// ids are compacted and the mapping persisted to <path>.nodemap.
WeightedGraph load_edge_list(const std::string& path, int n_hint = 0,
                             bool reindex = false);

void save_edge_list(const WeightedGraph& g, const std::string& path);

}  // namespace svtnet
