#pragma once

#include <array>
#include <string>
#include <vector>

#include "svtnet/graph.hpp"

namespace svtnet {

/// The 18 common network measures, in fixed order.
struct MeasureVector {
    double density = 0.0;
    double transitivity = 0.0;
    double diameter = 0.0;
    double radius = 0.0;
    double degree_assortativity = 0.0;
    double global_efficiency = 0.0;
    double connected_parts = 0.0;
    double avg_clustering = 0.0;
    double avg_triangles = 0.0;
    double avg_local_efficiency = 0.0;
    double avg_edge_betweenness = 0.0;
    double avg_node_betweenness = 0.0;
    double avg_closeness = 0.0;
    double avg_eccentricity = 0.0;
    double avg_shortest_path = 0.0;
    double avg_degree_centrality = 0.0;
    double max_modularity = 0.0;
    double avg_mean_first_passage = 0.0;

    static constexpr int kCount = 18;
    std::array<double, kCount> as_array() const;
    static const std::array<std::string, kCount>& names();
};

/// Distance-based entries (diameter, radius, eccentricity, shortest path)
/// are computed on the largest connected component. Louvain modularity
/// takes the best of 10 seeded restarts.
MeasureVector common_measures(const WeightedGraph& g);

/// Per-column min-max scaling to [0, 1]; constant columns map to 0.
std::vector<MeasureVector> minmax_normalize(const std::vector<MeasureVector>& rows);

enum class RandomWalkVariant { KStep, Geometric, Exponential };

struct RandomWalkParams {
    RandomWalkVariant variant = RandomWalkVariant::KStep;
    int k = 2;                             // KStep
    std::vector<double> lambdas = {1.0, 1.0, 1.0};  // KStep weights lambda_0..lambda_k
    double lambda = 0.05;                  // Geometric
    double beta = 0.1;                     // Exponential
};

/// Walk-counting kernels on the direct product graph. The geometric
/// variant throws when lambda * rho(A) * rho(A') >= 1 (divergent series).
double random_walk_kernel(const WeightedGraph& g, const WeightedGraph& h,
                          const RandomWalkParams& params);

/// Count of ordered node-pair matches with equal shortest-path length;
/// only finite distances (including the zero-length diagonal pairs) count.
double shortest_path_kernel(const WeightedGraph& g, const WeightedGraph& h);

/// Dot product of induced-subgraph class counts over all C(n,k) subsets,
/// k in {3, 4}; disconnected graphlets included.
double graphlet_kernel(const WeightedGraph& g, const WeightedGraph& h, int k);

/// Graphlet class-count vector (4 classes for k=3, 11 for k=4).
std::vector<long long> graphlet_counts(const WeightedGraph& g, int k);

/// Weisfeiler-Lehman subtree kernel: dot product of the concatenated label
/// histograms (initial labels plus h relabeling rounds, shared dictionary).
double wl_kernel(const WeightedGraph& g, const WeightedGraph& h, int iterations = 5);

/// Best-of-restarts Louvain modularity, seed-deterministic.
double louvain_modularity(const WeightedGraph& g, int restarts = 10,
                          unsigned long seed = 12345);

}  // namespace svtnet
