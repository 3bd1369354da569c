#pragma once

#include <cstdint>
#include <string>

#include "svtnet/graph.hpp"

namespace svtnet {

enum class Model { GN, ER, WS, BA };

Model model_from_string(const std::string& s);
std::string model_to_string(Model m);

/// Parameters for the synthetic network models. Only the fields of the
/// selected model are read: r (GN), p_link (ER), k/beta (WS), m0 (BA).
struct GeneratorSpec {
    Model model = Model::ER;
    int n = 128;
    std::uint64_t seed = 0;

    double r = 0.1;        // GN: p_out / p_in, in (0, 1]
    double p_link = 0.06;  // ER: pair-link probability, in (0, 1)
    int k = 8;             // WS: ring neighbors, even, < n
    double beta = 0.1;     // WS: rewiring probability, in [0, 1]
    int m0 = 3;            // BA: initial nodes / max links per new node, 1..50
};

/// Deterministic for a fixed spec (model, parameters, n, seed).
WeightedGraph generate(const GeneratorSpec& spec);

/// Degree-preserving randomization of a simple unweighted graph via
/// double-edge swaps (10 * |E| accepted swaps, capped proposals).
WeightedGraph configuration_model(const WeightedGraph& g, std::uint64_t seed);

}  // namespace svtnet
