#pragma once

#include <limits>
#include <vector>

#include "svtnet/diffusion.hpp"

namespace svtnet {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;
};

/// Persistence diagram of one hole dimension at a fixed timescale.
struct Diagram2D {
    double tau = 0.0;
    int dim = 0;
    std::vector<PersistencePair> pairs;
};

struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;
    double tau = 0.0;
    bool essential = false;  // truncated H0 class (death clipped to max distance)
};

/// Scale-variant diagram: union of the per-timescale diagrams tagged
/// with their tau.
struct Diagram3D {
    int dim = 0;
    std::vector<DiagramPoint> points;
    std::vector<double> tau_grid;
};

/// Vietoris-Rips persistence of a distance matrix for hole dimensions
/// up to max_dim (0 or 1). Zero-persistence pairs are dropped; each
/// connected component contributes one (0, inf) pair in dimension 0.
std::vector<Diagram2D> rips_persistence(const DistanceMatrix& dm, int max_dim);

Diagram3D scale_variant_diagram(const SpectralDecomposition& sd,
                                const std::vector<double>& tau_grid, int dim);
Diagram3D scale_variant_diagram(const RandomWalkLaplacian& lap,
                                const std::vector<double>& tau_grid, int dim);

/// Restriction of a scale-variant diagram to timescales <= tau_max.
Diagram3D restrict_diagram(const Diagram3D& d, double tau_max);

}  // namespace svtnet
