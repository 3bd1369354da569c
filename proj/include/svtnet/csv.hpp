#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svtnet/diffusion.hpp"
#include "svtnet/kernel.hpp"
#include "svtnet/persistence.hpp"

namespace svtnet {

/// Row-major numeric matrix with a "# tau=<value>" header line.
void save_distance_matrix(const DistanceMatrix& dm, const std::string& path);
DistanceMatrix load_distance_matrix(const std::string& path);

/// CSV with header `dim,birth,death,tau`; infinite deaths serialize as
/// `inf`. 2D diagrams write tau on every row; essential 3D points carry
/// a trailing `essential` marker column.
void save_diagram(const std::vector<Diagram2D>& diagrams, const std::string& path);
void save_diagram(const Diagram3D& diagram, const std::string& path);
Diagram3D load_diagram(const std::string& path);

/// Square numeric matrix with a header row of diagram identifiers.
void save_gram(const GramMatrix& gram, const std::string& path);
GramMatrix load_gram(const std::string& path);

/// One integer label per line, optional `id,label` form.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::vector<int>& labels, const std::string& path);

/// Generic numeric table with a column-name header.
void save_table(const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, const std::string& path);

std::string format_double(double v);

}  // namespace svtnet
