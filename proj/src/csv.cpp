#include "svtnet/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace svtnet {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF newlines everywhere
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out.precision(17);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(field);
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& path, int line_no) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": not a number: '" + s + "'");
    }
}

bool next_line(std::ifstream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

void save_distance_matrix(const DistanceMatrix& dm, const std::string& path) {
    auto out = open_out(path);
    out << "# tau=" << format_double(dm.tau) << "\n";
    for (Eigen::Index i = 0; i < dm.d.rows(); ++i) {
        for (Eigen::Index j = 0; j < dm.d.cols(); ++j) {
            if (j) out << ",";
            out << format_double(dm.d(i, j));
        }
        out << "\n";
    }
}

DistanceMatrix load_distance_matrix(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    DistanceMatrix dm;
    dm.tau = 0.0;
    std::vector<std::vector<double>> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("tau=");
            if (pos != std::string::npos) {
                dm.tau = parse_double(line.substr(pos + 4), path, line_no);
            }
            continue;
        }
        auto fields = split_csv(line);
        std::vector<double> row;
        for (auto& f : fields) row.push_back(parse_double(f, path, line_no));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": ragged matrix row");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.size() != rows.front().size()) {
        throw std::runtime_error(path + ": not a square matrix");
    }
    dm.d.resize(rows.size(), rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows.size(); ++j) dm.d(i, j) = rows[i][j];
    }
    return dm;
}

void save_diagram(const std::vector<Diagram2D>& diagrams, const std::string& path) {
    auto out = open_out(path);
    out << "dim,birth,death,tau\n";
    for (const auto& d : diagrams) {
        for (const auto& p : d.pairs) {
            out << d.dim << "," << format_double(p.birth) << "," << format_double(p.death)
                << "," << format_double(d.tau) << "\n";
        }
    }
}

void save_diagram(const Diagram3D& diagram, const std::string& path) {
    auto out = open_out(path);
    out << "dim,birth,death,tau,essential\n";
    out << "# grid=";
    for (size_t i = 0; i < diagram.tau_grid.size(); ++i) {
        if (i) out << ";";
        out << format_double(diagram.tau_grid[i]);
    }
    out << "\n";
    for (const auto& p : diagram.points) {
        out << diagram.dim << "," << format_double(p.birth) << "," << format_double(p.death)
            << "," << format_double(p.tau) << "," << (p.essential ? 1 : 0) << "\n";
    }
}

Diagram3D load_diagram(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    Diagram3D d;
    d.dim = -1;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# grid=", 0) == 0) {
            std::stringstream ss(line.substr(7));
            std::string tok;
            while (std::getline(ss, tok, ';')) {
                if (!tok.empty()) d.tau_grid.push_back(parse_double(tok, path, line_no));
            }
            continue;
        }
        if (line[0] == '#') continue;
        if (!header_seen && line.rfind("dim,", 0) == 0) {
            header_seen = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() < 4) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected dim,birth,death,tau");
        }
        const int dim = static_cast<int>(parse_double(fields[0], path, line_no));
        if (d.dim < 0) {
            d.dim = dim;
        } else if (d.dim != dim) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": mixed hole dimensions in one diagram file");
        }
        DiagramPoint p;
        p.birth = parse_double(fields[1], path, line_no);
        p.death = parse_double(fields[2], path, line_no);
        p.tau = parse_double(fields[3], path, line_no);
        p.essential = fields.size() >= 5 && fields[4] == "1";
        d.points.push_back(p);
    }
    if (d.dim < 0) d.dim = 0;
    if (d.tau_grid.empty()) {
        // reconstruct the grid from the tau values present
        std::vector<double> taus;
        for (const auto& p : d.points) taus.push_back(p.tau);
        std::sort(taus.begin(), taus.end());
        taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
        d.tau_grid = std::move(taus);
    }
    return d;
}

void save_gram(const GramMatrix& gram, const std::string& path) {
    auto out = open_out(path);
    for (int j = 0; j < gram.size(); ++j) {
        if (j) out << ",";
        out << gram.ids[j];
    }
    out << "\n";
    for (int i = 0; i < gram.size(); ++i) {
        for (int j = 0; j < gram.size(); ++j) {
            if (j) out << ",";
            out << format_double(gram.k(i, j));
        }
        out << "\n";
    }
}

GramMatrix load_gram(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!next_line(in, line)) {
        throw std::runtime_error(path + ": empty Gram file");
    }
    GramMatrix gram;
    gram.ids = split_csv(line);
    const int m = static_cast<int>(gram.ids.size());
    gram.k.resize(m, m);
    int row = 0, line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (row >= m) {
            throw std::runtime_error(path + ": more rows than header columns");
        }
        auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != m) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": ragged Gram row");
        }
        for (int j = 0; j < m; ++j) gram.k(row, j) = parse_double(fields[j], path, line_no);
        ++row;
    }
    if (row != m) {
        throw std::runtime_error(path + ": expected " + std::to_string(m) + " rows, got " +
                                 std::to_string(row));
    }
    return gram;
}

std::vector<int> load_labels(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    std::vector<int> labels;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv(line);
        const std::string& tok = fields.size() >= 2 ? fields[1] : fields[0];
        if (line_no == 1 && tok.find_first_not_of("-0123456789") != std::string::npos) {
            continue;  // header row
        }
        labels.push_back(static_cast<int>(parse_double(tok, path, line_no)));
    }
    if (labels.empty()) {
        throw std::runtime_error(path + ": no labels found");
    }
    return labels;
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
    auto out = open_out(path);
    for (int l : labels) out << l << "\n";
}

void save_table(const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, const std::string& path) {
    auto out = open_out(path);
    for (size_t c = 0; c < columns.size(); ++c) {
        if (c) out << ",";
        out << columns[c];
    }
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw std::invalid_argument("table row width does not match header");
        }
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            out << format_double(row[c]);
        }
        out << "\n";
    }
}

}  // namespace svtnet
