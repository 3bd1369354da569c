#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svtnet/baselines.hpp"
#include "svtnet/csv.hpp"
#include "svtnet/diagram_metrics.hpp"
#include "svtnet/diffusion.hpp"
#include "svtnet/experiments.hpp"
#include "svtnet/generators.hpp"
#include "svtnet/graph.hpp"
#include "svtnet/kernel.hpp"
#include "svtnet/learn.hpp"
#include "svtnet/persistence.hpp"

namespace fs = std::filesystem;
using namespace svtnet;

namespace {

struct GridSpec {
    double start = 1.0;
    double step = 1.0;
    int count = 100;
    std::string list;  // "1,2,5" overrides start/step/count

    std::vector<double> build() const {
        std::vector<double> grid;
        if (!list.empty()) {
            std::stringstream ss(list);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (!tok.empty()) grid.push_back(std::stod(tok));
            }
        } else {
            for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
        }
        if (grid.empty()) {
            throw std::invalid_argument("tau grid is empty");
        }
        for (size_t i = 0; i < grid.size(); ++i) {
            if (!(grid[i] > 0.0) || (i > 0 && grid[i] <= grid[i - 1])) {
                throw std::invalid_argument(
                    "tau grid must be strictly increasing and positive");
            }
        }
        return grid;
    }
};

std::vector<fs::path> list_files(const std::string& dir,
                                 const std::vector<std::string>& extensions) {
    if (!fs::is_directory(dir)) {
        throw std::invalid_argument("not a directory: '" + dir + "'");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw std::invalid_argument("no matching files in '" + dir + "'");
    }
    return files;
}

int run(int argc, char** argv) {
    CLI::App app{"Scale-variant topological characterization of networks"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker cap (currently sequential)");

    // ---- generate ----
    auto* cmd_gen = app.add_subcommand("generate", "write synthetic edge lists");
    std::string gen_model = "er", gen_out;
    double gen_param = 0.1;
    int gen_n = 128, gen_reps = 1, gen_k = 8;
    std::uint64_t gen_seed = 0;
    cmd_gen->add_option("--model", gen_model, "gn|er|ws|ba")->required();
    cmd_gen->add_option("--param", gen_param,
                        "r (gn), link probability (er), rewiring beta (ws), m0 (ba)")
        ->required();
    cmd_gen->add_option("--n", gen_n, "node count");
    cmd_gen->add_option("--k", gen_k, "ws ring neighbors");
    cmd_gen->add_option("--reps", gen_reps, "realizations");
    cmd_gen->add_option("--seed", gen_seed, "base seed");
    cmd_gen->add_option("--out", gen_out, "output directory")->required();

    // ---- diagram ----
    auto* cmd_diag = app.add_subcommand("diagram", "persistence diagram of an edge list");
    std::string diag_graph, diag_graphs, diag_out;
    int diag_dim = 1;
    GridSpec diag_grid;
    cmd_diag->add_option("--graph", diag_graph, "edge-list file");
    cmd_diag->add_option("--graphs", diag_graphs, "directory of edge lists");
    cmd_diag->add_option("--dim", diag_dim, "hole dimension 0 or 1");
    cmd_diag->add_option("--tau-start", diag_grid.start, "first timescale");
    cmd_diag->add_option("--tau-step", diag_grid.step, "grid step");
    cmd_diag->add_option("--tau-count", diag_grid.count, "grid length");
    cmd_diag->add_option("--tau-list", diag_grid.list, "explicit grid, comma separated");
    cmd_diag->add_option("--out", diag_out, "output file (or directory with --graphs)")
        ->required();

    // ---- bottleneck ----
    auto* cmd_bn = app.add_subcommand("bottleneck", "distance between two diagrams");
    std::string bn_a, bn_b;
    double bn_xi = 1.0;
    cmd_bn->add_option("--a", bn_a, "first diagram CSV")->required();
    cmd_bn->add_option("--b", bn_b, "second diagram CSV")->required();
    cmd_bn->add_option("--xi", bn_xi, "timescale rescaling coefficient");

    // ---- gram ----
    auto* cmd_gram = app.add_subcommand("gram", "kernel matrix over diagram files");
    std::string gram_dir, gram_out;
    int gram_dim = -1;
    bool gram_normalized = false;
    double gram_sigma = 0.0, gram_xi = 0.0;
    cmd_gram->add_option("--diagrams", gram_dir, "directory of diagram CSVs")->required();
    cmd_gram->add_option("--dim", gram_dim, "require this hole dimension");
    cmd_gram->add_flag("--normalized", gram_normalized, "unit self-similarity");
    cmd_gram->add_option("--sigma", gram_sigma, "bandwidth (0: median heuristic)");
    cmd_gram->add_option("--xi", gram_xi, "tau weight (0: equal to sigma)");
    cmd_gram->add_option("--out", gram_out, "output CSV")->required();

    // ---- classify ----
    auto* cmd_cls = app.add_subcommand("classify", "cross-validated kernel SVM");
    std::string cls_gram, cls_labels;
    int cls_folds = 10, cls_repeats = 10;
    std::uint64_t cls_seed = 12345;
    cmd_cls->add_option("--gram", cls_gram, "Gram CSV")->required();
    cmd_cls->add_option("--labels", cls_labels, "label CSV")->required();
    cmd_cls->add_option("--folds", cls_folds, "folds");
    cmd_cls->add_option("--repeats", cls_repeats, "repetitions");
    cmd_cls->add_option("--seed", cls_seed, "shuffle seed");

    // ---- changepoint ----
    auto* cmd_cp = app.add_subcommand("changepoint", "discriminant-ratio change detection");
    std::string cp_gram;
    double cp_eta = 0.1;
    cmd_cp->add_option("--gram", cp_gram, "Gram CSV of the ordered samples")->required();
    cmd_cp->add_option("--eta", cp_eta, "regularization");

    // ---- kpca ----
    auto* cmd_kpca = app.add_subcommand("kpca", "kernel principal components");
    std::string kpca_gram, kpca_out;
    int kpca_components = 3;
    cmd_kpca->add_option("--gram", kpca_gram, "Gram CSV")->required();
    cmd_kpca->add_option("--components", kpca_components, "component count");
    cmd_kpca->add_option("--out", kpca_out, "coordinates CSV")->required();

    // ---- baseline ----
    auto* cmd_base = app.add_subcommand("baseline", "comparison featurizations");
    std::string base_method, base_dir, base_out;
    bool base_normalize = false;
    cmd_base->add_option("--method", base_method,
                         "common|kstep|geometric|exponential|sp|graphlet|wl")
        ->required();
    cmd_base->add_option("--graphs", base_dir, "directory of edge lists")->required();
    cmd_base->add_flag("--normalize", base_normalize, "min-max scale the feature table");
    cmd_base->add_option("--out", base_out, "output CSV")->required();

    // ---- experiment ----
    auto* cmd_exp = app.add_subcommand("experiment", "scaled-down study presets");
    std::string exp_preset, exp_out;
    bool exp_full = false;
    std::uint64_t exp_seed = 12345;
    cmd_exp->add_option("--preset", exp_preset, "gn-transition|model-id|ba-taumax")
        ->required();
    cmd_exp->add_option("--out", exp_out, "report directory")->required();
    cmd_exp->add_flag("--full", exp_full, "approximate full study scale");
    cmd_exp->add_option("--seed", exp_seed, "base seed");

    // ---- validate ----
    auto* cmd_val = app.add_subcommand("validate", "check a pipeline configuration");
    GridSpec val_grid;
    std::string val_graphs;
    double val_eta = 0.1, val_sigma = 0.0, val_xi = 0.0;
    cmd_val->add_option("--tau-start", val_grid.start, "first timescale");
    cmd_val->add_option("--tau-step", val_grid.step, "grid step");
    cmd_val->add_option("--tau-count", val_grid.count, "grid length");
    cmd_val->add_option("--tau-list", val_grid.list, "explicit grid");
    cmd_val->add_option("--graphs", val_graphs, "input directory to check");
    cmd_val->add_option("--eta", val_eta, "regularization");
    cmd_val->add_option("--sigma", val_sigma, "bandwidth (0 = heuristic)");
    cmd_val->add_option("--xi", val_xi, "tau weight (0 = sigma)");

    CLI11_PARSE(app, argc, argv);

    if (cmd_gen->parsed()) {
        GeneratorSpec spec;
        spec.model = model_from_string(gen_model);
        spec.n = gen_n;
        spec.k = gen_k;
        switch (spec.model) {
            case Model::GN: spec.r = gen_param; break;
            case Model::ER: spec.p_link = gen_param; break;
            case Model::WS: spec.beta = gen_param; break;
            case Model::BA: spec.m0 = static_cast<int>(gen_param); break;
        }
        fs::create_directories(gen_out);
        std::ofstream manifest(gen_out + "/manifest.csv", std::ios::binary);
        manifest << "model,param,n,seed,path\n";
        for (int rep = 0; rep < gen_reps; ++rep) {
            spec.seed = gen_seed + rep;
            WeightedGraph g = generate(spec);
            std::string name = gen_model + "_" + std::to_string(rep) + ".edges";
            save_edge_list(g, gen_out + "/" + name);
            manifest << gen_model << "," << format_double(gen_param) << "," << gen_n << ","
                     << spec.seed << "," << name << "\n";
        }
        return 0;
    }

    if (cmd_diag->parsed()) {
        if (diag_graph.empty() == diag_graphs.empty()) {
            throw std::invalid_argument("give exactly one of --graph or --graphs");
        }
        auto grid = diag_grid.build();
        auto emit = [&](const std::string& in_path, const std::string& out_path) {
            WeightedGraph g = load_edge_list(in_path);
            Diagram3D d = scale_variant_diagram(build_laplacian(g), grid, diag_dim);
            save_diagram(d, out_path);
        };
        if (!diag_graph.empty()) {
            emit(diag_graph, diag_out);
        } else {
            fs::create_directories(diag_out);
            for (const auto& p : list_files(diag_graphs, {".edges", ".txt"})) {
                emit(p.string(), diag_out + "/" + p.stem().string() + ".diagram.csv");
            }
        }
        return 0;
    }

    if (cmd_bn->parsed()) {
        Diagram3D a = load_diagram(bn_a);
        Diagram3D b = load_diagram(bn_b);
        std::cout << format_double(bottleneck_3d(a, b, bn_xi)) << "\n";
        return 0;
    }

    if (cmd_gram->parsed()) {
        std::vector<Diagram3D> diagrams;
        std::vector<std::string> ids;
        for (const auto& p : list_files(gram_dir, {".csv"})) {
            diagrams.push_back(load_diagram(p.string()));
            ids.push_back(p.stem().string());
            if (gram_dim >= 0 && diagrams.back().dim != gram_dim) {
                throw std::invalid_argument("diagram '" + p.string() + "' has dimension " +
                                            std::to_string(diagrams.back().dim) +
                                            ", expected " + std::to_string(gram_dim));
            }
        }
        KernelParams params;
        if (gram_sigma > 0.0) {
            params.sigma = gram_sigma;
            params.xi = gram_xi > 0.0 ? gram_xi : gram_sigma;
        } else {
            params = bandwidth_heuristic(diagrams);
            if (gram_xi > 0.0) params.xi = gram_xi;
        }
        save_gram(gram_matrix(diagrams, params, gram_normalized, ids), gram_out);
        std::cout << "sigma=" << format_double(params.sigma)
                  << " xi=" << format_double(params.xi) << "\n";
        return 0;
    }

    if (cmd_cls->parsed()) {
        GramMatrix gram = load_gram(cls_gram);
        std::vector<int> labels = load_labels(cls_labels);
        auto result = cross_validate(gram.k, labels, cls_folds, cls_repeats, cls_seed);
        std::cout << "mean_accuracy," << format_double(result.mean_accuracy) << "\n";
        for (size_t r = 0; r < result.repeat_accuracies.size(); ++r) {
            std::cout << "repeat_" << r << "," << format_double(result.repeat_accuracies[r])
                      << "\n";
        }
        return 0;
    }

    if (cmd_cp->parsed()) {
        GramMatrix gram = load_gram(cp_gram);
        KfdrSeries series = kfdr_series(gram.k, cp_eta);
        std::cout << "s,kappa\n";
        for (size_t t = 0; t < series.values.size(); ++t) {
            std::cout << (t + 2) << "," << format_double(series.values[t]) << "\n";
        }
        std::cout << "argmax," << series.change_position() << "\n";
        return 0;
    }

    if (cmd_kpca->parsed()) {
        GramMatrix gram = load_gram(kpca_gram);
        KernelPcaResult pca = kernel_pca(gram.k, kpca_components);
        std::ofstream out(kpca_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + kpca_out + "'");
        out.precision(17);
        out << "id";
        for (int c = 0; c < kpca_components; ++c) out << ",pc" << (c + 1);
        out << "\n";
        for (Eigen::Index r = 0; r < pca.coords.rows(); ++r) {
            out << gram.ids[r];
            for (int c = 0; c < kpca_components; ++c) out << "," << pca.coords(r, c);
            out << "\n";
        }
        return 0;
    }

    if (cmd_base->parsed()) {
        std::vector<WeightedGraph> graphs;
        std::vector<std::string> ids;
        for (const auto& p : list_files(base_dir, {".edges", ".txt"})) {
            graphs.push_back(load_edge_list(p.string()));
            ids.push_back(p.stem().string());
        }
        if (base_method == "common") {
            std::vector<MeasureVector> rows;
            for (const auto& g : graphs) rows.push_back(common_measures(g));
            if (base_normalize) rows = minmax_normalize(rows);
            std::ofstream out(base_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write '" + base_out + "'");
            out.precision(17);
            out << "id";
            for (const auto& n : MeasureVector::names()) out << "," << n;
            out << "\n";
            for (size_t r = 0; r < rows.size(); ++r) {
                out << ids[r];
                for (double v : rows[r].as_array()) out << "," << v;
                out << "\n";
            }
            return 0;
        }
        auto pair_kernel = [&](const WeightedGraph& a, const WeightedGraph& b) -> double {
            if (base_method == "kstep") {
                return random_walk_kernel(a, b, RandomWalkParams{});
            }
            if (base_method == "geometric") {
                RandomWalkParams p;
                p.variant = RandomWalkVariant::Geometric;
                return random_walk_kernel(a, b, p);
            }
            if (base_method == "exponential") {
                RandomWalkParams p;
                p.variant = RandomWalkVariant::Exponential;
                return random_walk_kernel(a, b, p);
            }
            if (base_method == "sp") return shortest_path_kernel(a, b);
            if (base_method == "graphlet") {
                const int k = std::min(a.node_count(), b.node_count()) <= 64 ? 4 : 3;
                return graphlet_kernel(a, b, k);
            }
            if (base_method == "wl") return wl_kernel(a, b);
            throw std::invalid_argument("unknown baseline method '" + base_method + "'");
        };
        GramMatrix gram;
        gram.ids = ids;
        gram.k.resize(graphs.size(), graphs.size());
        for (size_t i = 0; i < graphs.size(); ++i) {
            for (size_t j = i; j < graphs.size(); ++j) {
                gram.k(i, j) = gram.k(j, i) = pair_kernel(graphs[i], graphs[j]);
            }
        }
        save_gram(gram, base_out);
        return 0;
    }

    if (cmd_exp->parsed()) {
        ExperimentConfig cfg;
        cfg.out_dir = exp_out;
        cfg.seed = exp_seed;
        cfg.full_scale = exp_full;
        cfg.threads = threads;
        if (exp_preset == "gn-transition") {
            auto res = run_gn_transition(cfg);
            std::cout << "r_star," << format_double(res.r_star) << "\n";
        } else if (exp_preset == "model-id") {
            auto res = run_model_id(cfg);
            std::cout << "mean_accuracy," << format_double(res.mean_accuracy) << "\n";
            std::cout << "conf_svt_accuracy," << format_double(res.conf_svt_accuracy) << "\n";
            std::cout << "conf_common_accuracy," << format_double(res.conf_common_accuracy)
                      << "\n";
        } else if (exp_preset == "ba-taumax") {
            auto res = run_ba_taumax(cfg);
            std::cout << "tau_max,accuracy\n";
            for (size_t c = 0; c < res.tau_max.size(); ++c) {
                std::cout << format_double(res.tau_max[c]) << ","
                          << format_double(res.accuracy[c]) << "\n";
            }
        } else {
            throw std::invalid_argument("unknown preset '" + exp_preset + "'");
        }
        return 0;
    }

    if (cmd_val->parsed()) {
        val_grid.build();  // throws naming the problem
        if (!val_graphs.empty() && !fs::is_directory(val_graphs)) {
            throw std::invalid_argument("input directory does not exist: '" + val_graphs +
                                        "'");
        }
        if (!(val_eta > 0.0)) {
            throw std::invalid_argument("eta must be positive");
        }
        if (val_sigma < 0.0 || val_xi < 0.0) {
            throw std::invalid_argument("sigma and xi must be nonnegative");
        }
        std::cout << "ok\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
