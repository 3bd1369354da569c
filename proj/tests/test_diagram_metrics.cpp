#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "svtnet/diagram_metrics.hpp"

using namespace svtnet;

namespace {

Diagram2D make2d(std::vector<PersistencePair> pairs, double tau = 1.0, int dim = 0) {
    Diagram2D d;
    d.tau = tau;
    d.dim = dim;
    d.pairs = std::move(pairs);
    return d;
}

Diagram3D make3d(std::vector<DiagramPoint> pts, std::vector<double> grid, int dim = 0) {
    Diagram3D d;
    d.dim = dim;
    d.points = std::move(pts);
    d.tau_grid = std::move(grid);
    return d;
}

std::vector<oracle::BnPoint> as_oracle_2d(const Diagram2D& d) {
    std::vector<oracle::BnPoint> out;
    for (const auto& p : d.pairs) out.push_back({p.birth, p.death, 0.0});
    return out;
}

std::vector<oracle::BnPoint> as_oracle_3d(const Diagram3D& d) {
    std::vector<oracle::BnPoint> out;
    for (const auto& p : d.points) {
        if (!p.essential) out.push_back({p.birth, p.death, p.tau});
    }
    return out;
}

Diagram2D random_diagram_2d(std::mt19937_64& rng, int max_points) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Diagram2D d;
    d.tau = 1.0;
    const int k = static_cast<int>(rng() % (max_points + 1));
    for (int i = 0; i < k; ++i) {
        const double b = unif(rng);
        d.pairs.push_back({b, b + unif(rng)});
    }
    return d;
}

Diagram3D random_diagram_3d(std::mt19937_64& rng, int max_points) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Diagram3D d;
    d.tau_grid = {1.0, 2.0, 3.0};
    const int k = 1 + static_cast<int>(rng() % max_points);
    for (int i = 0; i < k; ++i) {
        const double b = unif(rng);
        d.points.push_back({b, b + unif(rng), d.tau_grid[rng() % 3], false});
    }
    return d;
}

}  // namespace

TEST_CASE("bottleneck of a diagram with itself is zero") {
    Diagram2D x = make2d({{0.0, 1.0}, {0.2, 0.9}, {0.0, kInfiniteDeath}});
    CHECK(bottleneck_2d(x, x) == 0.0);
    Diagram3D e = make3d({{0.1, 0.7, 1.0, false}, {0.0, 2.0, 2.0, false}}, {1.0, 2.0});
    CHECK(bottleneck_3d(e, e, 0.5) == 0.0);
}

TEST_CASE("single-point diagrams: direct match beats the diagonal") {
    Diagram2D x = make2d({{0.0, 2.0}});
    Diagram2D y = make2d({{0.0, 3.0}});
    CHECK(bottleneck_2d(x, y) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unmatched point pays its diagonal projection cost") {
    Diagram2D x = make2d({{0.0, 2.0}});
    Diagram2D y = make2d({});
    CHECK(bottleneck_2d(x, y) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bottleneck_2d(y, x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mismatched infinite-pair counts give infinite distance") {
    Diagram2D x = make2d({{0.0, kInfiniteDeath}});
    Diagram2D y = make2d({{0.0, 1.0}});
    CHECK(std::isinf(bottleneck_2d(x, y)));
    // matching infinite pairs compare by birth
    Diagram2D z = make2d({{0.3, kInfiniteDeath}});
    CHECK(bottleneck_2d(x, z) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("timescale shift costs xi times the shift when it dominates") {
    Diagram3D e = make3d({{0.0, 1.0, 1.0, false}}, {1.0, 2.0});
    Diagram3D f = make3d({{0.0, 1.0, 2.0, false}}, {1.0, 2.0});
    // xi*1 = 0.4 dominates but staying matched still beats two diagonal
    // projections of cost 0.5 each
    CHECK(bottleneck_3d(e, f, 0.4) == doctest::Approx(0.4).epsilon(1e-14));
    // large xi: both points drop to their diagonals at cost 0.5
    CHECK(bottleneck_3d(e, f, 10.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("2d bottleneck agrees with exhaustive enumeration") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        Diagram2D x = random_diagram_2d(rng, 6);
        Diagram2D y = random_diagram_2d(rng, 6);
        const double got = bottleneck_2d(x, y);
        const double want =
            oracle::bottleneck_enumerate(as_oracle_2d(x), as_oracle_2d(y), 0.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("3d bottleneck agrees with exhaustive enumeration") {
    std::mt19937_64 rng(456);
    for (int trial = 0; trial < 40; ++trial) {
        Diagram3D e = random_diagram_3d(rng, 5);
        Diagram3D f = random_diagram_3d(rng, 5);
        const double xi = 0.1 + 0.3 * (trial % 4);
        const double got = bottleneck_3d(e, f, xi);
        const double want =
            oracle::bottleneck_enumerate(as_oracle_3d(e), as_oracle_3d(f), xi);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("3d distance never exceeds the worst per-timescale slice distance") {
    std::mt19937_64 rng(789);
    for (int trial = 0; trial < 20; ++trial) {
        Diagram3D e = random_diagram_3d(rng, 6);
        Diagram3D f = random_diagram_3d(rng, 6);
        double slice_max = 0.0;
        for (double tau : e.tau_grid) {
            Diagram2D xs, ys;
            for (const auto& p : e.points)
                if (p.tau == tau) xs.pairs.push_back({p.birth, p.death});
            for (const auto& p : f.points)
                if (p.tau == tau) ys.pairs.push_back({p.birth, p.death});
            slice_max = std::max(slice_max, bottleneck_2d(xs, ys));
        }
        CHECK(bottleneck_3d(e, f, 0.5) <= slice_max + 1e-12);
    }
}

TEST_CASE("metric axioms: symmetry and triangle inequality") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 15; ++trial) {
        Diagram3D a = random_diagram_3d(rng, 4);
        Diagram3D b = random_diagram_3d(rng, 4);
        Diagram3D c = random_diagram_3d(rng, 4);
        const double xi = 0.7;
        const double ab = bottleneck_3d(a, b, xi);
        CHECK(ab == bottleneck_3d(b, a, xi));
        CHECK(ab <= bottleneck_3d(a, c, xi) + bottleneck_3d(c, b, xi) + 1e-9);
    }
}

TEST_CASE("spectral norm matches a dense eigensolver") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd a(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) a(i, j) = gauss(rng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        CHECK(spectral_norm(a) ==
              doctest::Approx(svd.singularValues()(0)).epsilon(1e-8));
    }
    CHECK(spectral_norm(Eigen::MatrixXd::Zero(3, 3)) == doctest::Approx(0.0));
}

TEST_CASE("identical graphs have zero perturbation gap") {
    WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
    auto [lhs, rhs] = stability_gap(g, g, {1.0, 2.0, 3.0}, 0, 1.0);
    CHECK(lhs == doctest::Approx(0.0).scale(1e-12));
    CHECK(rhs == doctest::Approx(0.0).scale(1e-12));
}

TEST_CASE("small weight perturbations respect the stability bound") {
    WeightedGraph g(5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 0, 1.0}});
    WeightedGraph h(5, {{0, 1, 1.001}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 0, 1.0}});
    std::vector<double> grid{1.0, 2.0, 3.0, 4.0, 5.0};
    auto [lhs, rhs] = stability_gap(g, h, grid, 0, 1.0);
    CHECK(lhs <= rhs + 1e-12);
    CHECK(rhs < 0.02);  // 2*tau_K*||dL|| with a 1e-3 weight change
}

TEST_CASE("the stability inequality holds on random graph pairs") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int held = 0;
    const int trials = 30;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 8;
        std::vector<Edge> e1, e2;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (unif(rng) < 0.4) {
                    const double w = 0.5 + unif(rng);
                    e1.push_back({i, j, w});
                    e2.push_back({i, j, w * (1.0 + 0.05 * (unif(rng) - 0.5))});
                }
            }
        }
        if (e1.empty()) {
            ++held;
            continue;
        }
        WeightedGraph g(n, e1), h(n, e2);
        auto [lhs, rhs] = stability_gap(g, h, {1.0, 2.0, 3.0}, 0, 1.0);
        if (lhs <= rhs + 1e-9) ++held;
    }
    CHECK(held == trials);
}

TEST_CASE("node-count mismatch is rejected") {
    WeightedGraph g(3, {{0, 1, 1.0}});
    WeightedGraph h(4, {{0, 1, 1.0}});
    CHECK_THROWS(stability_gap(g, h, {1.0}, 0, 1.0));
}
