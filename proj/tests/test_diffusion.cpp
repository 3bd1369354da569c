#include <doctest.h>

#include <cmath>
#include <vector>

#include "svtnet/diffusion.hpp"
#include "svtnet/graph.hpp"

using namespace svtnet;

namespace {

WeightedGraph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    }
    return WeightedGraph(n, edges);
}

WeightedGraph random_graph(int n, int seed) {
    std::vector<Edge> edges;
    std::uint64_t state = seed * 2654435761u + 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            if ((state >> 40) % 10 < 4) {
                edges.push_back({i, j, 1.0 + static_cast<double>((state >> 20) % 4)});
            }
        }
    }
    return WeightedGraph(n, edges);
}

}  // namespace

TEST_CASE("heat kernel at vanishing time is the identity") {
    auto lap = build_laplacian(random_graph(10, 3));
    Eigen::MatrixXd h = heat_kernel(lap, 1e-12);
    CHECK((h - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("two-node heat kernel matches the closed form") {
    WeightedGraph g(2, {{0, 1, 1.0}});
    auto lap = build_laplacian(g);
    for (double tau : {0.1, 0.5, 1.0, 3.0}) {
        Eigen::MatrixXd h = heat_kernel(lap, tau);
        const double a = 0.5 * (1.0 + std::exp(-2.0 * tau));
        const double b = 0.5 * (1.0 - std::exp(-2.0 * tau));
        CHECK(h(0, 0) == doctest::Approx(a).epsilon(1e-12));
        CHECK(h(0, 1) == doctest::Approx(b).epsilon(1e-12));
        CHECK(h(1, 0) == doctest::Approx(b).epsilon(1e-12));
        CHECK(h(1, 1) == doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("probability is conserved: rows sum to one") {
    for (int seed = 0; seed < 10; ++seed) {
        auto lap = build_laplacian(random_graph(14, seed));
        for (double tau : {0.5, 5.0, 40.0}) {
            Eigen::MatrixXd h = heat_kernel(lap, tau);
            for (int i = 0; i < 14; ++i) {
                CHECK(std::abs(h.row(i).sum() - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("semigroup property of the heat kernel") {
    auto lap = build_laplacian(random_graph(12, 7));
    Eigen::MatrixXd h1 = heat_kernel(lap, 0.7);
    Eigen::MatrixXd h2 = heat_kernel(lap, 1.9);
    Eigen::MatrixXd h12 = heat_kernel(lap, 2.6);
    CHECK((h1 * h2 - h12).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("point cloud rows equal heat kernel rows") {
    auto lap = build_laplacian(random_graph(9, 2));
    Eigen::MatrixXd h = heat_kernel(lap, 1.3);
    DiffusionPointCloud pc = point_cloud(lap, 1.3);
    CHECK(pc.tau == 1.3);
    CHECK((pc.points - h).cwiseAbs().maxCoeff() <= 1e-12);
    for (int i = 0; i < 9; ++i) {
        CHECK(std::abs(pc.points.row(i).sum() - 1.0) <= 1e-9);
        CHECK(pc.points.row(i).minCoeff() >= -1e-12);
    }
}

TEST_CASE("two-node distance decays as sqrt(2) exp(-2 tau)") {
    WeightedGraph g(2, {{0, 1, 1.0}});
    auto lap = build_laplacian(g);
    for (double tau : {0.25, 1.0, 2.0}) {
        DistanceMatrix dm = distance_matrix(point_cloud(lap, tau));
        CHECK(dm.d(0, 1) ==
              doctest::Approx(std::sqrt(2.0) * std::exp(-2.0 * tau)).epsilon(1e-10));
        CHECK(dm.d(0, 0) == 0.0);
        CHECK(dm.d(1, 0) == dm.d(0, 1));
    }
}

TEST_CASE("distance matrix is symmetric with zero diagonal and triangle inequality") {
    auto lap = build_laplacian(random_graph(12, 5));
    DistanceMatrix dm = distance_matrix(point_cloud(lap, 0.8));
    for (int i = 0; i < 12; ++i) {
        CHECK(dm.d(i, i) == 0.0);
        for (int j = 0; j < 12; ++j) {
            CHECK(dm.d(i, j) == dm.d(j, i));
            for (int k = 0; k < 12; ++k) {
                CHECK(dm.d(i, j) <= dm.d(i, k) + dm.d(k, j) + 1e-12);
            }
        }
    }
}

TEST_CASE("maximum distance contracts as the timescale grows") {
    auto lap = build_laplacian(complete_graph(8));
    double prev = 1e300;
    for (double tau = 1.0; tau <= 20.0; tau += 1.0) {
        double m = distance_matrix(point_cloud(lap, tau)).d.maxCoeff();
        CHECK(m <= prev + 1e-12);
        prev = m;
    }
}

TEST_CASE("scale averaging: plain mean and normalized scale invariance") {
    DistanceMatrix a;
    a.tau = 1.0;
    a.d.resize(2, 2);
    a.d << 0.0, 2.0, 2.0, 0.0;
    DistanceMatrix b = a;
    b.tau = 2.0;
    b.d *= 3.0;

    DistanceMatrix plain = average_distance_matrix({a}, false);
    CHECK((plain.d - a.d).cwiseAbs().maxCoeff() == 0.0);

    DistanceMatrix norm = average_distance_matrix({a, b}, true);
    CHECK(norm.d(0, 1) == doctest::Approx(1.0).epsilon(1e-14));

    // three random matrices vs a direct elementwise mean
    std::vector<DistanceMatrix> mats(3, a);
    mats[1].d << 0.0, 0.5, 0.5, 0.0;
    mats[2].d << 0.0, 1.25, 1.25, 0.0;
    DistanceMatrix mean = average_distance_matrix(mats, false);
    CHECK(mean.d(0, 1) == doctest::Approx((2.0 + 0.5 + 1.25) / 3.0).epsilon(1e-14));

    CHECK_THROWS(average_distance_matrix({}, false));
    DistanceMatrix zero = a;
    zero.d.setZero();
    CHECK_THROWS(average_distance_matrix({zero}, true));
}

TEST_CASE("complete graph spectra") {
    auto k2 = spectral_decompose(build_laplacian(complete_graph(2)));
    REQUIRE(k2.eigenvalues.size() == 2);
    CHECK(std::abs(k2.eigenvalues(0)) <= 1e-9);
    CHECK(k2.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-10));

    for (int n : {4, 7}) {
        auto sd = spectral_decompose(build_laplacian(complete_graph(n)));
        CHECK(std::abs(sd.eigenvalues(0)) <= 1e-9);
        for (int i = 1; i < n; ++i) {
            CHECK(sd.eigenvalues(i) ==
                  doctest::Approx(static_cast<double>(n) / (n - 1)).epsilon(1e-9));
        }
    }
}

TEST_CASE("one zero mode per connected component") {
    std::vector<Edge> edges;
    for (int c = 0; c < 4; ++c) {
        int base = 5 * c;
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) edges.push_back({base + i, base + j, 1.0});
        }
    }
    auto sd = spectral_decompose(build_laplacian(WeightedGraph(20, edges)));
    int zero_modes = 0;
    for (int i = 0; i < 20; ++i) {
        if (std::abs(sd.eigenvalues(i)) <= 1e-9) ++zero_modes;
    }
    CHECK(zero_modes == 4);
}

TEST_CASE("spectral reconstruction matches the laplacian") {
    for (int seed = 0; seed < 5; ++seed) {
        auto lap = build_laplacian(random_graph(11, seed + 20));
        auto sd = spectral_decompose(lap);
        CHECK((sd.reconstruct_laplacian() - lap.matrix).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("separation eigenvalue and timescale ceiling") {
    // two-node graph: spectrum {0, 2}, so the only gap selects 2
    auto k2 = spectral_decompose(build_laplacian(complete_graph(2)));
    CHECK(detect_lambda_sep(k2) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(suggest_tau_max(k2) == doctest::Approx(5.0).epsilon(1e-10));

    // the returned ceiling is always gap_factor / lambda_sep
    auto sd = spectral_decompose(build_laplacian(random_graph(16, 4)));
    double ls = detect_lambda_sep(sd);
    CHECK(suggest_tau_max(sd, 10.0) == doctest::Approx(10.0 / ls).epsilon(1e-12));
    CHECK(suggest_tau_max(sd, 4.0) == doctest::Approx(4.0 / ls).epsilon(1e-12));

    // edgeless graph: no nonzero eigenvalue to separate
    auto empty = spectral_decompose(build_laplacian(WeightedGraph(3, {})));
    CHECK_THROWS(suggest_tau_max(empty));
}

TEST_CASE("disconnected graphs keep cross-component separation") {
    // two disjoint edges: the heat kernel is block diagonal, so
    // cross-component distances dominate the block-wise floor
    WeightedGraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    auto lap = build_laplacian(g);
    for (double tau : {0.5, 2.0, 10.0}) {
        DistanceMatrix dm = distance_matrix(point_cloud(lap, tau));
        // points in distinct components never coincide: each carries unit
        // mass confined to its own block
        CHECK(dm.d(0, 2) >= 1.0 - 1e-9);
        CHECK(dm.d(0, 1) <= dm.d(0, 2));
    }
}
