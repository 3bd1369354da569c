#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "svtnet/generators.hpp"

using namespace svtnet;

namespace {

std::vector<int> sorted_degrees(const WeightedGraph& g) {
    auto d = g.degrees();
    std::sort(d.begin(), d.end());
    return d;
}

int component_count(const WeightedGraph& g) {
    std::vector<int> parent(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges()) {
        parent[find(e.u)] = find(e.v);
    }
    std::set<int> roots;
    for (int i = 0; i < g.node_count(); ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("planted partition with vanishing mixing gives four dense blocks") {
    // r near 0 with full intra-community density: four disjoint near-cliques
    GeneratorSpec spec;
    spec.model = Model::GN;
    spec.n = 128;
    spec.r = 1e-12;
    spec.seed = 42;
    WeightedGraph g = generate(spec);
    CHECK(component_count(g) == 4);
    for (const auto& e : g.edges()) {
        CHECK(e.u / 32 == e.v / 32);  // no cross-community links
    }
}

TEST_CASE("ring lattice without rewiring is exactly regular") {
    GeneratorSpec spec;
    spec.model = Model::WS;
    spec.n = 128;
    spec.k = 8;
    spec.beta = 0.0;
    spec.seed = 9;
    WeightedGraph g = generate(spec);
    for (int d : g.degrees()) CHECK(d == 8);
    CHECK(g.edges().size() == 128 * 8 / 2);
}

TEST_CASE("random graph edge count near its binomial expectation") {
    GeneratorSpec spec;
    spec.model = Model::ER;
    spec.n = 128;
    spec.p_link = 0.06;
    spec.seed = 1234;
    WeightedGraph g = generate(spec);
    const double pairs = 128.0 * 127.0 / 2.0;
    const double mean = pairs * 0.06;
    const double sd = std::sqrt(pairs * 0.06 * 0.94);
    CHECK(std::abs(static_cast<double>(g.edges().size()) - mean) <= 3.0 * sd);
}

TEST_CASE("generation is deterministic in the seed") {
    for (Model m : {Model::GN, Model::ER, Model::WS, Model::BA}) {
        GeneratorSpec spec;
        spec.model = m;
        spec.n = 64;
        spec.seed = 77;
        if (m == Model::GN) spec.n = 128;
        WeightedGraph a = generate(spec);
        WeightedGraph b = generate(spec);
        REQUIRE(a.edges().size() == b.edges().size());
        for (size_t i = 0; i < a.edges().size(); ++i) {
            CHECK(a.edges()[i].u == b.edges()[i].u);
            CHECK(a.edges()[i].v == b.edges()[i].v);
        }
        spec.seed = 78;
        WeightedGraph c = generate(spec);
        bool different = a.edges().size() != c.edges().size();
        for (size_t i = 0; !different && i < a.edges().size(); ++i) {
            different = a.edges()[i].u != c.edges()[i].u || a.edges()[i].v != c.edges()[i].v;
        }
        CHECK(different);
    }
}

TEST_CASE("mixing ratio controls the inter/intra edge split") {
    // expected inter/intra edge-count ratio is r * (96/31)
    const double r = 0.5;
    double intra = 0.0, inter = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        GeneratorSpec spec;
        spec.model = Model::GN;
        spec.n = 128;
        spec.r = r;
        spec.seed = seed;
        for (const auto& e : generate(spec).edges()) {
            if (e.u / 32 == e.v / 32) {
                intra += 1.0;
            } else {
                inter += 1.0;
            }
        }
    }
    CHECK(inter / intra == doctest::Approx(r * 96.0 / 31.0).epsilon(0.05));
}

TEST_CASE("growth model attaches at most m0 links per new node") {
    GeneratorSpec spec;
    spec.model = Model::BA;
    spec.n = 128;
    spec.m0 = 3;
    spec.seed = 5;
    WeightedGraph g = generate(spec);
    CHECK(g.edges().size() <= static_cast<size_t>((128 - 3) * 3));
    CHECK(g.edges().size() >= static_cast<size_t>(128 - 3));  // at least one per new node
}

TEST_CASE("degree randomization preserves the degree sequence exactly") {
    GeneratorSpec spec;
    spec.model = Model::BA;
    spec.n = 64;
    spec.m0 = 3;
    spec.seed = 11;
    WeightedGraph g = generate(spec);
    WeightedGraph c = configuration_model(g, 99);
    CHECK(sorted_degrees(g) == sorted_degrees(c));
    // per-node degrees preserved, not just the multiset
    CHECK(g.degrees() == c.degrees());
}

TEST_CASE("rigid degree sequences are fixed points of randomization") {
    WeightedGraph triangle(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
    WeightedGraph t2 = configuration_model(triangle, 1);
    CHECK(t2.edges().size() == 3);
    CHECK(sorted_degrees(t2) == std::vector<int>{2, 2, 2});

    WeightedGraph star(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
    WeightedGraph s2 = configuration_model(star, 2);
    CHECK(s2.degrees() == star.degrees());
    for (const auto& e : s2.edges()) CHECK((e.u == 0 || e.v == 0));
}

TEST_CASE("infeasible parameters are rejected") {
    GeneratorSpec spec;
    spec.model = Model::WS;
    spec.n = 8;
    spec.k = 8;  // k must be < n
    CHECK_THROWS(generate(spec));
    spec.k = 7;  // odd
    CHECK_THROWS(generate(spec));

    GeneratorSpec gn;
    gn.model = Model::GN;
    gn.n = 100;  // model is defined for 128 nodes
    CHECK_THROWS(generate(gn));
    gn.n = 128;
    gn.r = 0.0;
    CHECK_THROWS(generate(gn));

    GeneratorSpec ba;
    ba.model = Model::BA;
    ba.n = 10;
    ba.m0 = 10;
    CHECK_THROWS(generate(ba));
}
