#include "doctest.h"
#include "blockfactor/generators.hpp"
#include "blockfactor/graph.hpp"
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace blockfactor;

namespace {

bool same_edges(const Graph& a, const Graph& b) {
    if (a.edges.size() != b.edges.size()) return false;
    for (size_t k = 0; k < a.edges.size(); ++k)
        if (a.edges[k].u != b.edges[k].u || a.edges[k].v != b.edges[k].v ||
            a.edges[k].w != b.edges[k].w)
            return false;
    return true;
}

} // namespace

TEST_CASE("gn at zero mixing keeps every edge internal") {
    GNSpec spec;
    spec.z_out = 0.0;
    PlantedInstance inst = gn_generate(spec, 3);
    CHECK(inst.graph.n == 128);
    CHECK(inst.communities == 4);
    REQUIRE(inst.labels.size() == 128);
    for (int i = 0; i < 128; ++i) CHECK(inst.labels[i] == i / 32);
    CHECK(cross_edge_fraction(inst.graph, inst.labels) == 0.0);
    CHECK(inst.graph.edges.size() > 0);
}

TEST_CASE("gn at full mixing has no internal edges") {
    GNSpec spec;
    spec.z_out = 16.0;
    PlantedInstance inst = gn_generate(spec, 4);
    CHECK(cross_edge_fraction(inst.graph, inst.labels) == 1.0);
}

TEST_CASE("gn instances are simple graphs") {
    GNSpec spec;
    spec.z_out = 8.0;
    PlantedInstance inst = gn_generate(spec, 5);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : inst.graph.edges) {
        CHECK(e.u != e.v);
        CHECK(e.w == 1.0);
        auto key = std::minmax(e.u, e.v);
        CHECK(seen.insert({key.first, key.second}).second);
    }
}

TEST_CASE("gn rejects out-of-range mixing") {
    GNSpec low;
    low.z_out = -1.0;
    CHECK_THROWS_AS(gn_generate(low, 1), std::domain_error);
    GNSpec high;
    high.z_out = 17.0;
    CHECK_THROWS_AS(gn_generate(high, 1), std::domain_error);
}

TEST_CASE("gn generation is seed deterministic") {
    GNSpec spec;
    spec.z_out = 6.0;
    PlantedInstance a = gn_generate(spec, 11);
    PlantedInstance b = gn_generate(spec, 11);
    CHECK(same_edges(a.graph, b.graph));
    CHECK(a.labels == b.labels);
    PlantedInstance c = gn_generate(spec, 12);
    CHECK_FALSE(same_edges(a.graph, c.graph));
}

TEST_CASE("gn mean degree tracks the design total of 16") {
    GNSpec spec;
    spec.z_out = 8.0;
    double total = 0.0;
    int reps = 10;
    for (int t = 0; t < reps; ++t) total += mean_degree(gn_generate(spec, 100 + t).graph);
    double avg = total / reps;
    CHECK(avg > 15.0);
    CHECK(avg < 17.0);
}

TEST_CASE("powerlaw sampling hits the exact point mass") {
    std::vector<int> flat = powerlaw_sample(2.0, 7, 7, 100, 1);
    for (int v : flat) CHECK(v == 7);

    std::vector<int> a = powerlaw_sample(2.0, 1, 50, 1000, 2);
    std::vector<int> b = powerlaw_sample(2.0, 1, 50, 1000, 2);
    CHECK(a == b);
    for (int v : a) {
        CHECK(v >= 1);
        CHECK(v <= 50);
    }

    int count = 100000;
    std::vector<int> big = powerlaw_sample(2.0, 1, 50, count, 3);
    double ones = 0.0;
    for (int v : big)
        if (v == 1) ones += 1.0;
    double h = 0.0;
    for (int k = 1; k <= 50; ++k) h += 1.0 / (double(k) * k);
    double expect = 1.0 / h;
    double se = std::sqrt(expect * (1.0 - expect) / count);
    CHECK(std::abs(ones / count - expect) <= 3.0 * se + 1e-9);

    CHECK_THROWS_AS(powerlaw_sample(0.0, 1, 50, 10, 1), std::domain_error);
    CHECK_THROWS_AS(powerlaw_sample(2.0, 5, 4, 10, 1), std::domain_error);
}

TEST_CASE("lfr default instances meet the declared shape") {
    LFRSpec spec;
    spec.mu = 0.1;
    PlantedInstance inst = lfr_generate(spec, 7);
    CHECK(inst.graph.n == 1000);
    REQUIRE(inst.labels.size() == 1000);
    CHECK(inst.communities >= 2);

    std::vector<int> degree(1000, 0);
    for (const auto& e : inst.graph.edges) {
        degree[e.u] += 1;
        degree[e.v] += 1;
        CHECK(e.u != e.v);
    }
    CHECK(*std::max_element(degree.begin(), degree.end()) <= 50);

    std::vector<int> sizes(inst.communities, 0);
    for (int l : inst.labels) {
        CHECK(l >= 0);
        CHECK(l < inst.communities);
        sizes[l] += 1;
    }
    for (int s : sizes) {
        CHECK(s >= 10);
        CHECK(s <= 100);
    }

    double md = mean_degree(inst.graph);
    CHECK(md > 17.0);
    CHECK(md < 23.0);
}

TEST_CASE("lfr generation is seed deterministic") {
    LFRSpec spec;
    spec.mu = 0.3;
    PlantedInstance a = lfr_generate(spec, 21);
    PlantedInstance b = lfr_generate(spec, 21);
    CHECK(same_edges(a.graph, b.graph));
    CHECK(a.labels == b.labels);
    CHECK(a.communities == b.communities);
}

TEST_CASE("lfr zero mixing yields disconnected communities") {
    LFRSpec spec;
    spec.mu = 0.0;
    PlantedInstance inst = lfr_generate(spec, 9);
    CHECK(cross_edge_fraction(inst.graph, inst.labels) == 0.0);
}

TEST_CASE("lfr realized mixing tracks mu") {
    LFRSpec spec;
    spec.mu = 0.5;
    double total = 0.0;
    int reps = 3;
    for (int t = 0; t < reps; ++t) {
        PlantedInstance inst = lfr_generate(spec, 40 + t);
        total += cross_edge_fraction(inst.graph, inst.labels);
    }
    CHECK(std::abs(total / reps - 0.5) <= 0.03);
}

TEST_CASE("lfr validates its spec") {
    LFRSpec bad;
    bad.mu = 1.5;
    CHECK_THROWS_AS(lfr_generate(bad, 1), std::domain_error);
    LFRSpec heavy;
    heavy.average_degree = 80.0;
    CHECK_THROWS_AS(lfr_generate(heavy, 1), std::domain_error);
}

TEST_CASE("degree and crossing helpers on a hand graph") {
    Graph g;
    g.kind = GraphKind::undirected;
    g.n = 3;
    g.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    CHECK(mean_degree(g) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(cross_edge_fraction(g, {0, 0, 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cross_edge_fraction(g, {0, 0, 0}) == 0.0);
}
