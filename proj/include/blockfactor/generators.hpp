#pragma once
#include "graph.hpp"
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace blockfactor {

// Four communities of 32; expected within-degree z_in and between-degree
// z_out with z_in + z_out = 16.
struct GNSpec {
    double z_out = 0.0;
    double z_in() const { return 16.0 - z_out; }
    static constexpr int nodes = 128;
    static constexpr int communities = 4;
    static constexpr int community_size = 32;
};

struct LFRSpec {
    int n = 1000;
    int max_degree = 50;
    double degree_exponent = 2.0;
    double community_exponent = 1.0;
    double average_degree = 20.0;
    double mu = 0.1;
    int size_lo = 10;
    int size_hi = 100;
};

struct PlantedInstance {
    Graph graph;
    std::vector<int> labels;
    int communities = 0;
};

struct generation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Planted partition: each within-community pair appears independently with
// probability z_in/31, each between-community pair with z_out/96. Simple
// undirected graph. Throws std::domain_error if either probability leaves
// [0,1].
PlantedInstance gn_generate(const GNSpec& spec, uint64_t seed);

// count iid draws with P(k) proportional to k^(-exponent) on {lo..hi}.
std::vector<int> powerlaw_sample(double exponent, int lo, int hi, int count, uint64_t seed);

// Configuration-model benchmark with power-law degrees (exponent alpha,
// upper bound max_degree, lower bound tuned so the mean tracks
// average_degree) and power-law community sizes on [size_lo, size_hi]
// resampled to sum to n. Each node keeps round-half-to-even (1-mu)*deg
// stubs internal. Stub matching rejects self-loops and duplicates via bounded
// rewiring plus degree-preserving edge swaps; the rare residual stubs that
// remain non-graphical after that are dropped. Throws generation_error only
// when community sizes cannot be realized at all.
PlantedInstance lfr_generate(const LFRSpec& spec, uint64_t seed);

// Fraction of edge endpoints joining distinct communities.
double cross_edge_fraction(const Graph& g, const std::vector<int>& labels);

double mean_degree(const Graph& g);

} // namespace blockfactor
