#include "blockfactor/generators.hpp"
#include "blockfactor/rng.hpp"
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace blockfactor {

namespace {

// Inverse-CDF sampler for P(k) proportional to k^(-exponent) on {lo..hi}.
struct PowerlawSampler {
    int lo = 1;
    std::vector<double> cum;

    PowerlawSampler(double exponent, int lo_, int hi) : lo(lo_) {
        if (lo < 1 || hi < lo) throw std::domain_error("powerlaw: empty support");
        cum.resize(hi - lo + 1);
        double total = 0.0;
        for (int k = lo; k <= hi; ++k) {
            total += std::pow(static_cast<double>(k), -exponent);
            cum[k - lo] = total;
        }
        for (double& v : cum) v /= total;
        cum.back() = 1.0;
    }

    int draw(Rng& rng) const {
        double u = rng.uniform01();
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        return lo + static_cast<int>(it - cum.begin());
    }
};

double truncated_mean(double exponent, int lo, int hi) {
    double total = 0.0, weighted = 0.0;
    for (int k = lo; k <= hi; ++k) {
        double p = std::pow(static_cast<double>(k), -exponent);
        total += p;
        weighted += k * p;
    }
    return weighted / total;
}

int round_half_even(double x) {
    // nearbyint honors the default rounding mode (to nearest, ties to even)
    return static_cast<int>(std::nearbyint(x));
}

// Undirected simple-edge bookkeeping: a hash set for membership plus the
// per-phase vectors for deterministic ordering and random swap picks.
struct EdgeSet {
    int n;
    std::unordered_set<uint64_t> present;
    explicit EdgeSet(int n_) : n(n_) {}
    static uint64_t key(int u, int v, int n) {
        if (u > v) std::swap(u, v);
        return static_cast<uint64_t>(u) * n + v;
    }
    bool has(int u, int v) const { return present.count(key(u, v, n)) != 0; }
    bool add(int u, int v) {
        if (u == v) return false;
        return present.insert(key(u, v, n)).second;
    }
    void remove(int u, int v) { present.erase(key(u, v, n)); }
};

} // namespace

std::vector<int> powerlaw_sample(double exponent, int lo, int hi, int count, uint64_t seed) {
    if (exponent <= 0) throw std::domain_error("powerlaw: exponent must be positive");
    PowerlawSampler sampler(exponent, lo, hi);
    Rng rng(seed);
    std::vector<int> out(count);
    for (int i = 0; i < count; ++i) out[i] = sampler.draw(rng);
    return out;
}

PlantedInstance gn_generate(const GNSpec& spec, uint64_t seed) {
    const double p_in = spec.z_in() / 31.0;
    const double p_out = spec.z_out / 96.0;
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw std::domain_error("gn_generate: edge probability outside [0,1]");
    Rng rng(seed);
    PlantedInstance inst;
    inst.graph.kind = GraphKind::undirected;
    inst.graph.n = GNSpec::nodes;
    inst.communities = GNSpec::communities;
    inst.labels.resize(GNSpec::nodes);
    for (int i = 0; i < GNSpec::nodes; ++i) inst.labels[i] = i / GNSpec::community_size;
    for (int i = 0; i < GNSpec::nodes; ++i)
        for (int j = i + 1; j < GNSpec::nodes; ++j) {
            double p = inst.labels[i] == inst.labels[j] ? p_in : p_out;
            if (rng.bernoulli(p)) inst.graph.edges.push_back({i, j, 1.0});
        }
    return inst;
}

PlantedInstance lfr_generate(const LFRSpec& spec, uint64_t seed) {
    if (spec.mu < 0.0 || spec.mu > 1.0) throw std::domain_error("lfr_generate: mu outside [0,1]");
    if (spec.average_degree > spec.max_degree)
        throw std::domain_error("lfr_generate: average degree above max degree");
    Rng rng(seed);
    const int n = spec.n;

    // Degree sequence: truncated power law whose lower bound is tuned so the
    // mean hits average_degree; adjacent bounds lo and lo+1 are mixed with
    // probability q because an integer bound alone cannot land exactly.
    int lo = 1;
    while (lo + 1 < spec.max_degree &&
           truncated_mean(spec.degree_exponent, lo + 1, spec.max_degree) <= spec.average_degree)
        ++lo;
    double mlo = truncated_mean(spec.degree_exponent, lo, spec.max_degree);
    double mhi = truncated_mean(spec.degree_exponent, lo + 1, spec.max_degree);
    double q = mhi <= mlo ? 0.0 : std::clamp((spec.average_degree - mlo) / (mhi - mlo), 0.0, 1.0);
    PowerlawSampler deg_lo(spec.degree_exponent, lo, spec.max_degree);
    PowerlawSampler deg_hi(spec.degree_exponent, std::min(lo + 1, spec.max_degree), spec.max_degree);
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i)
        deg[i] = rng.uniform01() < q ? deg_hi.draw(rng) : deg_lo.draw(rng);
    long long total_deg = std::accumulate(deg.begin(), deg.end(), 0ll);
    if (total_deg % 2 == 1) {
        for (;;) {
            int i = static_cast<int>(rng.below(n));
            if (deg[i] < spec.max_degree) {
                ++deg[i];
                break;
            }
        }
    }

    // Community sizes: power law on [size_lo, size_hi], whole list resampled
    // until it sums to n exactly.
    PowerlawSampler size_sampler(spec.community_exponent, spec.size_lo, spec.size_hi);
    std::vector<int> sizes;
    bool sized = false;
    for (int attempt = 0; attempt < 10000 && !sized; ++attempt) {
        sizes.clear();
        int total = 0;
        while (total < n) {
            int s = size_sampler.draw(rng);
            sizes.push_back(s);
            total += s;
        }
        sized = total == n;
    }
    if (!sized) throw generation_error("lfr_generate: community sizes never summed to n");
    const int c_count = static_cast<int>(sizes.size());

    // Internal stub targets, then seats: a node with k internal stubs needs a
    // community of size at least k+1. Hardest nodes pick first; if nothing
    // can host one, it takes any open seat and its internal target is capped.
    std::vector<int> d_int(n);
    for (int i = 0; i < n; ++i) {
        d_int[i] = round_half_even((1.0 - spec.mu) * deg[i]);
        if (d_int[i] > deg[i]) d_int[i] = deg[i];
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d_int[a] > d_int[b]; });
    std::vector<int> remaining = sizes;
    std::vector<int> comm(n, -1);
    std::vector<int> candidates;
    for (int i : order) {
        candidates.clear();
        for (int c0 = 0; c0 < c_count; ++c0)
            if (remaining[c0] > 0 && sizes[c0] - 1 >= d_int[i]) candidates.push_back(c0);
        if (candidates.empty())
            for (int c0 = 0; c0 < c_count; ++c0)
                if (remaining[c0] > 0) candidates.push_back(c0);
        int pick = candidates[rng.below(candidates.size())];
        comm[i] = pick;
        --remaining[pick];
    }
    for (int i = 0; i < n; ++i) d_int[i] = std::min(d_int[i], sizes[comm[i]] - 1);

    // Per-community parity: internal stub counts must pair up.
    std::vector<std::vector<int>> members(c_count);
    for (int i = 0; i < n; ++i) members[comm[i]].push_back(i);
    for (int c0 = 0; c0 < c_count; ++c0) {
        long long s = 0;
        for (int i : members[c0]) s += d_int[i];
        if (s % 2 == 1) {
            std::vector<int> cand;
            for (int i : members[c0])
                if (d_int[i] > 0) cand.push_back(i);
            int i = cand[rng.below(cand.size())];
            --d_int[i];
            // At mu = 0 the freed stub may not become external (zero mixing
            // is a hard contract), so it is dropped with its degree unit.
            if (spec.mu == 0.0) --deg[i];
        }
    }
    std::vector<int> d_ext(n);
    for (int i = 0; i < n; ++i) d_ext[i] = deg[i] - d_int[i];

    EdgeSet edges(n);
    constexpr int kRewireRounds = 100;

    // Internal configuration model per community with bounded rewiring, then
    // degree-preserving double swaps against already placed edges.
    std::vector<std::vector<std::pair<int, int>>> placed(c_count);
    for (int c0 = 0; c0 < c_count; ++c0) {
        std::vector<int> stubs;
        for (int i : members[c0])
            for (int k = 0; k < d_int[i]; ++k) stubs.push_back(i);
        rng.shuffle(stubs);
        std::vector<int> fails;
        for (size_t t = 0; t + 1 < stubs.size(); t += 2) {
            int u = stubs[t], v = stubs[t + 1];
            if (edges.add(u, v)) placed[c0].push_back({u, v});
            else {
                fails.push_back(u);
                fails.push_back(v);
            }
        }
        for (int round = 0; round < kRewireRounds && !fails.empty(); ++round) {
            rng.shuffle(fails);
            std::vector<int> next;
            for (size_t t = 0; t + 1 < fails.size(); t += 2) {
                int u = fails[t], v = fails[t + 1];
                if (edges.add(u, v)) placed[c0].push_back({u, v});
                else {
                    next.push_back(u);
                    next.push_back(v);
                }
            }
            fails = std::move(next);
        }
        // swap repair: replace an existing edge (x,y) by (u,x) and (v,y)
        for (size_t t = 0; t + 1 < fails.size(); t += 2) {
            int u = fails[t], v = fails[t + 1];
            if (edges.add(u, v)) {
                placed[c0].push_back({u, v});
                continue;
            }
            bool fixed = false;
            for (int attempt = 0; attempt < 500 && !fixed; ++attempt) {
                if (placed[c0].empty()) break;
                size_t pick = rng.below(placed[c0].size());
                auto [x, y] = placed[c0][pick];
                if (x == u || x == v || y == u || y == v) continue;
                for (int orient = 0; orient < 2 && !fixed; ++orient) {
                    int a = orient ? y : x, b = orient ? x : y;
                    if (u != a && v != b && !edges.has(u, a) && !edges.has(v, b)) {
                        edges.remove(x, y);
                        placed[c0][pick] = placed[c0].back();
                        placed[c0].pop_back();
                        edges.add(u, a);
                        edges.add(v, b);
                        placed[c0].push_back({u, a});
                        placed[c0].push_back({v, b});
                        fixed = true;
                    }
                }
            }
            // A node already adjacent to its whole community leaves a
            // non-graphical residual no swap can place; drop the pair and
            // accept the slightly lower realized degree.
            (void)fixed;
        }
    }

    // External configuration model: global matching that rejects
    // same-community pairs, same bounded rewiring, same swap repair.
    std::vector<std::pair<int, int>> ext_placed;
    {
        std::vector<int> stubs;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < d_ext[i]; ++k) stubs.push_back(i);
        for (int round = 0; round < kRewireRounds && !stubs.empty(); ++round) {
            rng.shuffle(stubs);
            std::vector<int> next;
            for (size_t t = 0; t + 1 < stubs.size(); t += 2) {
                int u = stubs[t], v = stubs[t + 1];
                if (comm[u] != comm[v] && edges.add(u, v)) ext_placed.push_back({u, v});
                else {
                    next.push_back(u);
                    next.push_back(v);
                }
            }
            stubs = std::move(next);
        }
        for (size_t t = 0; t + 1 < stubs.size(); t += 2) {
            int u = stubs[t], v = stubs[t + 1];
            if (comm[u] != comm[v] && edges.add(u, v)) {
                ext_placed.push_back({u, v});
                continue;
            }
            bool fixed = false;
            for (int attempt = 0; attempt < 500 && !fixed; ++attempt) {
                if (ext_placed.empty()) break;
                size_t pick = rng.below(ext_placed.size());
                auto [x, y] = ext_placed[pick];
                if (x == u || x == v || y == u || y == v) continue;
                for (int orient = 0; orient < 2 && !fixed; ++orient) {
                    int a = orient ? y : x, b = orient ? x : y;
                    if (comm[u] != comm[a] && comm[v] != comm[b] && !edges.has(u, a) &&
                        !edges.has(v, b)) {
                        edges.remove(x, y);
                        ext_placed[pick] = ext_placed.back();
                        ext_placed.pop_back();
                        edges.add(u, a);
                        edges.add(v, b);
                        ext_placed.push_back({u, a});
                        ext_placed.push_back({v, b});
                        fixed = true;
                    }
                }
            }
            // Same policy as the internal phase: unplaceable residual stubs
            // are dropped rather than failing the instance.
            (void)fixed;
        }
    }

    PlantedInstance inst;
    inst.graph.kind = GraphKind::undirected;
    inst.graph.n = n;
    inst.labels = comm;
    inst.communities = c_count;
    for (int c0 = 0; c0 < c_count; ++c0)
        for (auto [u, v] : placed[c0]) inst.graph.edges.push_back({u, v, 1.0});
    for (auto [u, v] : ext_placed) inst.graph.edges.push_back({u, v, 1.0});
    return inst;
}

double cross_edge_fraction(const Graph& g, const std::vector<int>& labels) {
    double cross = 0.0, total = 0.0;
    for (const auto& e : g.edges) {
        total += e.w;
        if (labels[e.u] != labels[e.v]) cross += e.w;
    }
    return total > 0 ? cross / total : 0.0;
}

double mean_degree(const Graph& g) {
    double total = 0.0;
    for (const auto& e : g.edges) total += 2.0 * e.w;
    return g.n > 0 ? total / g.n : 0.0;
}

} // namespace blockfactor
