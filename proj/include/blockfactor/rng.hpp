#pragma once
#include <cstdint>
#include <utility>
#include <vector>

namespace blockfactor {

// splitmix64 finalizer. Used both to expand seeds into xoshiro state and to
// derive independent child seeds (per trial, per restart) from a base seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic seed derivation: hash `key` into `seed`'s splitmix stream.
// mix_seed(mix_seed(base, param_index), trial) gives every task its own
// stream regardless of execution order.
inline uint64_t mix_seed(uint64_t seed, uint64_t key) {
    uint64_t s = seed + 0x9e3779b97f4a7c15ull * (key + 1);
    return splitmix64(s);
}

// xoshiro256** by Blackman and Vigna, public domain reference construction.
// All randomness in the library flows through this generator; nothing uses
// std::shuffle or std::*_distribution, whose outputs vary across standard
// library implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). Rejection keeps it exactly uniform.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // In-place Fisher-Yates.
    template <typename T> void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

} // namespace blockfactor
