#pragma once
#include "matrix.hpp"
#include "models.hpp"
#include <cstdint>
#include <string>
#include <vector>

namespace blockfactor {

enum class Algorithm { kl, lse };

struct SolverConfig {
    int iterations = 500;
    uint64_t seed = 0;
    double epsilon = 1e-12;     // division floor
    Algorithm algorithm = Algorithm::kl;
    int communities = 2;
    int restarts = 3;           // independent seeded inits, best final objective wins
    double sigma = 1.0;         // scale of the normal edge-weight model
    double min_rel_change = 0.0; // >0 enables early stop on relative objective change
};

struct FitResult {
    Factors factors;            // G row-normalized on return
    std::vector<int> labels;
    std::vector<double> trace;  // objective after each iteration
    int best_restart = 0;
};

// G rows drawn uniform on (0,1) then normalized to sum 1. W is a fixed
// assortative seed (0.45 diagonal, 0.05 elsewhere): a uniform random W makes
// the multiplicative updates collapse into a degenerate mean-field fixed
// point on most graph instances, while any assortative contrast escapes it
// (see README).
Factors init_factors(int n, int c, uint64_t seed);

// One full multiplicative-update iteration. Both steps update G from the
// current ratio A/(GWG^T) and then W from the refreshed ratio. Neither step
// renormalizes G: the scale freedom is what keeps the update a descent map,
// and fit() restores row sums once at the end (see README).
Factors mu_step_kl(const Matrix& a, const Factors& f, double epsilon);
Factors mu_step_lse(const Matrix& a, const Factors& f, double epsilon);

// Runs cfg.restarts seeded inits for cfg.iterations each, keeps the restart
// with the lowest final objective, row-normalizes its G and discretizes.
// trace holds the winner's objective after every iteration. Throws on
// non-square or negative input.
FitResult fit(const Matrix& a, const SolverConfig& cfg);

// Per-row argmax, ties toward the lowest community index.
std::vector<int> discretize(const Matrix& g);

Algorithm algorithm_from_name(const std::string& name);

} // namespace blockfactor
