#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "recovap/errors.hpp"
#include "recovap/exact_matching.hpp"
#include "recovap/instance.hpp"

namespace recovap {

// Determinant of the weighted bipartite adjacency matrix as an exact
// polynomial in the red-marker indeterminate: coefficient r is the signed
// sum of 2^{w(M)} over perfect matchings with exactly r red edges.
struct RedPolynomialDeterminant {
    std::vector<mpz_class> coefficients;  // index = red count, size n+1
};

// weights[t] corresponds to g.edges[t].
RedPolynomialDeterminant red_polynomial_determinant(const ExactMatchingInstance& g,
                                                    const std::vector<std::int64_t>& weights);

struct MvvOptions {
    int max_n = 12;
    // Budget on the largest exponent fed to 2^w; guards the bignum sizes.
    std::int64_t max_weight_bits = 1 << 18;
};

struct MvvStats {
    int trials_run = 0;
    int success_trial = -1;                 // first verified trial, -1 if none
    std::vector<bool> trial_success;        // per-trial extraction outcome
};

struct MvvResult {
    // nullopt = NONE: no qualifying matching found; a Monte-Carlo answer
    // with error probability at most 2^-trials.
    std::optional<Matching> matching;
    std::int64_t cost = 0;        // meaningful when matching and g.has_costs
    int trials = 0;
    double error_bound = 0.0;     // 2^-trials, attached to NONE answers
};

// Randomized exact matching: per trial, sample isolation weights, read the
// target coefficient's 2-adic valuation, extract edges by the minor test,
// and verify the result deterministically. Returned matchings are always
// re-verified (perfectness, red count, weight); only NONE is Monte-Carlo.
// With costs present the weight encoding w(e) = cost(e)*K + r(e),
// K = 2mn+1, makes any verified answer a minimum-cost one among matchings
// with exactly k red edges, up to the same Monte-Carlo risk.
MvvResult mvv_exact_matching(const ExactMatchingInstance& g, int trials, std::uint64_t rng_seed,
                             const MvvOptions& opt = {}, MvvStats* stats = nullptr);

struct SecondStageSolveResult {
    std::optional<Matching> m2;
    Cost cost;
    double error_bound = 0.0;  // per-target-r bound attached to INFEASIBLE
    std::string note;
};

// Second-stage solver for a frozen M1: colors M1 red, then asks for perfect
// matchings with exactly r red edges for every r = k..n under cost c2,
// returning the cheapest verified answer. Edges with infinite c2 are
// excluded from the second-stage graph.
SecondStageSolveResult solve_2s(const Instance& inst, const Matching& m1, int trials,
                                std::uint64_t rng_seed, const MvvOptions& opt = {});

// Degree-1 preprocessing: commits the unique edge at every degree-1 vertex,
// decrementing k for committed red edges.
struct PreprocessResult {
    bool infeasible = false;      // k underflow or isolated vertex
    ExactMatchingInstance graph;  // min degree >= 2, or empty
    std::vector<std::pair<int, int>> committed;  // original-index edges
    int committed_red = 0;
};
PreprocessResult preprocess_degree_one(const ExactMatchingInstance& g);

// First gadget step: reduces exact matching to the special case where the
// red set forms a matching. Requires min degree >= 2 (throws otherwise,
// directing to preprocess_degree_one).
ExactMatchingInstance reduce_exact_to_matching_red(const ExactMatchingInstance& g);

// Second gadget step: from a red-matching instance to a second-stage
// instance whose optimum equals k iff the input is a yes-instance. M1 is
// the returned perfect matching R'.
struct ExactToSecondStage {
    Instance instance;
    Matching m1;
};
ExactToSecondStage reduce_exactred_to_2s(const ExactMatchingInstance& g);

}  // namespace recovap
