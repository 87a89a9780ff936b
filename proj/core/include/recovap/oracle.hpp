#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "recovap/exact_matching.hpp"
#include "recovap/instance.hpp"

namespace recovap {

// Raised when an exhaustive routine would exceed its size guard. Oracle
// misuse should fail loudly, not silently truncate.
struct OracleBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleLimits {
    // Max side size unless overridden; RECOVAP_ORACLE_LIMIT raises it too.
    int max_n = 10;
    // Backtracking node budget for a single enumeration.
    std::uint64_t max_nodes = 200'000'000;

    static OracleLimits from_env();
};

// Yields every perfect matching of the instance graph exactly once, by
// backtracking over left vertices in index order with remaining-degree
// pruning. The callback returns false to stop early.
void enumerate_perfect_matchings(const Instance& inst,
                                 const std::function<bool(const Matching&)>& cb,
                                 const OracleLimits& limits = OracleLimits::from_env());

std::vector<Matching> all_perfect_matchings(const Instance& inst,
                                            const OracleLimits& limits = OracleLimits::from_env());

// Global optimum over all ordered pairs of perfect matchings with
// intersection >= inst.k() and finite stage costs.
std::optional<SolutionPair> brute_force_recovap(
    const Instance& inst, const OracleLimits& limits = OracleLimits::from_env());

// One enumeration pass answering every k at once: entry [k] is the optimum
// with intersection >= k, or nullopt.
std::vector<std::optional<SolutionPair>> brute_force_recovap_sweep(
    const Instance& inst, const OracleLimits& limits = OracleLimits::from_env());

// Optimum second-stage matching for a frozen M1.
struct SecondStageResult {
    Matching m2;
    Cost cost;
};
std::optional<SecondStageResult> brute_force_2s(
    const Instance& inst, const Matching& m1,
    const OracleLimits& limits = OracleLimits::from_env());

// Some perfect matching with exactly g.k red edges, or nullopt. When
// minimize_cost is set and costs are present, returns a cheapest one.
std::optional<Matching> brute_force_exact_matching(
    const ExactMatchingInstance& g, bool minimize_cost = false,
    const OracleLimits& limits = OracleLimits::from_env());

}  // namespace recovap
