#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "recovap/cost.hpp"
#include "recovap/instance.hpp"

namespace recovap {

// A square assignment problem over explicit index lists. cost(a, b) refers
// to positions in leftIds/rightIds; INF means the edge is absent.
struct ApProblem {
    std::vector<int> left_ids;
    std::vector<int> right_ids;
    std::vector<std::vector<Cost>> cost;  // cost[a][b]

    static ApProblem from_instance_c1(const Instance& inst);
    static ApProblem from_instance_c2(const Instance& inst);
    static ApProblem from_instance_sum(const Instance& inst);  // c1 + c2, INF if either is
};

struct ApResult {
    Matching matching;  // pairs in original id space
    Cost cost;
};

// Minimum-cost perfect matching by shortest augmenting paths with
// potentials, O(n^3). Rows are augmented in order and equal path lengths
// resolve to the smallest column index, so results are reproducible.
// Returns nullopt iff no finite-cost perfect matching exists.
std::optional<ApResult> solve_ap(const ApProblem& p);

// Optimum among perfect matchings containing every forced edge; realized by
// deleting the forced rows/columns and adding their cost. Forced edges must
// be pairwise vertex-disjoint (throws otherwise) and refer to original ids.
std::optional<ApResult> solve_ap_with_forced(const ApProblem& p,
                                             const std::vector<std::pair<int, int>>& forced);

}  // namespace recovap
