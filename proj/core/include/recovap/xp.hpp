#pragma once

#include <cstdint>
#include <optional>

#include "recovap/errors.hpp"
#include "recovap/instance.hpp"

namespace recovap {

struct XpStats {
    std::uint64_t candidates = 0;  // completed candidate sets evaluated
    std::uint64_t nodes = 0;       // backtracking nodes visited
};

struct XpOptions {
    std::uint64_t node_budget = 500'000'000;
};

// XP in the intersection parameter k: exhausts all vertex-disjoint edge
// sets S of size exactly k with both costs finite, forcing S into both
// matchings and completing each side with an independent assignment. Any
// feasible pair contains such an S inside its intersection, so the minimum
// over candidates is the optimum.
std::optional<SolutionPair> xp_solve_k(const Instance& inst, XpStats* stats = nullptr,
                                       const XpOptions& opt = {});

// XP in the recoverability parameter k' = n - k: for every difference size
// d = 0..n-k exhausts pairs of edge-disjoint partial matchings (D1, D2) of
// size d covering the same vertex sets on both sides, completing with one
// assignment under c1+c2 on the residual common edges shared by both
// matchings.
std::optional<SolutionPair> xp_solve_kprime(const Instance& inst, XpStats* stats = nullptr,
                                            const XpOptions& opt = {});

}  // namespace recovap
