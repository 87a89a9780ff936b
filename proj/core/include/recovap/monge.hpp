#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recovap/instance.hpp"

namespace recovap {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Dense cost pair for the structural solver: a carries c1 (intended Monge),
// b carries c2 (intended Anti-Monge).
struct CostMatrixPair {
    IntMatrix a;
    IntMatrix b;
    int n = 0;
    int k = 0;

    Instance to_instance() const;
    static std::optional<CostMatrixPair> from_instance(const Instance& inst);  // dense+finite only
};

// Witness of a failed Monge/Anti-Monge check: the adjacent quadruple
// (rows i, i+1; columns j, j+1) violating the inequality.
struct MongeViolation {
    int i = 0, j = 0;
    std::int64_t lhs = 0, rhs = 0;
    std::string describe(bool anti) const;
};

// Adjacent-quadruple characterization, O(n^2): a is Monge iff
// a[i][j] + a[i+1][j+1] <= a[i][j+1] + a[i+1][j] for all i, j.
bool is_monge(const IntMatrix& m, MongeViolation* witness = nullptr);
bool is_anti_monge(const IntMatrix& m, MongeViolation* witness = nullptr);

// Full-quadruple definition (all i<k, j<l), O(n^4); kept as an independent
// cross-check of the adjacent condition.
bool is_monge_full(const IntMatrix& m);
bool is_anti_monge_full(const IntMatrix& m);

// Construction a[i][j] = u_i + v_j - P[i][j] with P the 2-D prefix sum of a
// random nonnegative matrix; guaranteed Monge (sign flipped for Anti-Monge).
IntMatrix generate_monge(int n, std::uint64_t seed);
IntMatrix generate_anti_monge(int n, std::uint64_t seed);

// The shape of the structural optimum: nested aligned 4-cycles around a
// central interval matched identically by both matchings.
struct NestedSolutionShape {
    // Outer 4-cycles (i, i, n-1-i, n-1-i) for i = 0..outer_count-1 (0-based).
    int outer_count = 0;
    int inner_lo = 0;  // inclusive
    int inner_hi = 0;  // exclusive
    Matching inner;    // on [inner_lo, inner_hi), identical in M1 and M2
};

struct MongeSolveResult {
    SolutionPair pair;
    NestedSolutionShape shape;
};

// Polynomial solver for Monge c1 / Anti-Monge c2: floor((n-k)/2) outer
// 4-cycles (M1 on the main diagonal, M2 on the anti-diagonal) around a
// minimum-cost inner assignment under c1+c2 shared by both matchings.
// Throws std::invalid_argument when the matrix preconditions fail.
MongeSolveResult solve_monge_antimonge(const CostMatrixPair& p);

}  // namespace recovap
