#pragma once

#include <vector>

#include "recovap/instance.hpp"

namespace recovap::testing {

// Dense instance from explicit cost matrices; -1 encodes an absent entry
// pair, INT64_MIN unused.
inline Instance dense(int n, const std::vector<std::vector<std::int64_t>>& c1,
                      const std::vector<std::vector<std::int64_t>>& c2, int k) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) edges.push_back({i, j, Cost(c1[i][j]), Cost(c2[i][j])});
    return Instance(n, std::move(edges), k);
}

inline Matching m(std::vector<std::pair<int, int>> pairs) { return Matching(std::move(pairs)); }

// The K_{2,2} instance used across the suite: c1 zero on the diagonal,
// c2 zero on the anti-diagonal.
inline Instance k22_opposed(int k) {
    return dense(2, {{0, 5}, {5, 0}}, {{5, 0}, {0, 5}}, k);
}

}  // namespace recovap::testing
