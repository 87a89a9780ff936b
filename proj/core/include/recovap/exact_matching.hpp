#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace recovap {

// Red-blue exact matching instance: find a perfect matching with exactly k
// red edges. Sides may have different sizes while reductions manipulate the
// graph, but a perfect matching requires them equal.
struct ExactMatchingInstance {
    int n_left = 0;
    int n_right = 0;
    struct EmEdge {
        int i = 0;  // left index
        int j = 0;  // right index
        bool red = false;
        std::int64_t cost = 0;  // used only when has_costs
    };
    std::vector<EmEdge> edges;
    bool has_costs = false;
    int k = 0;

    bool balanced() const { return n_left == n_right; }
    int degree_left(int i) const;
    int degree_right(int j) const;
    std::size_t red_count() const;
    bool red_is_matching() const;
    std::int64_t cost_of(const std::vector<std::pair<int, int>>& pairs) const;
};

}  // namespace recovap
