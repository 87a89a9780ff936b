#include "recovap/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "recovap/rng.hpp"

namespace recovap {

Instance random_instance(int n, double density, int k, std::uint64_t seed, std::int64_t cost_lo,
                         std::int64_t cost_hi) {
    if (n < 1) throw std::invalid_argument("random_instance: n must be >= 1");
    if (density < 0 || density > 1) throw std::invalid_argument("random_instance: density in [0,1]");
    Rng rng(seed);
    std::uint64_t threshold = static_cast<std::uint64_t>(density * 1000000.0 + 0.5);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool present = rng.next_bool(threshold, 1000000);
            std::int64_t c1 = rng.next_int(cost_lo, cost_hi);
            std::int64_t c2 = rng.next_int(cost_lo, cost_hi);
            if (present) edges.push_back({i, j, Cost(c1), Cost(c2)});
        }
    return Instance(n, std::move(edges), k);
}

Instance random_monge_instance(int n, int k, std::uint64_t seed) {
    CostMatrixPair p;
    p.n = n;
    p.k = k;
    p.a = generate_monge(n, seed);
    p.b = generate_anti_monge(n, seed ^ 0x5bd1e995u);
    return p.to_instance();
}

ExactMatchingInstance random_exact_instance(int n, double density, double red_prob, int k,
                                            bool with_costs, std::int64_t cost_hi,
                                            std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_exact_instance: n must be >= 1");
    Rng rng(seed);
    std::uint64_t dthr = static_cast<std::uint64_t>(density * 1000000.0 + 0.5);
    std::uint64_t rthr = static_cast<std::uint64_t>(red_prob * 1000000.0 + 0.5);
    ExactMatchingInstance g;
    g.n_left = g.n_right = n;
    g.k = k;
    g.has_costs = with_costs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool present = rng.next_bool(dthr, 1000000);
            bool red = rng.next_bool(rthr, 1000000);
            std::int64_t c = rng.next_int(0, cost_hi);
            if (present) g.edges.push_back({i, j, red, with_costs ? c : 0});
        }
    return g;
}

GridTilingInstance random_grid_tiling(int ell, int nvals, std::uint64_t seed, int min_tuples,
                                      int max_tuples) {
    if (ell < 1 || nvals < 1) throw std::invalid_argument("random_grid_tiling: bad dimensions");
    Rng rng(seed);
    GridTilingInstance gt = GridTilingInstance::make(ell, nvals);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) {
            int count = static_cast<int>(rng.next_int(min_tuples, max_tuples));
            count = std::min<int>(count, nvals * nvals);
            std::set<std::pair<int, int>> chosen;
            while (static_cast<int>(chosen.size()) < count) {
                int a = static_cast<int>(rng.next_int(0, nvals - 1));
                int b = static_cast<int>(rng.next_int(0, nvals - 1));
                chosen.insert({a, b});
            }
            gt.cells[i][j].assign(chosen.begin(), chosen.end());
        }
    return gt;
}

}  // namespace recovap
