#pragma once

#include <cstdint>

#include "recovap/exact_matching.hpp"
#include "recovap/gadgets.hpp"
#include "recovap/instance.hpp"
#include "recovap/monge.hpp"

namespace recovap {

// Random bipartite instance: each (i, j) edge present with the given
// density, integer costs uniform in [cost_lo, cost_hi].
Instance random_instance(int n, double density, int k, std::uint64_t seed,
                         std::int64_t cost_lo = 0, std::int64_t cost_hi = 20);

// Dense instance with Monge c1 and Anti-Monge c2.
Instance random_monge_instance(int n, int k, std::uint64_t seed);

ExactMatchingInstance random_exact_instance(int n, double density, double red_prob, int k,
                                            bool with_costs, std::int64_t cost_hi,
                                            std::uint64_t seed);

// Random grid tiling: tuple count per cell uniform in
// [min_tuples, max_tuples], distinct tuples.
GridTilingInstance random_grid_tiling(int ell, int nvals, std::uint64_t seed, int min_tuples = 1,
                                      int max_tuples = 3);

}  // namespace recovap
