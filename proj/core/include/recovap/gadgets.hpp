#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recovap/errors.hpp"
#include "recovap/instance.hpp"

namespace recovap {

// Grid tiling: pick a value per row and per column so that every cell
// contains the chosen pair. Values are 0-based internally.
struct GridTilingInstance {
    int ell = 0;
    int nvals = 0;
    // cells[i][j] = sorted distinct (row value, column value) tuples.
    std::vector<std::vector<std::vector<std::pair<int, int>>>> cells;

    static GridTilingInstance make(int ell, int nvals);
    bool cell_contains(int i, int j, int a, int b) const;

    // Renames the occurring values increasingly so that every value in
    // 0..nvals-1 appears in some tuple.
    GridTilingInstance normalized() const;
};

struct GridTilingWitness {
    std::vector<int> rows;  // r_i
    std::vector<int> cols;  // c_j
};

// Exhaustive search over all value assignments; guarded by nvals^(2 ell).
std::optional<GridTilingWitness> solve_grid_tiling(const GridTilingInstance& gt,
                                                   std::uint64_t budget = 50'000'000);

bool check_grid_tiling_witness(const GridTilingInstance& gt, const GridTilingWitness& w);

struct GadgetLayout;  // construction bookkeeping for certificates

// A reduced instance with the index maps needed to move certificates
// across the reduction.
struct GadgetInstance {
    Instance instance;
    int target_k = 0;  // == instance.k()
    bool dual = false;
    // (cell i, cell j, a, b) -> a representative instance edge of that tuple.
    std::map<std::tuple<int, int, int, int>, std::pair<int, int>> tuple_edge_index;
    // (is_column, index, value) -> the selector anchor edge fixing the value.
    std::map<std::tuple<bool, int, int>, std::pair<int, int>> selection_index;
    std::shared_ptr<const GadgetLayout> layout;
};

// Intersection-parameter construction: cost-0 feasible pairs with
// intersection >= ell^2 exist iff the grid tiling instance is solvable.
// Edge costs are drawn from {(0,0), (0,1), (1,0)} on a sparse graph.
GadgetInstance grid_tiling_to_recovap(const GridTilingInstance& gt);

// Recoverability-parameter construction: k = n - 4*ell^2; almost all costs
// are (0,0), with (0,1)/(1,0) only on the tuple gadgets' two 4-cycles.
GadgetInstance grid_tiling_to_recovap_dual(const GridTilingInstance& gt);

// Constructive certificate: a cost-0 feasible pair realizing the witness.
SolutionPair encode_certificate(const GadgetInstance& gadget, const GridTilingWitness& witness);

// Reads the row/column selections out of a cost-0 feasible pair and checks
// them against every cell; throws std::invalid_argument on pairs of
// positive cost or selections violating a cell.
GridTilingWitness decode_certificate(const GadgetInstance& gadget, const SolutionPair& pair);

// Exhaustive zero-cost feasibility: enumerates perfect matchings of the
// c1 = 0 and c2 = 0 subgraphs and scans pairs for intersection >= k.
// Node/pair budgets guard the search; exceeding them throws GuardExceeded.
std::optional<SolutionPair> find_zero_cost_pair(const Instance& inst,
                                                std::uint64_t node_budget = 50'000'000,
                                                std::uint64_t pair_budget = 200'000'000);

}  // namespace recovap
