#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recovap/errors.hpp"
#include "recovap/instance.hpp"

namespace recovap {

// Graph vertices for decompositions: u_i -> i, v_j -> n + j (0-based).
inline int left_vertex(int i) { return i; }
inline int right_vertex(int j, int n) { return n + j; }

// A rooted tree decomposition of the instance graph.
struct TreeDecomposition {
    struct Node {
        std::vector<int> bag;       // sorted vertex ids
        std::vector<int> children;  // node ids
        int parent = -1;
    };
    std::vector<Node> nodes;
    int root = -1;

    int width() const;
};

// Checks the two decomposition invariants (edge coverage and connected
// occupancy) against the instance graph; returns a diagnostic or empty.
std::string check_tree_decomposition(const Instance& inst, const TreeDecomposition& td);

// Greedy elimination-order decompositions. No width optimality promise;
// both results pass the validity checker.
TreeDecomposition min_fill_decomposition(const Instance& inst);
TreeDecomposition min_degree_decomposition(const Instance& inst);

struct NiceTreeDecomposition {
    enum class Kind { Leaf, Introduce, Forget, Join };
    struct Node {
        Kind kind = Kind::Leaf;
        std::vector<int> bag;  // sorted
        int vertex = -1;       // the introduced/forgotten vertex
        int child1 = -1, child2 = -1;
    };
    std::vector<Node> nodes;  // topologically ordered: children precede parents
    int root = -1;            // empty bag

    int width() const;
};

// Expands a decomposition into leaf/introduce/forget/join form with empty
// leaf and root bags. Throws on an invalid input decomposition.
NiceTreeDecomposition make_nice(const Instance& inst, const TreeDecomposition& td);

std::string check_nice_decomposition(const Instance& inst, const NiceTreeDecomposition& ntd);

// Instrumentation for the join-node counter identity and single-charge cost
// accounting; invoked for every join combination actually applied.
struct TwJoinRecord {
    int k1 = 0, k2 = 0;       // child counters
    int k_out = 0;            // parent counter
    int shared_bag_pairs = 0; // |I|: bag edges committed in both matchings
};

struct TwDpOptions {
    // Table entry guard across all nodes (states are 2^{O(w log w)}).
    std::uint64_t max_states = 30'000'000;
    // Saturation cap for the intersection counter; -1 means cap at k.
    // Instrumented runs may set it to n so the counter never saturates.
    int counter_cap = -1;
    std::function<void(const TwJoinRecord&)> join_observer;
};

struct TwDpResult {
    SolutionPair pair;
};

// Exact solver by dynamic programming over the nice tree decomposition.
// States are preliminary matchings for M1 and M2 over the current bag
// (vertex waiting / matched below / committed to a bag edge) plus a
// saturating intersection counter. Witnesses are rebuilt via back-pointers.
std::optional<TwDpResult> tw_dp_solve(const Instance& inst, const NiceTreeDecomposition& ntd,
                                      const TwDpOptions& opt = {});

// Convenience: min-fill decomposition, make nice, solve.
std::optional<TwDpResult> tw_dp_solve(const Instance& inst, const TwDpOptions& opt = {});

}  // namespace recovap
