#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recovap/cost.hpp"

namespace recovap {

// One edge {u_i, v_j} with its two stage costs. Indices are 0-based
// throughout the library; the text formats are 1-based.
struct Edge {
    int i = 0;
    int j = 0;
    Cost c1;
    Cost c2;
};

// Bipartite instance on n+n vertices with an intersection lower bound k.
// An absent edge models cost +inf on both stages; an edge with both costs
// INF is rejected (delete it instead).
class Instance {
public:
    Instance() = default;
    Instance(int n, std::vector<Edge> edges, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // -1 when the pair (i, j) is not an edge.
    int edge_index(int i, int j) const;
    bool has_edge(int i, int j) const { return edge_index(i, j) >= 0; }
    Cost cost1(int i, int j) const;  // INF when absent
    Cost cost2(int i, int j) const;

    // Neighbours of u_i / v_j, as indices into edges().
    const std::vector<int>& left_adj(int i) const { return left_adj_[i]; }
    const std::vector<int>& right_adj(int j) const { return right_adj_[j]; }

    Instance with_k(int k) const { return Instance(n_, edges_, k); }

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> left_adj_, right_adj_;
    // Dense index for small n, hash-free: row-major (i * n + j) -> edge id.
    std::vector<int> dense_index_;
    bool use_dense_ = true;
    int lookup_slow(int i, int j) const;
};

// A (partial) matching: set of (i, j) pairs, kept sorted by i.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<std::pair<int, int>> pairs);

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    bool is_perfect(int n) const { return static_cast<int>(pairs_.size()) == n; }
    bool contains(int i, int j) const;

    // Column matched to u_i, or -1.
    int col_of(int i, int n) const;

    friend bool operator==(const Matching& a, const Matching& b) { return a.pairs_ == b.pairs_; }

private:
    std::vector<std::pair<int, int>> pairs_;
};

int intersection_size(const Matching& a, const Matching& b);

Cost matching_cost1(const Instance& inst, const Matching& m);
Cost matching_cost2(const Instance& inst, const Matching& m);

// A candidate solution (M1, M2) with its cached objective and intersection.
struct SolutionPair {
    Matching m1;
    Matching m2;
    Cost cost;         // c1(M1) + c2(M2); INF when some matched edge is missing/INF
    int intersection;  // |M1 ∩ M2|

    static SolutionPair make(const Instance& inst, Matching m1, Matching m2);
};

struct ValidationReport {
    bool feasible = false;
    Cost cost;
    int intersection = 0;
    std::string first_violation;  // empty when feasible
};

// Full feasibility check: index ranges, matching shape, perfectness over
// existing edges, intersection >= k, and finite stage costs. Never throws
// on malformed input; the report carries the first violation found.
ValidationReport validate_solution(const Instance& inst, const SolutionPair& pair);

// One component of the union of two perfect matchings.
struct AlternatingCycle {
    enum class Kind { TwoCycle, LongCycle };
    Kind kind;
    // TwoCycle: the single shared edge. LongCycle: the cyclic edge sequence,
    // starting with an M1 edge and strictly alternating M1/M2.
    std::vector<std::pair<int, int>> edges;
    int length() const { return kind == Kind::TwoCycle ? 2 : static_cast<int>(edges.size()); }
};

// Decomposes M1 ∪ M2 into alternating cycles. Both matchings must be
// perfect on n vertices per side.
std::vector<AlternatingCycle> cycle_decomposition(const Matching& m1, const Matching& m2, int n);

// Interval-uncertainty representation of the robust problem: second-stage
// cost of edge e ranges over [base(e), base(e) + deviation(e)].
struct IntervalUncertainty {
    int n = 0;
    // Parallel arrays over the edge list.
    struct UEdge {
        int i = 0, j = 0;
        std::int64_t first_stage = 0;  // c1
        std::int64_t base = 0;         // lower endpoint of the second-stage interval
        std::int64_t deviation = 0;    // interval width, >= 0
    };
    std::vector<UEdge> edges;
    int k_prime = 0;  // recoverability bound: M2 may drop at most k' edges of M1
};

// Worst-case scenario mapping: every second-stage cost at its upper
// endpoint, recoverability bound translated to the intersection bound
// k = n - k'.
Instance worst_case_instance(const IntervalUncertainty& u);

}  // namespace recovap
