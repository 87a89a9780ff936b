#include "recovap/xp.hpp"

#include <algorithm>

#include "recovap/assignment.hpp"

namespace recovap {

namespace {

struct Guard {
    std::uint64_t nodes = 0;
    std::uint64_t budget;
    explicit Guard(std::uint64_t b) : budget(b) {}
    void tick() {
        if (++nodes > budget)
            throw GuardExceeded("xp solver exceeded its enumeration budget; "
                                "the parameter is too large for this instance");
    }
};

void keep_better(std::optional<SolutionPair>& best, SolutionPair cand) {
    if (!best || cand.cost < best->cost) best = std::move(cand);
}

}  // namespace

std::optional<SolutionPair> xp_solve_k(const Instance& inst, XpStats* stats, const XpOptions& opt) {
    const int n = inst.n();
    const int k = inst.k();
    Guard guard(opt.node_budget);

    // Candidate intersection edges need both stage costs finite.
    std::vector<int> cand;
    for (std::size_t t = 0; t < inst.edges().size(); ++t) {
        const Edge& e = inst.edges()[t];
        if (e.c1.is_finite() && e.c2.is_finite()) cand.push_back(static_cast<int>(t));
    }

    ApProblem ap1 = ApProblem::from_instance_c1(inst);
    ApProblem ap2 = ApProblem::from_instance_c2(inst);

    std::optional<SolutionPair> best;
    std::vector<char> row_used(n, 0), col_used(n, 0);
    std::vector<std::pair<int, int>> chosen;
    std::uint64_t candidates = 0;

    // Enumerates vertex-disjoint subsets of `cand` of size exactly k, in
    // ascending edge order.
    auto rec = [&](auto&& self, std::size_t from, int need) -> void {
        guard.tick();
        if (need == 0) {
            ++candidates;
            auto r1 = solve_ap_with_forced(ap1, chosen);
            if (!r1) return;
            auto r2 = solve_ap_with_forced(ap2, chosen);
            if (!r2) return;
            keep_better(best, SolutionPair::make(inst, r1->matching, r2->matching));
            return;
        }
        for (std::size_t t = from; t + need <= cand.size() + 0u && t < cand.size(); ++t) {
            const Edge& e = inst.edges()[cand[t]];
            if (row_used[e.i] || col_used[e.j]) continue;
            row_used[e.i] = col_used[e.j] = 1;
            chosen.push_back({e.i, e.j});
            self(self, t + 1, need - 1);
            chosen.pop_back();
            row_used[e.i] = col_used[e.j] = 0;
        }
    };
    rec(rec, 0, k);

    if (stats) {
        stats->candidates = candidates;
        stats->nodes = guard.nodes;
    }
    return best;
}

std::optional<SolutionPair> xp_solve_kprime(const Instance& inst, XpStats* stats,
                                            const XpOptions& opt) {
    const int n = inst.n();
    const int k = inst.k();
    Guard guard(opt.node_budget);

    // Residual completions use edges both matchings can share.
    ApProblem common = ApProblem::from_instance_sum(inst);

    std::vector<int> edges1, edges2;  // finite c1 / finite c2 edge ids
    for (std::size_t t = 0; t < inst.edges().size(); ++t) {
        const Edge& e = inst.edges()[t];
        if (e.c1.is_finite()) edges1.push_back(static_cast<int>(t));
        if (e.c2.is_finite()) edges2.push_back(static_cast<int>(t));
    }

    std::optional<SolutionPair> best;
    std::uint64_t candidates = 0;

    std::vector<char> row_used(n, 0), col_used(n, 0);
    std::vector<std::pair<int, int>> d1;

    // Adjacency over finite-c2 edges for building D2 on D1's vertex sets.
    std::vector<std::vector<int>> adj2(n);
    for (int t : edges2) adj2[inst.edges()[t].i].push_back(inst.edges()[t].j);

    auto complete = [&](const std::vector<std::pair<int, int>>& d2) {
        ++candidates;
        ApProblem sub;
        for (int i = 0; i < n; ++i)
            if (!row_used[i]) sub.left_ids.push_back(i);
        for (int j = 0; j < n; ++j)
            if (!col_used[j]) sub.right_ids.push_back(j);
        sub.cost.assign(sub.left_ids.size(), std::vector<Cost>(sub.right_ids.size()));
        for (std::size_t a = 0; a < sub.left_ids.size(); ++a)
            for (std::size_t b = 0; b < sub.right_ids.size(); ++b)
                sub.cost[a][b] = common.cost[sub.left_ids[a]][sub.right_ids[b]];
        auto rest = solve_ap(sub);
        if (!rest) return;
        std::vector<std::pair<int, int>> m1_pairs = d1, m2_pairs = d2;
        for (auto& pr : rest->matching.pairs()) {
            m1_pairs.push_back(pr);
            m2_pairs.push_back(pr);
        }
        keep_better(best, SolutionPair::make(inst, Matching(std::move(m1_pairs)),
                                             Matching(std::move(m2_pairs))));
    };

    // D2: left vertices of D1 in ascending order, each re-matched within
    // D1's right vertex set, avoiding the D1 edge on that vertex.
    std::vector<int> d1_left, d1_col_of;  // d1_col_of indexed per d1_left position
    std::vector<char> d2_col_used(n, 0);
    std::vector<std::pair<int, int>> d2;
    auto rec2 = [&](auto&& self, std::size_t pos) -> void {
        guard.tick();
        if (pos == d1_left.size()) {
            complete(d2);
            return;
        }
        int i = d1_left[pos];
        for (int j : adj2[i]) {
            if (!col_used[j] || d2_col_used[j]) continue;  // must lie in D1's right set, unused
            if (j == d1_col_of[pos]) continue;             // edge-disjointness from D1
            d2_col_used[j] = 1;
            d2.push_back({i, j});
            self(self, pos + 1);
            d2.pop_back();
            d2_col_used[j] = 0;
        }
    };

    // D1: vertex-disjoint subsets of finite-c1 edges of size d, ascending.
    auto rec1 = [&](auto&& self, std::size_t from, int need) -> void {
        guard.tick();
        if (need == 0) {
            d1_left.clear();
            d1_col_of.clear();
            for (auto& [i, j] : d1) {
                d1_left.push_back(i);
                d1_col_of.push_back(j);
            }
            rec2(rec2, 0);
            return;
        }
        for (std::size_t t = from; t < edges1.size(); ++t) {
            const Edge& e = inst.edges()[edges1[t]];
            if (row_used[e.i] || col_used[e.j]) continue;
            row_used[e.i] = col_used[e.j] = 1;
            d1.push_back({e.i, e.j});
            self(self, t + 1, need - 1);
            d1.pop_back();
            row_used[e.i] = col_used[e.j] = 0;
        }
    };

    for (int d = 0; d <= n - k; ++d) rec1(rec1, 0, d);

    if (stats) {
        stats->candidates = candidates;
        stats->nodes = guard.nodes;
    }
    return best;
}

}  // namespace recovap
