#include "recovap/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace recovap {

ApProblem ApProblem::from_instance_c1(const Instance& inst) {
    ApProblem p;
    p.left_ids.resize(inst.n());
    p.right_ids.resize(inst.n());
    for (int i = 0; i < inst.n(); ++i) p.left_ids[i] = p.right_ids[i] = i;
    p.cost.assign(inst.n(), std::vector<Cost>(inst.n(), Cost::inf()));
    for (const Edge& e : inst.edges()) p.cost[e.i][e.j] = e.c1;
    return p;
}

ApProblem ApProblem::from_instance_c2(const Instance& inst) {
    ApProblem p = from_instance_c1(inst);
    for (auto& row : p.cost) std::fill(row.begin(), row.end(), Cost::inf());
    for (const Edge& e : inst.edges()) p.cost[e.i][e.j] = e.c2;
    return p;
}

ApProblem ApProblem::from_instance_sum(const Instance& inst) {
    ApProblem p = from_instance_c1(inst);
    for (auto& row : p.cost) std::fill(row.begin(), row.end(), Cost::inf());
    for (const Edge& e : inst.edges())
        if (e.c1.is_finite() && e.c2.is_finite()) p.cost[e.i][e.j] = e.c1 + e.c2;
    return p;
}

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

}  // namespace

std::optional<ApResult> solve_ap(const ApProblem& p) {
    const int n = static_cast<int>(p.left_ids.size());
    if (static_cast<int>(p.right_ids.size()) != n)
        throw std::invalid_argument("solve_ap: side sizes differ");
    if (n == 0) return ApResult{Matching{}, Cost(0)};

    // Shift all finite costs to be nonnegative; the potential invariant
    // u[i] + v[j] <= a[i][j] starts from zero potentials.
    std::int64_t shift = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (p.cost[a][b].is_finite()) shift = std::min(shift, p.cost[a][b].value());
    shift = -shift;

    // Columns are 1-based with a virtual column 0; match_of[j] is the row
    // currently assigned to column j. Equal path lengths resolve to the
    // smallest column index so the result is reproducible.
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> match_of(n + 1, 0), way(n + 1, 0);
    std::vector<std::int64_t> minv(n + 1);
    std::vector<char> used(n + 1);

    for (int row = 1; row <= n; ++row) {
        match_of[0] = row;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kUnreachable);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = match_of[j0], j1 = -1;
            std::int64_t delta = kUnreachable;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const Cost& c = p.cost[i0 - 1][j - 1];
                if (c.is_finite()) {
                    std::int64_t cur = c.value() + shift - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 == -1) return std::nullopt;  // no augmenting path of finite cost
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_of[j0] != 0);
        do {
            int j1 = way[j0];
            match_of[j0] = match_of[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<std::pair<int, int>> pairs;
    Cost total = 0;
    for (int j = 1; j <= n; ++j) {
        int a = match_of[j] - 1, b = j - 1;
        if (p.cost[a][b].is_inf()) return std::nullopt;
        total += p.cost[a][b];
        pairs.push_back({p.left_ids[a], p.right_ids[b]});
    }
    return ApResult{Matching(std::move(pairs)), total};
}

std::optional<ApResult> solve_ap_with_forced(const ApProblem& p,
                                             const std::vector<std::pair<int, int>>& forced) {
    const int n = static_cast<int>(p.left_ids.size());
    std::vector<int> left_pos(n, -1), right_pos(n, -1);
    // Map original ids back to positions.
    std::vector<int> left_of, right_of;
    {
        int max_id = -1;
        for (int id : p.left_ids) max_id = std::max(max_id, id);
        for (int id : p.right_ids) max_id = std::max(max_id, id);
        left_of.assign(max_id + 1, -1);
        right_of.assign(max_id + 1, -1);
        for (int a = 0; a < n; ++a) left_of[p.left_ids[a]] = a;
        for (int b = 0; b < n; ++b) right_of[p.right_ids[b]] = b;
    }

    std::vector<char> row_used(n, 0), col_used(n, 0);
    Cost forced_cost = 0;
    std::vector<std::pair<int, int>> pairs;
    for (auto& [li, rj] : forced) {
        if (li < 0 || li >= static_cast<int>(left_of.size()) || left_of[li] < 0 ||
            rj < 0 || rj >= static_cast<int>(right_of.size()) || right_of[rj] < 0)
            throw std::invalid_argument("solve_ap_with_forced: forced edge outside problem");
        int a = left_of[li], b = right_of[rj];
        if (row_used[a] || col_used[b])
            throw std::invalid_argument("solve_ap_with_forced: forced edges share a vertex");
        row_used[a] = col_used[b] = 1;
        if (p.cost[a][b].is_inf()) return std::nullopt;
        forced_cost += p.cost[a][b];
        pairs.push_back({li, rj});
    }

    ApProblem sub;
    for (int a = 0; a < n; ++a)
        if (!row_used[a]) sub.left_ids.push_back(p.left_ids[a]);
    for (int b = 0; b < n; ++b)
        if (!col_used[b]) sub.right_ids.push_back(p.right_ids[b]);
    sub.cost.assign(sub.left_ids.size(), std::vector<Cost>(sub.right_ids.size(), Cost::inf()));
    {
        int ar = 0;
        for (int a = 0; a < n; ++a) {
            if (row_used[a]) continue;
            int bc = 0;
            for (int b = 0; b < n; ++b) {
                if (col_used[b]) continue;
                sub.cost[ar][bc] = p.cost[a][b];
                ++bc;
            }
            ++ar;
        }
    }

    auto rest = solve_ap(sub);
    if (!rest) return std::nullopt;
    for (auto& pr : rest->matching.pairs()) pairs.push_back(pr);
    return ApResult{Matching(std::move(pairs)), forced_cost + rest->cost};
}

}  // namespace recovap
