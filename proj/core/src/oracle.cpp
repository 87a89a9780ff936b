#include "recovap/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

namespace recovap {

int ExactMatchingInstance::degree_left(int i) const {
    int d = 0;
    for (const auto& e : edges) d += (e.i == i);
    return d;
}

int ExactMatchingInstance::degree_right(int j) const {
    int d = 0;
    for (const auto& e : edges) d += (e.j == j);
    return d;
}

std::size_t ExactMatchingInstance::red_count() const {
    std::size_t c = 0;
    for (const auto& e : edges) c += e.red;
    return c;
}

bool ExactMatchingInstance::red_is_matching() const {
    std::set<int> ls, rs;
    for (const auto& e : edges) {
        if (!e.red) continue;
        if (!ls.insert(e.i).second) return false;
        if (!rs.insert(e.j).second) return false;
    }
    return true;
}

std::int64_t ExactMatchingInstance::cost_of(const std::vector<std::pair<int, int>>& pairs) const {
    std::map<std::pair<int, int>, std::int64_t> by_edge;
    for (const auto& e : edges) by_edge[{e.i, e.j}] = e.cost;
    std::int64_t total = 0;
    for (auto& pr : pairs) total += by_edge.at(pr);
    return total;
}

OracleLimits OracleLimits::from_env() {
    OracleLimits lim;
    if (const char* s = std::getenv("RECOVAP_ORACLE_LIMIT")) {
        int v = std::atoi(s);
        if (v > 0) lim.max_n = v;
    }
    return lim;
}

namespace {

// Enumeration core over an adjacency structure. Rows are matched in index
// order; a row with no remaining candidate prunes the branch immediately.
struct Enumerator {
    int n;
    const std::vector<std::vector<int>>* adj;  // adj[i] = ascending candidate columns
    std::uint64_t nodes = 0;
    std::uint64_t node_budget;
    std::vector<char> col_used;
    std::vector<int> row_to_col;
    const std::function<bool(const std::vector<int>&)>* visit;
    bool stopped = false;

    bool feasible_ahead(int from_row) const {
        for (int i = from_row; i < n; ++i) {
            bool any = false;
            for (int j : (*adj)[i])
                if (!col_used[j]) {
                    any = true;
                    break;
                }
            if (!any) return false;
        }
        return true;
    }

    void run(int row) {
        if (stopped) return;
        if (++nodes > node_budget)
            throw OracleBudgetExceeded("perfect matching enumeration exceeded node budget");
        if (row == n) {
            if (!(*visit)(row_to_col)) stopped = true;
            return;
        }
        if (!feasible_ahead(row)) return;
        for (int j : (*adj)[row]) {
            if (col_used[j]) continue;
            col_used[j] = 1;
            row_to_col[row] = j;
            run(row + 1);
            col_used[j] = 0;
            row_to_col[row] = -1;
            if (stopped) return;
        }
    }
};

void enumerate_over_adj(int n, const std::vector<std::vector<int>>& adj,
                        const std::function<bool(const std::vector<int>&)>& visit,
                        std::uint64_t node_budget) {
    Enumerator e;
    e.n = n;
    e.adj = &adj;
    e.node_budget = node_budget;
    e.col_used.assign(n, 0);
    e.row_to_col.assign(n, -1);
    e.visit = &visit;
    e.run(0);
}

Matching matching_from_perm(const std::vector<int>& row_to_col) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(row_to_col.size());
    for (int i = 0; i < static_cast<int>(row_to_col.size()); ++i) pairs.push_back({i, row_to_col[i]});
    return Matching(std::move(pairs));
}

void check_size_guard(int n, const OracleLimits& limits, const char* what) {
    if (n > limits.max_n)
        throw OracleBudgetExceeded(std::string(what) + ": n = " + std::to_string(n) +
                                   " exceeds oracle limit " + std::to_string(limits.max_n) +
                                   " (raise RECOVAP_ORACLE_LIMIT to override)");
}

// Perfect matchings of the subgraph of edges passing `keep`, as permutations.
std::vector<std::vector<int>> collect_perms(const Instance& inst,
                                            const std::function<bool(const Edge&)>& keep,
                                            const OracleLimits& limits) {
    std::vector<std::vector<int>> adj(inst.n());
    for (const Edge& e : inst.edges())
        if (keep(e)) adj[e.i].push_back(e.j);
    std::vector<std::vector<int>> out;
    enumerate_over_adj(
        inst.n(), adj,
        [&](const std::vector<int>& perm) {
            out.push_back(perm);
            return true;
        },
        limits.max_nodes);
    return out;
}

}  // namespace

void enumerate_perfect_matchings(const Instance& inst,
                                 const std::function<bool(const Matching&)>& cb,
                                 const OracleLimits& limits) {
    check_size_guard(inst.n(), limits, "enumerate_perfect_matchings");
    std::vector<std::vector<int>> adj(inst.n());
    for (const Edge& e : inst.edges()) adj[e.i].push_back(e.j);
    enumerate_over_adj(
        inst.n(), adj, [&](const std::vector<int>& perm) { return cb(matching_from_perm(perm)); },
        limits.max_nodes);
}

std::vector<Matching> all_perfect_matchings(const Instance& inst, const OracleLimits& limits) {
    std::vector<Matching> out;
    enumerate_perfect_matchings(
        inst,
        [&](const Matching& m) {
            out.push_back(m);
            return true;
        },
        limits);
    return out;
}

std::vector<std::optional<SolutionPair>> brute_force_recovap_sweep(const Instance& inst,
                                                                   const OracleLimits& limits) {
    check_size_guard(inst.n(), limits, "brute_force_recovap");
    const int n = inst.n();
    auto perms1 = collect_perms(inst, [](const Edge& e) { return e.c1.is_finite(); }, limits);
    auto perms2 = collect_perms(inst, [](const Edge& e) { return e.c2.is_finite(); }, limits);

    std::vector<std::int64_t> c1(perms1.size()), c2(perms2.size());
    for (std::size_t a = 0; a < perms1.size(); ++a) {
        std::int64_t s = 0;
        for (int i = 0; i < n; ++i) s += inst.cost1(i, perms1[a][i]).value();
        c1[a] = s;
    }
    for (std::size_t b = 0; b < perms2.size(); ++b) {
        std::int64_t s = 0;
        for (int i = 0; i < n; ++i) s += inst.cost2(i, perms2[b][i]).value();
        c2[b] = s;
    }

    // best[t] = cheapest pair with intersection exactly t.
    struct Best {
        std::int64_t cost = 0;
        int a = -1, b = -1;
    };
    std::vector<Best> best(n + 1);
    for (std::size_t a = 0; a < perms1.size(); ++a) {
        for (std::size_t b = 0; b < perms2.size(); ++b) {
            int t = 0;
            for (int i = 0; i < n; ++i) t += perms1[a][i] == perms2[b][i];
            std::int64_t cost = c1[a] + c2[b];
            if (best[t].a == -1 || cost < best[t].cost) best[t] = {cost, (int)a, (int)b};
        }
    }

    // Suffix-min over "intersection >= k".
    std::vector<std::optional<SolutionPair>> result(n + 1);
    Best run;
    for (int t = n; t >= 0; --t) {
        if (best[t].a != -1 && (run.a == -1 || best[t].cost < run.cost)) run = best[t];
        if (run.a != -1)
            result[t] =
                SolutionPair::make(inst, matching_from_perm(perms1[run.a]), matching_from_perm(perms2[run.b]));
    }
    return result;
}

std::optional<SolutionPair> brute_force_recovap(const Instance& inst, const OracleLimits& limits) {
    auto sweep = brute_force_recovap_sweep(inst, limits);
    return sweep[inst.k()];
}

std::optional<SecondStageResult> brute_force_2s(const Instance& inst, const Matching& m1,
                                                const OracleLimits& limits) {
    check_size_guard(inst.n(), limits, "brute_force_2s");
    if (!m1.is_perfect(inst.n()))
        throw std::invalid_argument("brute_force_2s: m1 must be perfect");
    const int n = inst.n();
    std::vector<int> m1_col(n, -1);
    for (auto& [i, j] : m1.pairs()) m1_col[i] = j;

    auto perms2 = collect_perms(inst, [](const Edge& e) { return e.c2.is_finite(); }, limits);
    std::optional<SecondStageResult> best;
    for (auto& perm : perms2) {
        int t = 0;
        std::int64_t cost = 0;
        for (int i = 0; i < n; ++i) {
            t += perm[i] == m1_col[i];
            cost += inst.cost2(i, perm[i]).value();
        }
        if (t < inst.k()) continue;
        if (!best || Cost(cost) < best->cost) best = SecondStageResult{matching_from_perm(perm), Cost(cost)};
    }
    return best;
}

std::optional<Matching> brute_force_exact_matching(const ExactMatchingInstance& g,
                                                   bool minimize_cost,
                                                   const OracleLimits& limits) {
    if (!g.balanced()) return std::nullopt;
    check_size_guard(g.n_left, limits, "brute_force_exact_matching");
    const int n = g.n_left;
    if (n == 0) return g.k == 0 ? std::optional<Matching>(Matching{}) : std::nullopt;

    std::vector<std::vector<int>> adj(n);
    std::map<std::pair<int, int>, std::pair<bool, std::int64_t>> info;  // (red, cost)
    for (const auto& e : g.edges) {
        adj[e.i].push_back(e.j);
        info[{e.i, e.j}] = {e.red, e.cost};
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::optional<Matching> found;
    std::int64_t found_cost = 0;
    enumerate_over_adj(
        n, adj,
        [&](const std::vector<int>& perm) {
            int reds = 0;
            std::int64_t cost = 0;
            for (int i = 0; i < n; ++i) {
                auto& [red, c] = info[{i, perm[i]}];
                reds += red;
                cost += c;
            }
            if (reds != g.k) return true;
            if (!found || (minimize_cost && g.has_costs && cost < found_cost)) {
                found = matching_from_perm(perm);
                found_cost = cost;
            }
            // Without costs the first hit suffices.
            return minimize_cost && g.has_costs;
        },
        limits.max_nodes);
    return found;
}

}  // namespace recovap
