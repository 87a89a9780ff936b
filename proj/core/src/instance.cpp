#include "recovap/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace recovap {

Instance::Instance(int n, std::vector<Edge> edges, int k) : n_(n), k_(k), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("Instance: n must be >= 1");
    if (k_ < 0 || k_ > n_) throw std::invalid_argument("Instance: k must be in 0..n");
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    for (std::size_t t = 0; t < edges_.size(); ++t) {
        const Edge& e = edges_[t];
        if (e.i < 0 || e.i >= n_ || e.j < 0 || e.j >= n_)
            throw std::invalid_argument("Instance: edge index out of range");
        if (e.c1.is_inf() && e.c2.is_inf())
            throw std::invalid_argument("Instance: edge with both costs INF (delete it instead)");
        if (t > 0 && edges_[t - 1].i == e.i && edges_[t - 1].j == e.j)
            throw std::invalid_argument("Instance: duplicate edge");
    }
    left_adj_.assign(n_, {});
    right_adj_.assign(n_, {});
    use_dense_ = n_ <= 4096;
    if (use_dense_) dense_index_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (std::size_t t = 0; t < edges_.size(); ++t) {
        left_adj_[edges_[t].i].push_back(static_cast<int>(t));
        right_adj_[edges_[t].j].push_back(static_cast<int>(t));
        if (use_dense_)
            dense_index_[static_cast<std::size_t>(edges_[t].i) * n_ + edges_[t].j] =
                static_cast<int>(t);
    }
}

int Instance::lookup_slow(int i, int j) const {
    for (int t : left_adj_[i])
        if (edges_[t].j == j) return t;
    return -1;
}

int Instance::edge_index(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) return -1;
    if (use_dense_) return dense_index_[static_cast<std::size_t>(i) * n_ + j];
    return lookup_slow(i, j);
}

Cost Instance::cost1(int i, int j) const {
    int t = edge_index(i, j);
    return t < 0 ? Cost::inf() : edges_[t].c1;
}

Cost Instance::cost2(int i, int j) const {
    int t = edge_index(i, j);
    return t < 0 ? Cost::inf() : edges_[t].c2;
}

Matching::Matching(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t t = 1; t < pairs_.size(); ++t) {
        if (pairs_[t - 1].first == pairs_[t].first)
            throw std::invalid_argument("Matching: two pairs share a left vertex");
    }
    std::set<int> cols;
    for (auto& [i, j] : pairs_) {
        if (!cols.insert(j).second)
            throw std::invalid_argument("Matching: two pairs share a right vertex");
    }
}

bool Matching::contains(int i, int j) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(i, j));
    return it != pairs_.end() && *it == std::make_pair(i, j);
}

int Matching::col_of(int i, int /*n*/) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(i, -1));
    if (it != pairs_.end() && it->first == i) return it->second;
    return -1;
}

int intersection_size(const Matching& a, const Matching& b) {
    int count = 0;
    auto ia = a.pairs().begin(), ib = b.pairs().begin();
    while (ia != a.pairs().end() && ib != b.pairs().end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            ++count, ++ia, ++ib;
    }
    return count;
}

Cost matching_cost1(const Instance& inst, const Matching& m) {
    Cost total = 0;
    for (auto& [i, j] : m.pairs()) total += inst.cost1(i, j);
    return total;
}

Cost matching_cost2(const Instance& inst, const Matching& m) {
    Cost total = 0;
    for (auto& [i, j] : m.pairs()) total += inst.cost2(i, j);
    return total;
}

SolutionPair SolutionPair::make(const Instance& inst, Matching m1, Matching m2) {
    SolutionPair p;
    p.cost = matching_cost1(inst, m1) + matching_cost2(inst, m2);
    p.intersection = intersection_size(m1, m2);
    p.m1 = std::move(m1);
    p.m2 = std::move(m2);
    return p;
}

namespace {

// Checks one matching; fills `violation` with the first problem found.
bool check_matching(const Instance& inst, const Matching& m, const char* name, bool first_stage,
                    std::string& violation) {
    int n = inst.n();
    std::vector<int> row_deg(n, 0), col_deg(n, 0);
    for (auto& [i, j] : m.pairs()) {
        if (i < 0 || i >= n || j < 0 || j >= n) {
            violation = std::string(name) + " edge (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "): index out of range";
            return false;
        }
        if (!inst.has_edge(i, j)) {
            violation = std::string(name) + " edge (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") is not an instance edge";
            return false;
        }
        Cost c = first_stage ? inst.cost1(i, j) : inst.cost2(i, j);
        if (c.is_inf()) {
            violation = std::string(name) + " edge (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") has infinite " +
                        (first_stage ? "c1" : "c2") + " cost";
            return false;
        }
        row_deg[i]++;
        col_deg[j]++;
    }
    for (int i = 0; i < n; ++i) {
        if (row_deg[i] == 0) {
            violation = "u_" + std::to_string(i + 1) + " unmatched in " + name;
            return false;
        }
        if (row_deg[i] > 1) {
            violation = "u_" + std::to_string(i + 1) + " matched twice in " + name;
            return false;
        }
    }
    for (int j = 0; j < n; ++j) {
        if (col_deg[j] == 0) {
            violation = "v_" + std::to_string(j + 1) + " unmatched in " + name;
            return false;
        }
        if (col_deg[j] > 1) {
            violation = "v_" + std::to_string(j + 1) + " matched twice in " + name;
            return false;
        }
    }
    return true;
}

}  // namespace

ValidationReport validate_solution(const Instance& inst, const SolutionPair& pair) {
    ValidationReport rep;
    rep.cost = matching_cost1(inst, pair.m1) + matching_cost2(inst, pair.m2);
    rep.intersection = intersection_size(pair.m1, pair.m2);
    if (!check_matching(inst, pair.m1, "m1", true, rep.first_violation)) return rep;
    if (!check_matching(inst, pair.m2, "m2", false, rep.first_violation)) return rep;
    if (rep.intersection < inst.k()) {
        rep.first_violation = "intersection " + std::to_string(rep.intersection) + " < k = " +
                              std::to_string(inst.k());
        return rep;
    }
    if (rep.cost.is_inf()) {
        rep.first_violation = "total cost is infinite";
        return rep;
    }
    rep.feasible = true;
    return rep;
}

std::vector<AlternatingCycle> cycle_decomposition(const Matching& m1, const Matching& m2, int n) {
    if (!m1.is_perfect(n) || !m2.is_perfect(n))
        throw std::invalid_argument("cycle_decomposition: matchings must be perfect");
    std::vector<int> to1(n, -1), to2(n, -1), from2(n, -1);
    for (auto& [i, j] : m1.pairs()) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::invalid_argument("cycle_decomposition: index out of range");
        to1[i] = j;
    }
    for (auto& [i, j] : m2.pairs()) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::invalid_argument("cycle_decomposition: index out of range");
        to2[i] = j;
        from2[j] = i;
    }
    for (int i = 0; i < n; ++i)
        if (to1[i] < 0 || to2[i] < 0)
            throw std::invalid_argument("cycle_decomposition: matchings must be perfect");

    std::vector<AlternatingCycle> cycles;
    std::vector<char> seen(n, 0);
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        if (to1[start] == to2[start]) {
            seen[start] = 1;
            AlternatingCycle c;
            c.kind = AlternatingCycle::Kind::TwoCycle;
            c.edges = {{start, to1[start]}};
            cycles.push_back(std::move(c));
            continue;
        }
        // Walk M1 forward, M2 backward until the row closes the cycle.
        AlternatingCycle c;
        c.kind = AlternatingCycle::Kind::LongCycle;
        int i = start;
        do {
            seen[i] = 1;
            int j = to1[i];
            c.edges.push_back({i, j});  // M1 edge
            int i2 = from2[j];
            c.edges.push_back({i2, j});  // M2 edge
            i = i2;
        } while (i != start);
        cycles.push_back(std::move(c));
    }
    return cycles;
}

Instance worst_case_instance(const IntervalUncertainty& u) {
    if (u.n < 1) throw std::invalid_argument("worst_case_instance: n must be >= 1");
    if (u.k_prime < 0 || u.k_prime > u.n)
        throw std::invalid_argument("worst_case_instance: k' must be in 0..n");
    std::vector<Edge> edges;
    edges.reserve(u.edges.size());
    for (const auto& e : u.edges) {
        if (e.deviation < 0)
            throw std::invalid_argument("worst_case_instance: deviation must be >= 0");
        edges.push_back({e.i, e.j, Cost(e.first_stage), Cost(e.base + e.deviation)});
    }
    return Instance(u.n, std::move(edges), u.n - u.k_prime);
}

}  // namespace recovap
