#include "recovap/monge.hpp"

#include <algorithm>
#include <stdexcept>

#include "recovap/assignment.hpp"
#include "recovap/rng.hpp"

namespace recovap {

Instance CostMatrixPair::to_instance() const {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) edges.push_back({i, j, Cost(a[i][j]), Cost(b[i][j])});
    return Instance(n, std::move(edges), k);
}

std::optional<CostMatrixPair> CostMatrixPair::from_instance(const Instance& inst) {
    CostMatrixPair p;
    p.n = inst.n();
    p.k = inst.k();
    p.a.assign(p.n, std::vector<std::int64_t>(p.n, 0));
    p.b.assign(p.n, std::vector<std::int64_t>(p.n, 0));
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            Cost c1 = inst.cost1(i, j), c2 = inst.cost2(i, j);
            if (c1.is_inf() || c2.is_inf()) return std::nullopt;
            p.a[i][j] = c1.value();
            p.b[i][j] = c2.value();
        }
    return p;
}

std::string MongeViolation::describe(bool anti) const {
    return "rows (" + std::to_string(i + 1) + "," + std::to_string(i + 2) + ") x columns (" +
           std::to_string(j + 1) + "," + std::to_string(j + 2) + "): " + std::to_string(lhs) +
           (anti ? " < " : " > ") + std::to_string(rhs);
}

namespace {

void require_square(const IntMatrix& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("matrix must be square");
}

bool check_adjacent(const IntMatrix& m, bool anti, MongeViolation* witness) {
    require_square(m);
    int n = static_cast<int>(m.size());
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) {
            std::int64_t lhs = m[i][j] + m[i + 1][j + 1];
            std::int64_t rhs = m[i][j + 1] + m[i + 1][j];
            bool ok = anti ? lhs >= rhs : lhs <= rhs;
            if (!ok) {
                if (witness) *witness = {i, j, lhs, rhs};
                return false;
            }
        }
    return true;
}

bool check_full(const IntMatrix& m, bool anti) {
    require_square(m);
    int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int p = i + 1; p < n; ++p)
            for (int j = 0; j < n; ++j)
                for (int q = j + 1; q < n; ++q) {
                    std::int64_t lhs = m[i][j] + m[p][q];
                    std::int64_t rhs = m[i][q] + m[p][j];
                    if (anti ? lhs < rhs : lhs > rhs) return false;
                }
    return true;
}

IntMatrix generate(int n, std::uint64_t seed, bool anti) {
    if (n < 1) throw std::invalid_argument("generate_monge: n must be >= 1");
    Rng rng(seed);
    std::vector<std::int64_t> u(n), v(n);
    for (auto& x : u) x = rng.next_int(0, 30);
    for (auto& x : v) x = rng.next_int(0, 30);
    IntMatrix d(n, std::vector<std::int64_t>(n));
    for (auto& row : d)
        for (auto& x : row) x = rng.next_int(0, 6);
    // Prefix sums P[i][j] = sum of d over [0..i][0..j].
    IntMatrix prefix(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            prefix[i][j] = d[i][j];
            if (i > 0) prefix[i][j] += prefix[i - 1][j];
            if (j > 0) prefix[i][j] += prefix[i][j - 1];
            if (i > 0 && j > 0) prefix[i][j] -= prefix[i - 1][j - 1];
        }
    IntMatrix m(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = u[i] + v[j] + (anti ? prefix[i][j] : -prefix[i][j]);
    return m;
}

}  // namespace

bool is_monge(const IntMatrix& m, MongeViolation* witness) { return check_adjacent(m, false, witness); }
bool is_anti_monge(const IntMatrix& m, MongeViolation* witness) {
    return check_adjacent(m, true, witness);
}
bool is_monge_full(const IntMatrix& m) { return check_full(m, false); }
bool is_anti_monge_full(const IntMatrix& m) { return check_full(m, true); }

IntMatrix generate_monge(int n, std::uint64_t seed) { return generate(n, seed, false); }
IntMatrix generate_anti_monge(int n, std::uint64_t seed) { return generate(n, seed, true); }

MongeSolveResult solve_monge_antimonge(const CostMatrixPair& p) {
    MongeViolation viol;
    if (p.n < 1) throw std::invalid_argument("solve_monge_antimonge: n must be >= 1");
    if (p.k < 0 || p.k > p.n) throw std::invalid_argument("solve_monge_antimonge: k out of range");
    if (!is_monge(p.a, &viol))
        throw std::invalid_argument("solve_monge_antimonge: c1 is not Monge at " +
                                    viol.describe(false));
    if (!is_anti_monge(p.b, &viol))
        throw std::invalid_argument("solve_monge_antimonge: c2 is not Anti-Monge at " +
                                    viol.describe(true));

    const int n = p.n;
    const int outer = (n - p.k) / 2;

    std::vector<std::pair<int, int>> m1_pairs, m2_pairs;
    for (int i = 0; i < outer; ++i) {
        int mirror = n - 1 - i;
        m1_pairs.push_back({i, i});
        m1_pairs.push_back({mirror, mirror});
        m2_pairs.push_back({i, mirror});
        m2_pairs.push_back({mirror, i});
    }

    // Inner interval [outer, n-outer): minimum assignment under c1 + c2,
    // taken identically into both matchings.
    ApProblem inner;
    for (int i = outer; i < n - outer; ++i) {
        inner.left_ids.push_back(i);
        inner.right_ids.push_back(i);
    }
    inner.cost.assign(inner.left_ids.size(), std::vector<Cost>(inner.right_ids.size()));
    for (std::size_t a = 0; a < inner.left_ids.size(); ++a)
        for (std::size_t b = 0; b < inner.right_ids.size(); ++b)
            inner.cost[a][b] =
                Cost(p.a[inner.left_ids[a]][inner.right_ids[b]] + p.b[inner.left_ids[a]][inner.right_ids[b]]);
    auto inner_res = solve_ap(inner);
    // Finite dense matrices always admit an inner assignment.
    if (!inner_res) throw std::logic_error("solve_monge_antimonge: inner assignment failed");

    for (auto& [i, j] : inner_res->matching.pairs()) {
        m1_pairs.push_back({i, j});
        m2_pairs.push_back({i, j});
    }

    MongeSolveResult res;
    res.shape.outer_count = outer;
    res.shape.inner_lo = outer;
    res.shape.inner_hi = n - outer;
    res.shape.inner = inner_res->matching;
    res.pair = SolutionPair::make(p.to_instance(), Matching(std::move(m1_pairs)),
                                  Matching(std::move(m2_pairs)));
    return res;
}

}  // namespace recovap
