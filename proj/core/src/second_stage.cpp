#include "recovap/second_stage.hpp"

#include <algorithm>
#include <cmath>

#include "recovap/rng.hpp"

namespace recovap {

namespace {

// Exact determinant of an mpz matrix by fraction-free (Bareiss)
// elimination with row pivoting. Divisions are exact by construction.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    mpz_class prev_pivot = 1;
    int sign = 1;
    for (int col = 0; col < n - 1; ++col) {
        int pivot_row = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                pivot_row = r;
                break;
            }
        if (pivot_row < 0) return 0;
        if (pivot_row != col) {
            std::swap(m[pivot_row], m[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            for (int c = col + 1; c < n; ++c) {
                mpz_class num = m[r][c] * m[col][col] - m[r][col] * m[col][c];
                mpz_divexact(m[r][c].get_mpz_t(), num.get_mpz_t(), prev_pivot.get_mpz_t());
            }
            m[r][col] = 0;
        }
        prev_pivot = m[col][col];
    }
    return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

// Lagrange interpolation through (0, y0), ..., (deg, ydeg); the result is
// known to be an integer polynomial, asserted by exact division.
std::vector<mpz_class> interpolate_integer_poly(const std::vector<mpz_class>& values) {
    const int points = static_cast<int>(values.size());
    std::vector<mpq_class> coeff(points, 0);
    // Basis accumulation: poly = sum_t y_t * prod_{s != t} (x - s)/(t - s).
    for (int t = 0; t < points; ++t) {
        if (values[t] == 0) continue;
        std::vector<mpq_class> basis(points, 0);
        basis[0] = 1;
        int degree = 0;
        mpz_class denom = 1;
        for (int s = 0; s < points; ++s) {
            if (s == t) continue;
            // Multiply by (x - s).
            for (int d = degree; d >= 0; --d) {
                basis[d + 1] += basis[d];
                basis[d] *= -s;
            }
            ++degree;
            denom *= (t - s);
        }
        mpq_class scale = mpq_class(values[t]) / mpq_class(denom);
        for (int d = 0; d <= degree; ++d) coeff[d] += basis[d] * scale;
    }
    std::vector<mpz_class> out(points);
    for (int d = 0; d < points; ++d) {
        mpq_class c = coeff[d];
        c.canonicalize();
        if (c.get_den() != 1)
            throw std::logic_error("interpolation produced a non-integer coefficient");
        out[d] = c.get_num();
    }
    return out;
}

std::int64_t val2(const mpz_class& z) {
    mpz_class a;
    mpz_abs(a.get_mpz_t(), z.get_mpz_t());
    return static_cast<std::int64_t>(mpz_scan1(a.get_mpz_t(), 0));
}

mpz_class two_pow(std::int64_t e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return z;
}

// Matrix entries 2^{w(e)} * y^{[e in R]} evaluated at integer y.
std::vector<std::vector<mpz_class>> weighted_matrix_at(const ExactMatchingInstance& g,
                                                       const std::vector<std::int64_t>& weights,
                                                       int y) {
    const int n = g.n_left;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t t = 0; t < g.edges.size(); ++t) {
        const auto& e = g.edges[t];
        mpz_class v = two_pow(weights[t]);
        if (e.red) v *= y;
        m[e.i][e.j] += v;  // formats forbid duplicates; += keeps this total
    }
    return m;
}

}  // namespace

RedPolynomialDeterminant red_polynomial_determinant(const ExactMatchingInstance& g,
                                                    const std::vector<std::int64_t>& weights) {
    if (!g.balanced())
        throw std::invalid_argument("red_polynomial_determinant: sides must be balanced");
    if (weights.size() != g.edges.size())
        throw std::invalid_argument("red_polynomial_determinant: one weight per edge");
    const int n = g.n_left;
    std::vector<mpz_class> evals(n + 1);
    for (int y = 0; y <= n; ++y) evals[y] = bareiss_determinant(weighted_matrix_at(g, weights, y));
    RedPolynomialDeterminant out;
    out.coefficients = interpolate_integer_poly(evals);
    return out;
}

MvvResult mvv_exact_matching(const ExactMatchingInstance& g, int trials, std::uint64_t rng_seed,
                             const MvvOptions& opt, MvvStats* stats) {
    if (!g.balanced()) throw std::invalid_argument("mvv_exact_matching: sides must be balanced");
    const int n = g.n_left;
    const int m = static_cast<int>(g.edges.size());
    if (n > opt.max_n)
        throw GuardExceeded("mvv_exact_matching: n = " + std::to_string(n) +
                            " exceeds the big-integer budget (max " + std::to_string(opt.max_n) +
                            ")");
    MvvResult res;
    res.trials = trials;
    res.error_bound = std::pow(2.0, -static_cast<double>(trials));
    if (stats) *stats = MvvStats{};
    if (n == 0) {
        if (g.k == 0) res.matching = Matching{};
        return res;
    }
    if (g.k < 0 || g.k > n) return res;

    // Cost classes separated by K = 2mn+1 dominate the random tie-breakers,
    // so the minimum-weight matching is a minimum-cost one.
    const std::int64_t K = 2LL * m * n + 1;
    std::int64_t cmin = 0, cmax = 0;
    if (g.has_costs) {
        for (const auto& e : g.edges) {
            cmin = std::min(cmin, e.cost);
            cmax = std::max(cmax, e.cost);
        }
        if (cmin < 0)
            throw std::invalid_argument("mvv_exact_matching: costs must be nonnegative");
        if (cmax * K + 2LL * m > opt.max_weight_bits)
            throw GuardExceeded(
                "mvv_exact_matching: costs are not polynomially bounded for this budget "
                "(max weight " +
                std::to_string(cmax * K + 2 * m) + " bits exceeds " +
                std::to_string(opt.max_weight_bits) + ")");
    }

    // (i, j) -> edge position, for the minor test.
    std::vector<std::vector<int>> edge_at(n, std::vector<int>(n, -1));
    for (int t = 0; t < m; ++t) edge_at[g.edges[t].i][g.edges[t].j] = t;

    for (int trial = 0; trial < trials; ++trial) {
        if (stats) stats->trials_run = trial + 1;
        Rng rng(mix_seed(rng_seed, static_cast<std::uint64_t>(trial)));
        std::vector<std::int64_t> w(m);
        for (int t = 0; t < m; ++t) {
            std::int64_t r = rng.next_int(1, 2LL * m);
            w[t] = (g.has_costs ? g.edges[t].cost * K : 0) + r;
        }

        auto det = red_polynomial_determinant(g, w);
        const mpz_class& target = det.coefficients[g.k];
        if (target == 0) {
            if (stats) stats->trial_success.push_back(false);
            continue;
        }
        const std::int64_t W = val2(target);

        // Minor test: an edge is in the isolated matching iff deleting its
        // endpoints leaves a complement whose target coefficient, shifted
        // by the edge weight, sits exactly at valuation W.
        std::vector<std::pair<int, int>> chosen;
        bool plausible = true;
        for (int t = 0; t < m && plausible; ++t) {
            const auto& e = g.edges[t];
            ExactMatchingInstance sub;
            sub.n_left = sub.n_right = n - 1;
            sub.has_costs = false;
            sub.k = 0;  // unused below
            std::vector<std::int64_t> subw;
            for (int t2 = 0; t2 < m; ++t2) {
                const auto& e2 = g.edges[t2];
                if (e2.i == e.i || e2.j == e.j) continue;
                ExactMatchingInstance::EmEdge ne;
                ne.i = e2.i - (e2.i > e.i);
                ne.j = e2.j - (e2.j > e.j);
                ne.red = e2.red;
                sub.edges.push_back(ne);
                subw.push_back(w[t2]);
            }
            int want = g.k - (e.red ? 1 : 0);
            if (want < 0) continue;
            std::vector<mpz_class> evals(n);  // minor has degree <= n-1
            bool nonzero = false;
            for (int y = 0; y < n; ++y) {
                evals[y] = bareiss_determinant(weighted_matrix_at(sub, subw, y));
                if (evals[y] != 0) nonzero = true;
            }
            if (!nonzero) continue;
            auto minor_coeffs = interpolate_integer_poly(evals);
            if (want >= static_cast<int>(minor_coeffs.size()) || minor_coeffs[want] == 0) continue;
            if (val2(minor_coeffs[want]) + w[t] == W) chosen.push_back({e.i, e.j});
        }

        // Deterministic verification of the extracted edge set.
        bool ok = plausible && static_cast<int>(chosen.size()) == n;
        if (ok) {
            std::vector<char> rows(n, 0), cols(n, 0);
            int reds = 0;
            std::int64_t weight = 0, cost = 0;
            for (auto& [i, j] : chosen) {
                if (rows[i] || cols[j]) {
                    ok = false;
                    break;
                }
                rows[i] = cols[j] = 1;
                int t = edge_at[i][j];
                reds += g.edges[t].red;
                weight += w[t];
                cost += g.edges[t].cost;
            }
            if (ok && (reds != g.k || weight != W)) ok = false;
            if (ok) {
                res.matching = Matching(chosen);
                res.cost = g.has_costs ? cost : 0;
                if (stats) {
                    stats->trial_success.push_back(true);
                    stats->success_trial = trial;
                }
                return res;
            }
        }
        if (stats) stats->trial_success.push_back(false);
    }
    return res;
}

SecondStageSolveResult solve_2s(const Instance& inst, const Matching& m1, int trials,
                                std::uint64_t rng_seed, const MvvOptions& opt) {
    if (!m1.is_perfect(inst.n()))
        throw std::invalid_argument("solve_2s: m1 must be a perfect matching");
    const int n = inst.n();

    // The second-stage graph: edges M2 may use, i.e. finite c2. Costs are
    // shifted to be nonnegative; a uniform shift moves every perfect
    // matching by the same amount.
    std::int64_t shift = 0;
    for (const Edge& e : inst.edges())
        if (e.c2.is_finite()) shift = std::min(shift, e.c2.value());
    shift = -shift;

    ExactMatchingInstance g;
    g.n_left = g.n_right = n;
    g.has_costs = true;
    for (const Edge& e : inst.edges()) {
        if (e.c2.is_inf()) continue;
        ExactMatchingInstance::EmEdge ne;
        ne.i = e.i;
        ne.j = e.j;
        ne.red = m1.contains(e.i, e.j);
        ne.cost = e.c2.value() + shift;
        g.edges.push_back(ne);
    }

    SecondStageSolveResult out;
    out.cost = Cost::inf();
    out.error_bound = std::pow(2.0, -static_cast<double>(trials));
    for (int r = inst.k(); r <= n; ++r) {
        ExactMatchingInstance gr = g;
        gr.k = r;
        MvvResult res = mvv_exact_matching(gr, trials, mix_seed(rng_seed, 7700 + r), opt);
        if (!res.matching) continue;
        Cost true_cost = matching_cost2(inst, *res.matching);
        if (true_cost < out.cost) {
            out.cost = true_cost;
            out.m2 = res.matching;
        }
    }
    if (out.m2) {
        // Deterministic re-check: perfect, intersection, finite cost.
        if (intersection_size(*out.m2, m1) < inst.k() || !out.m2->is_perfect(n))
            throw std::logic_error("solve_2s: verification of returned matching failed");
    } else {
        out.note = "INFEASIBLE is a Monte-Carlo claim with error <= 2^-" +
                   std::to_string(trials) + " per intersection target";
    }
    return out;
}

PreprocessResult preprocess_degree_one(const ExactMatchingInstance& g) {
    PreprocessResult out;
    out.graph = g;
    auto& gr = out.graph;

    bool changed = true;
    while (changed) {
        changed = false;
        // Recompute degrees; desk-scale graphs keep this simple.
        std::vector<int> dl(gr.n_left, 0), dr(gr.n_right, 0);
        for (const auto& e : gr.edges) {
            dl[e.i]++;
            dr[e.j]++;
        }
        int li = -1, rj = -1;
        for (int i = 0; i < gr.n_left && li < 0; ++i)
            if (dl[i] == 1) li = i;
        for (int j = 0; j < gr.n_right && li < 0 && rj < 0; ++j)
            if (dr[j] == 1) rj = j;
        // Isolated vertices can never be matched.
        for (int i = 0; i < gr.n_left; ++i)
            if (dl[i] == 0) {
                out.infeasible = true;
                return out;
            }
        for (int j = 0; j < gr.n_right; ++j)
            if (dr[j] == 0) {
                out.infeasible = true;
                return out;
            }
        if (li < 0 && rj < 0) break;

        // Commit the unique incident edge.
        int pick = -1;
        for (std::size_t t = 0; t < gr.edges.size(); ++t) {
            const auto& e = gr.edges[t];
            if ((li >= 0 && e.i == li) || (rj >= 0 && e.j == rj)) {
                pick = static_cast<int>(t);
                break;
            }
        }
        const auto committed = gr.edges[pick];
        out.committed.push_back({committed.i, committed.j});
        if (committed.red) {
            out.committed_red++;
            gr.k -= 1;
            if (gr.k < 0) {
                out.infeasible = true;
                return out;
            }
        }
        // Remove both endpoints and reindex.
        ExactMatchingInstance next;
        next.n_left = gr.n_left - 1;
        next.n_right = gr.n_right - 1;
        next.has_costs = gr.has_costs;
        next.k = gr.k;
        for (const auto& e : gr.edges) {
            if (e.i == committed.i || e.j == committed.j) continue;
            ExactMatchingInstance::EmEdge ne = e;
            ne.i -= (e.i > committed.i);
            ne.j -= (e.j > committed.j);
            next.edges.push_back(ne);
        }
        gr = std::move(next);
        changed = true;
    }
    return out;
}

ExactMatchingInstance reduce_exact_to_matching_red(const ExactMatchingInstance& g) {
    for (int i = 0; i < g.n_left; ++i)
        if (g.degree_left(i) < 2)
            throw std::invalid_argument(
                "reduce_exact_to_matching_red: left vertex of degree < 2; run "
                "preprocess_degree_one first");
    for (int j = 0; j < g.n_right; ++j)
        if (g.degree_right(j) < 2)
            throw std::invalid_argument(
                "reduce_exact_to_matching_red: right vertex of degree < 2; run "
                "preprocess_degree_one first");

    // Output sides: left = edge-vertices u_e (for u in U) plus the
    // independent sets of right vertices; right = mirrored.
    // Edge e = {u, v}: u_e on the left, v_e on the right, joined by the
    // (possibly red) edge; u's independent set lives on the right and
    // attaches to every u_e, and symmetrically for v.
    const int m = static_cast<int>(g.edges.size());
    ExactMatchingInstance out;
    out.k = g.k;
    out.has_costs = false;

    // Left-side ids: u_e for each edge (0..m-1), then v-copies.
    // Right-side ids: v_e for each edge (0..m-1), then u-copies.
    int next_left = m, next_right = m;
    std::vector<std::vector<int>> u_copies(g.n_left), v_copies(g.n_right);
    for (int u = 0; u < g.n_left; ++u)
        for (int c = 0; c < g.degree_left(u) - 1; ++c) u_copies[u].push_back(next_right++);
    for (int v = 0; v < g.n_right; ++v)
        for (int c = 0; c < g.degree_right(v) - 1; ++c) v_copies[v].push_back(next_left++);
    out.n_left = next_left;
    out.n_right = next_right;

    for (int t = 0; t < m; ++t) {
        const auto& e = g.edges[t];
        out.edges.push_back({t, t, e.red, 0});  // u_e -- v_e
        for (int copy : u_copies[e.i]) out.edges.push_back({t, copy, false, 0});
        for (int copy : v_copies[e.j]) out.edges.push_back({copy, t, false, 0});
    }
    return out;
}

ExactToSecondStage reduce_exactred_to_2s(const ExactMatchingInstance& g) {
    if (!g.balanced())
        throw std::invalid_argument("reduce_exactred_to_2s: sides must be balanced");
    if (!g.red_is_matching())
        throw std::invalid_argument("reduce_exactred_to_2s: red set must form a matching");
    const int n0 = g.n_left;

    std::vector<char> left_red(n0, 0), right_red(n0, 0);
    for (const auto& e : g.edges)
        if (e.red) {
            left_red[e.i] = 1;
            right_red[e.j] = 1;
        }

    // Primes: every vertex unmatched by the red set gains one new neighbor
    // on the opposite side; primes then pair up i-th to i-th at cost 0.
    std::vector<int> left_primes, right_primes;  // new vertex ids
    int next_left = n0, next_right = n0;
    std::vector<std::pair<int, int>> m1_pairs;
    std::vector<Edge> edges;

    for (const auto& e : g.edges)
        edges.push_back({e.i, e.j, Cost::inf(), Cost(e.red ? 1 : 0)});

    for (int i = 0; i < n0; ++i)
        if (!left_red[i]) right_primes.push_back(next_right++);  // prime of a left vertex sits right
    for (int j = 0; j < n0; ++j)
        if (!right_red[j]) left_primes.push_back(next_left++);

    {
        int t = 0;
        for (int i = 0; i < n0; ++i)
            if (!left_red[i]) {
                edges.push_back({i, right_primes[t], Cost(0), Cost::inf()});
                m1_pairs.push_back({i, right_primes[t]});
                ++t;
            }
        t = 0;
        for (int j = 0; j < n0; ++j)
            if (!right_red[j]) {
                edges.push_back({left_primes[t], j, Cost(0), Cost::inf()});
                m1_pairs.push_back({left_primes[t], j});
                ++t;
            }
    }
    if (next_left != next_right)
        throw std::logic_error("reduce_exactred_to_2s: prime counts differ");
    const int n = next_left;

    // Pair the primes so M2 can cover them for free.
    if (left_primes.size() != right_primes.size())
        throw std::logic_error("reduce_exactred_to_2s: prime side mismatch");
    for (std::size_t t = 0; t < left_primes.size(); ++t)
        edges.push_back({left_primes[t], right_primes[t], Cost::inf(), Cost(0)});

    // M1 = R' = red edges plus all prime pendants; set c1 = 0 on them.
    for (const auto& e : g.edges)
        if (e.red) m1_pairs.push_back({e.i, e.j});
    for (auto& ed : edges)
        for (auto& [i, j] : m1_pairs)
            if (ed.i == i && ed.j == j) ed.c1 = Cost(0);

    ExactToSecondStage out{Instance(n, std::move(edges), g.k), Matching(m1_pairs)};
    return out;
}

}  // namespace recovap
