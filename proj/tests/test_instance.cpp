#include "doctest.h"

#include <set>

#include "recovap/instance.hpp"
#include "recovap/rng.hpp"
#include "test_helpers.hpp"

using namespace recovap;
using recovap::testing::dense;
using recovap::testing::m;

TEST_CASE("cost arithmetic keeps inf absorbing") {
    Cost inf = Cost::inf();
    CHECK((inf + Cost(5)).is_inf());
    CHECK((Cost(5) + inf).is_inf());
    CHECK(min(inf, Cost(3)) == Cost(3));
    CHECK(min(Cost(3), inf) == Cost(3));
    CHECK(inf == Cost::inf());
    CHECK(Cost(7) < inf);
    CHECK_FALSE(inf < inf);
    CHECK(Cost(-2) + Cost(5) == Cost(3));
}

TEST_CASE("instance validation rejects malformed input") {
    CHECK_THROWS(Instance(0, {}, 0));
    CHECK_THROWS(Instance(2, {}, 3));
    CHECK_THROWS(Instance(2, {{0, 0, Cost::inf(), Cost::inf()}}, 0));
    CHECK_THROWS(Instance(2, {{0, 0, Cost(1), Cost(1)}, {0, 0, Cost(2), Cost(2)}}, 0));
    CHECK_THROWS(Instance(2, {{0, 2, Cost(1), Cost(1)}}, 0));
}

TEST_CASE("validate_solution on K22") {
    Instance inst = dense(2, {{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}, 1);
    SUBCASE("identity matchings are feasible with intersection 2") {
        auto pair = SolutionPair::make(inst, m({{0, 0}, {1, 1}}), m({{0, 0}, {1, 1}}));
        auto rep = validate_solution(inst, pair);
        CHECK(rep.feasible);
        CHECK(rep.cost == Cost(0));
        CHECK(rep.intersection == 2);
    }
    SUBCASE("disjoint matchings fail the intersection bound") {
        auto pair = SolutionPair::make(inst, m({{0, 0}, {1, 1}}), m({{0, 1}, {1, 0}}));
        auto rep = validate_solution(inst, pair);
        CHECK_FALSE(rep.feasible);
        CHECK(rep.intersection == 0);
    }
    SUBCASE("missing vertex is reported by name") {
        auto pair = SolutionPair::make(inst, m({{0, 0}}), m({{0, 0}, {1, 1}}));
        auto rep = validate_solution(inst, pair);
        CHECK_FALSE(rep.feasible);
        CHECK(rep.first_violation == "u_2 unmatched in m1");
    }
    SUBCASE("malformed index never crashes") {
        SolutionPair pair;
        pair.m1 = m({{0, 0}, {1, 1}});
        pair.m2 = m({{0, 5}, {1, 1}});
        auto rep = validate_solution(inst, pair);
        CHECK_FALSE(rep.feasible);
        CHECK(rep.first_violation.find("out of range") != std::string::npos);
    }
    SUBCASE("repeated calls agree") {
        auto pair = SolutionPair::make(inst, m({{0, 0}, {1, 1}}), m({{0, 1}, {1, 0}}));
        auto r1 = validate_solution(inst, pair);
        auto r2 = validate_solution(inst, pair);
        CHECK(r1.feasible == r2.feasible);
        CHECK(r1.cost == r2.cost);
        CHECK(r1.intersection == r2.intersection);
        CHECK(r1.first_violation == r2.first_violation);
    }
}

TEST_CASE("infinite matched cost makes the pair infeasible") {
    Instance inst = dense(2, {{0, 0}, {0, 0}}, {{-1, 0}, {0, -1}}, 0);
    // Rebuild with c2 = inf on the diagonal.
    std::vector<Edge> edges;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            edges.push_back({i, j, Cost(0), i == j ? Cost::inf() : Cost(0)});
    Instance inst2(2, edges, 0);
    auto pair = SolutionPair::make(inst2, m({{0, 0}, {1, 1}}), m({{0, 0}, {1, 1}}));
    auto rep = validate_solution(inst2, pair);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.cost.is_inf());
}

TEST_CASE("cycle decomposition examples") {
    SUBCASE("equal matchings give two 2-cycles") {
        auto cycles = cycle_decomposition(m({{0, 0}, {1, 1}}), m({{0, 0}, {1, 1}}), 2);
        REQUIRE(cycles.size() == 2);
        CHECK(cycles[0].kind == AlternatingCycle::Kind::TwoCycle);
        CHECK(cycles[1].kind == AlternatingCycle::Kind::TwoCycle);
    }
    SUBCASE("crossed matchings give one 4-cycle") {
        auto cycles = cycle_decomposition(m({{0, 0}, {1, 1}}), m({{0, 1}, {1, 0}}), 2);
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].kind == AlternatingCycle::Kind::LongCycle);
        CHECK(cycles[0].length() == 4);
    }
    SUBCASE("cyclic shift on n=3 gives one 6-cycle") {
        auto cycles =
            cycle_decomposition(m({{0, 0}, {1, 1}, {2, 2}}), m({{0, 1}, {1, 2}, {2, 0}}), 3);
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].length() == 6);
    }
    SUBCASE("non-perfect input is rejected") {
        CHECK_THROWS(cycle_decomposition(m({{0, 0}}), m({{0, 0}, {1, 1}}), 2));
    }
}

TEST_CASE("cycle decomposition properties on random permutation pairs") {
    Rng rng(20240817);
    for (int round = 0; round < 200; ++round) {
        int n = 1 + static_cast<int>(rng.next_int(0, 6));
        auto random_perm = [&]() {
            std::vector<int> p(n);
            for (int i = 0; i < n; ++i) p[i] = i;
            for (int i = n - 1; i > 0; --i)
                std::swap(p[i], p[rng.next_int(0, i)]);
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < n; ++i) pairs.push_back({i, p[i]});
            return Matching(pairs);
        };
        Matching m1 = random_perm(), m2 = random_perm();
        auto cycles = cycle_decomposition(m1, m2, n);

        int two_cycles = 0, total_len = 0, half_sum = 0;
        for (const auto& c : cycles) {
            total_len += c.length();
            half_sum += c.length() / 2;
            if (c.kind == AlternatingCycle::Kind::TwoCycle) {
                ++two_cycles;
                // A 2-cycle is a shared edge.
                CHECK(m1.contains(c.edges[0].first, c.edges[0].second));
                CHECK(m2.contains(c.edges[0].first, c.edges[0].second));
            } else {
                CHECK(c.length() >= 4);
                CHECK(c.length() % 2 == 0);
                // Strict alternation: even edges from M1, odd from M2.
                for (std::size_t t = 0; t < c.edges.size(); ++t) {
                    const auto& [i, j] = c.edges[t];
                    if (t % 2 == 0)
                        CHECK(m1.contains(i, j));
                    else
                        CHECK(m2.contains(i, j));
                }
            }
        }
        CHECK(two_cycles == intersection_size(m1, m2));
        CHECK(half_sum == n);
        CHECK(total_len == 2 * n);
    }
}

TEST_CASE("worst case instance mapping") {
    IntervalUncertainty u;
    u.n = 2;
    u.k_prime = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u.edges.push_back({i, j, 7, 1, 2});
    SUBCASE("upper endpoints and k = n - k'") {
        Instance inst = worst_case_instance(u);
        CHECK(inst.k() == 2);
        for (const Edge& e : inst.edges()) {
            CHECK(e.c1 == Cost(7));
            CHECK(e.c2 == Cost(3));
        }
    }
    SUBCASE("zero deviation keeps the base costs") {
        for (auto& e : u.edges) e.deviation = 0;
        Instance inst = worst_case_instance(u);
        for (const Edge& e : inst.edges()) CHECK(e.c2 == Cost(1));
    }
    SUBCASE("full recoverability removes the constraint") {
        u.k_prime = 2;
        CHECK(worst_case_instance(u).k() == 0);
    }
    SUBCASE("k' out of range is rejected") {
        u.k_prime = 3;
        CHECK_THROWS(worst_case_instance(u));
    }
    SUBCASE("negative deviation is rejected") {
        u.k_prime = 0;
        u.edges[0].deviation = -1;
        CHECK_THROWS(worst_case_instance(u));
    }
}
