#include "doctest.h"

#include "recovap/assignment.hpp"
#include "recovap/generators.hpp"
#include "recovap/oracle.hpp"
#include "test_helpers.hpp"

using namespace recovap;
using recovap::testing::dense;
using recovap::testing::k22_opposed;
using recovap::testing::m;

namespace {

Instance complete(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) edges.push_back({i, j, Cost(0), Cost(0)});
    return Instance(n, std::move(edges), 0);
}

std::int64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("enumeration counts") {
    for (int n = 1; n <= 6; ++n)
        CHECK(all_perfect_matchings(complete(n)).size() == static_cast<std::size_t>(factorial(n)));

    SUBCASE("a path graph has exactly one perfect matching") {
        // Edges (1,1), (2,1), (2,2): u1-v1-u2-v2.
        Instance path(2, {{0, 0, Cost(0), Cost(0)}, {1, 0, Cost(0), Cost(0)},
                          {1, 1, Cost(0), Cost(0)}}, 0);
        auto all = all_perfect_matchings(path);
        REQUIRE(all.size() == 1);
        CHECK(all[0] == m({{0, 0}, {1, 1}}));
    }
    SUBCASE("size guard refuses loudly") {
        OracleLimits lim;
        lim.max_n = 4;
        CHECK_THROWS_AS(all_perfect_matchings(complete(5), lim), OracleBudgetExceeded);
    }
    SUBCASE("early stop via callback") {
        int count = 0;
        enumerate_perfect_matchings(complete(4), [&](const Matching&) { return ++count < 3; });
        CHECK(count == 3);
    }
}

TEST_CASE("brute force recovap examples") {
    SUBCASE("k=0 takes both zero diagonals") {
        auto r = brute_force_recovap(k22_opposed(0));
        REQUIRE(r);
        CHECK(r->cost == Cost(0));
    }
    SUBCASE("k=1 forces the matchings together") {
        auto r = brute_force_recovap(k22_opposed(1));
        REQUIRE(r);
        CHECK(r->cost == Cost(10));
        CHECK(r->intersection >= 1);
    }
    SUBCASE("empty edge set is infeasible") {
        Instance inst(1, {}, 0);
        CHECK_FALSE(brute_force_recovap(inst).has_value());
    }
}

TEST_CASE("brute force recovap properties") {
    SUBCASE("k=0 splits into two independent assignment problems") {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            Instance inst = random_instance(4, 0.8, 0, seed);
            auto joint = brute_force_recovap(inst);
            auto a1 = solve_ap(ApProblem::from_instance_c1(inst));
            auto a2 = solve_ap(ApProblem::from_instance_c2(inst));
            if (joint) {
                REQUIRE(a1);
                REQUIRE(a2);
                CHECK(joint->cost == a1->cost + a2->cost);
            } else {
                CHECK((!a1 || !a2));
            }
        }
    }
    SUBCASE("optimum is nondecreasing in k") {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            Instance inst = random_instance(4, 0.9, 0, seed);
            auto sweep = brute_force_recovap_sweep(inst);
            for (int k = 1; k <= 4; ++k) {
                if (!sweep[k].has_value()) continue;
                REQUIRE(sweep[k - 1].has_value());
                CHECK(sweep[k - 1]->cost <= sweep[k]->cost);
            }
        }
    }
    SUBCASE("sweep agrees with per-k calls and witnesses validate") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Instance base = random_instance(4, 0.7, 0, seed * 31);
            auto sweep = brute_force_recovap_sweep(base);
            for (int k = 0; k <= 4; ++k) {
                Instance inst = base.with_k(k);
                auto direct = brute_force_recovap(inst);
                REQUIRE(direct.has_value() == sweep[k].has_value());
                if (direct) {
                    CHECK(direct->cost == sweep[k]->cost);
                    CHECK(validate_solution(inst, *direct).feasible);
                }
            }
        }
    }
}

TEST_CASE("brute force second stage") {
    SUBCASE("k=n forces M2 = M1") {
        Instance inst = dense(3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
                              {{4, 1, 1}, {1, 4, 1}, {1, 1, 4}}, 3);
        Matching m1 = m({{0, 0}, {1, 1}, {2, 2}});
        auto r = brute_force_2s(inst, m1);
        REQUIRE(r);
        CHECK(r->m2 == m1);
        CHECK(r->cost == Cost(12));
    }
    SUBCASE("k=0 is the plain assignment optimum") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Instance inst = random_instance(4, 1.0, 0, seed);
            Matching m1 = m({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
            auto r = brute_force_2s(inst, m1);
            auto ap = solve_ap(ApProblem::from_instance_c2(inst));
            REQUIRE(r);
            REQUIRE(ap);
            CHECK(r->cost == ap->cost);
        }
    }
    SUBCASE("K33 anti-diagonal shares the center edge") {
        Instance inst = dense(3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
                              {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, 1);
        auto r = brute_force_2s(inst, m({{0, 0}, {1, 1}, {2, 2}}));
        REQUIRE(r);
        CHECK(r->cost == Cost(0));
        CHECK(r->m2 == m({{0, 2}, {1, 1}, {2, 0}}));
    }
}

TEST_CASE("brute force exact matching") {
    ExactMatchingInstance g;
    g.n_left = g.n_right = 2;
    g.edges = {{0, 0, true, 0}, {0, 1, false, 0}, {1, 0, false, 0}, {1, 1, false, 0}};
    SUBCASE("single red edge, k=1") {
        g.k = 1;
        auto r = brute_force_exact_matching(g);
        REQUIRE(r);
        CHECK(*r == m({{0, 0}, {1, 1}}));
    }
    SUBCASE("diagonal red pair admits only 0 or 2") {
        g.edges[3].red = true;
        g.k = 1;
        CHECK_FALSE(brute_force_exact_matching(g).has_value());
        g.k = 2;
        CHECK(brute_force_exact_matching(g).has_value());
        g.k = 0;
        CHECK(brute_force_exact_matching(g).has_value());
    }
    SUBCASE("no red edges, k=0 returns any perfect matching") {
        ExactMatchingInstance h;
        h.n_left = h.n_right = 2;
        h.k = 0;
        h.edges = {{0, 0, false, 0}, {1, 1, false, 0}};
        auto r = brute_force_exact_matching(h);
        REQUIRE(r);
        CHECK(r->is_perfect(2));
    }
}
