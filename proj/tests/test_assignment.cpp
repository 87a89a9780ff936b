#include "doctest.h"

#include <algorithm>

#include "recovap/assignment.hpp"
#include "recovap/generators.hpp"
#include "recovap/rng.hpp"
#include "test_helpers.hpp"

using namespace recovap;

namespace {

ApProblem square(const std::vector<std::vector<std::int64_t>>& costs) {
    ApProblem p;
    int n = static_cast<int>(costs.size());
    for (int t = 0; t < n; ++t) {
        p.left_ids.push_back(t);
        p.right_ids.push_back(t);
    }
    p.cost.assign(n, std::vector<Cost>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) p.cost[a][b] = Cost(costs[a][b]);
    return p;
}

// Exhaustive reference over all permutations.
std::optional<std::int64_t> brute_ap(const ApProblem& p,
                                     const std::vector<std::pair<int, int>>& forced = {}) {
    int n = static_cast<int>(p.left_ids.size());
    std::vector<int> perm(n);
    for (int t = 0; t < n; ++t) perm[t] = t;
    std::optional<std::int64_t> best;
    do {
        Cost total = 0;
        for (int a = 0; a < n; ++a) total += p.cost[a][perm[a]];
        if (total.is_inf()) continue;
        bool ok = true;
        for (auto& [li, rj] : forced) {
            int a = -1, b = -1;
            for (int t = 0; t < n; ++t) {
                if (p.left_ids[t] == li) a = t;
                if (p.right_ids[t] == rj) b = t;
            }
            if (perm[a] != b) ok = false;
        }
        if (!ok) continue;
        if (!best || total.value() < *best) best = total.value();
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("solve_ap on hand cases") {
    CHECK(solve_ap(square({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}))->cost == Cost(0));
    CHECK(solve_ap(square({{1, 2}, {3, 1}}))->cost == Cost(2));
    SUBCASE("negative costs are handled") {
        CHECK(solve_ap(square({{-5, 0}, {0, -5}}))->cost == Cost(-10));
    }
    SUBCASE("empty problem") { CHECK(solve_ap(ApProblem{})->cost == Cost(0)); }
}

TEST_CASE("solve_ap equals exhaustive search on random instances with holes") {
    Rng rng(11);
    for (int round = 0; round < 300; ++round) {
        int n = 1 + static_cast<int>(rng.next_int(0, 5));
        ApProblem p;
        for (int t = 0; t < n; ++t) {
            p.left_ids.push_back(t);
            p.right_ids.push_back(t);
        }
        p.cost.assign(n, std::vector<Cost>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                p.cost[a][b] =
                    rng.next_bool(1, 4) ? Cost::inf() : Cost(rng.next_int(-10, 20));
        auto expect = brute_ap(p);
        auto got = solve_ap(p);
        if (expect) {
            REQUIRE(got.has_value());
            CHECK(got->cost == Cost(*expect));
            // The returned matching realizes the reported cost.
            Cost check = 0;
            std::vector<char> rows(n, 0), cols(n, 0);
            for (auto& [i, j] : got->matching.pairs()) {
                check += p.cost[i][j];
                rows[i] = cols[j] = 1;
            }
            CHECK(check == got->cost);
            CHECK(std::count(rows.begin(), rows.end(), 1) == n);
        } else {
            CHECK_FALSE(got.has_value());
        }
    }
}

TEST_CASE("solve_ap_with_forced") {
    auto p = square({{1, 2, 8}, {3, 1, 9}, {4, 7, 2}});
    SUBCASE("forcing the full diagonal") {
        auto r = solve_ap_with_forced(p, {{0, 0}, {1, 1}, {2, 2}});
        REQUIRE(r);
        CHECK(r->cost == Cost(4));
    }
    SUBCASE("empty force equals solve_ap") {
        CHECK(solve_ap_with_forced(p, {})->cost == solve_ap(p)->cost);
    }
    SUBCASE("forced edges sharing a vertex are rejected") {
        CHECK_THROWS(solve_ap_with_forced(p, {{0, 0}, {0, 1}}));
        CHECK_THROWS(solve_ap_with_forced(p, {{0, 0}, {1, 0}}));
    }
    SUBCASE("matches brute force restricted to the forced edge") {
        Rng rng(77);
        for (int round = 0; round < 100; ++round) {
            int n = 4;
            ApProblem q;
            for (int t = 0; t < n; ++t) {
                q.left_ids.push_back(t);
                q.right_ids.push_back(t);
            }
            q.cost.assign(n, std::vector<Cost>(n));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    q.cost[a][b] = rng.next_bool(1, 5) ? Cost::inf() : Cost(rng.next_int(0, 9));
            std::vector<std::pair<int, int>> forced{
                {static_cast<int>(rng.next_int(0, 3)), static_cast<int>(rng.next_int(0, 3))}};
            auto expect = brute_ap(q, forced);
            auto got = solve_ap_with_forced(q, forced);
            if (expect) {
                REQUIRE(got.has_value());
                CHECK(got->cost == Cost(*expect));
            } else {
                CHECK_FALSE(got.has_value());
            }
        }
    }
}

TEST_CASE("adding an edge never raises the optimum, deleting never lowers it") {
    Rng rng(5150);
    for (int round = 0; round < 60; ++round) {
        int n = 2 + static_cast<int>(rng.next_int(0, 3));
        std::vector<std::vector<Cost>> base(n, std::vector<Cost>(n, Cost::inf()));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (rng.next_bool(3, 5)) base[a][b] = Cost(rng.next_int(0, 9));
        ApProblem p;
        for (int t = 0; t < n; ++t) {
            p.left_ids.push_back(t);
            p.right_ids.push_back(t);
        }
        p.cost = base;
        auto before = solve_ap(p);
        // Add one edge.
        int ai = static_cast<int>(rng.next_int(0, n - 1));
        int bj = static_cast<int>(rng.next_int(0, n - 1));
        if (p.cost[ai][bj].is_inf()) {
            p.cost[ai][bj] = Cost(rng.next_int(0, 9));
            auto after = solve_ap(p);
            if (before) {
                REQUIRE(after.has_value());
                CHECK(after->cost <= before->cost);
            }
        }
    }
}
