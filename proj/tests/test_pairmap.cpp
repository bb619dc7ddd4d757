#include "coopmsr/pairmap.hpp"

#include <map>
#include <set>

#include "doctest.h"

using namespace coopmsr;

TEST_CASE("the (7,3) map matches the published table") {
    const PairMap pm = PairMap::build(7, 3);
    CHECK(pm.groups() == 2);
    CHECK(pm.m() == 17);

    const std::map<std::pair<int, int>, int> expected{
        {{1, 2}, 1},  {{1, 3}, 1},  {{2, 3}, 1},  {{4, 5}, 2},  {{4, 6}, 2},  {{5, 6}, 2},
        {{1, 4}, 3},  {{2, 4}, 4},  {{3, 4}, 5},  {{1, 5}, 6},  {{2, 5}, 7},  {{3, 5}, 8},
        {{1, 6}, 9},  {{2, 6}, 10}, {{3, 6}, 11}, {{1, 7}, 12}, {{2, 7}, 13}, {{3, 7}, 14},
        {{4, 7}, 15}, {{5, 7}, 16}, {{6, 7}, 17}};
    for (const auto& [pair, value] : expected) CHECK(pm.pi(pair.first, pair.second) == value);

    CHECK(pm.omega0(2) == std::vector<int>{4, 7, 10, 13});
    CHECK(pm.omega1(2).empty());
    CHECK(pm.omega0(7).empty());
    CHECK(pm.omega1(7) == std::vector<int>{12, 13, 14, 15, 16, 17});
    CHECK(pm.omega0(4) == std::vector<int>{15});
    CHECK(pm.omega1(4) == std::vector<int>{3, 4, 5});
}

TEST_CASE("the (4,2) map from the pinned enumeration order") {
    const PairMap pm = PairMap::build(4, 2);
    CHECK(pm.m() == 6);
    CHECK(pm.groups() == 2);
    CHECK(pm.pi(1, 2) == 1);
    CHECK(pm.pi(3, 4) == 2);
    // P_0 sorted by (j', j): (1,3), (2,3), (1,4), (2,4).
    CHECK(pm.pi(1, 3) == 3);
    CHECK(pm.pi(2, 3) == 4);
    CHECK(pm.pi(1, 4) == 5);
    CHECK(pm.pi(2, 4) == 6);

    std::set<int> values;
    for (int rho = 3; rho <= 6; ++rho) {
        const auto [j1, j2] = pm.cross_pair(rho);
        CHECK(pm.pi(j1, j2) == rho);
        values.insert(rho);
    }
    CHECK(values.size() == 4);
}

TEST_CASE("classification") {
    const PairMap pm = PairMap::build(7, 3);
    const auto c1 = pm.classify(4, 5);
    CHECK(c1.intra);
    CHECK(c1.index == 2);
    const auto c2 = pm.classify(2, 7);
    CHECK_FALSE(c2.intra);
    CHECK(c2.index == 13);
    CHECK_THROWS_AS(pm.classify(7, 2), std::invalid_argument);
    CHECK_THROWS_AS(pm.classify(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(pm.classify(0, 3), std::invalid_argument);
}

TEST_CASE("build rejects degenerate dimensions") {
    CHECK_THROWS_AS(PairMap::build(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(PairMap::build(4, 1), std::invalid_argument);
}

TEST_CASE("structural invariants over a grid") {
    for (int r = 2; r <= 4; ++r) {
        for (int n = r + 1; n <= 9; ++n) {
            const PairMap pm = PairMap::build(n, r);
            const int g = n / r;
            CHECK(pm.groups() == g);
            CHECK(pm.m() == n * (n - 1) / 2 - g * (r * (r - 1) / 2 - 1));

            // Intra pairs map to their group; all other pairs biject onto [g+1, m].
            std::set<int> cross_values;
            int intra_pairs = 0;
            for (int j1 = 1; j1 <= n; ++j1) {
                for (int j2 = j1 + 1; j2 <= n; ++j2) {
                    const int v = pm.pi(j1, j2);
                    const bool same_group = j2 <= r * g && (j1 - 1) / r == (j2 - 1) / r;
                    if (same_group) {
                        CHECK(v == (j1 - 1) / r + 1);
                        ++intra_pairs;
                    } else {
                        CHECK(v >= g + 1);
                        CHECK(v <= pm.m());
                        CHECK(cross_values.insert(v).second);
                        CHECK(pm.cross_pair(v) == std::pair(j1, j2));
                    }
                }
            }
            CHECK(intra_pairs == g * (r * (r - 1) / 2));
            CHECK(static_cast<int>(cross_values.size()) == pm.m() - g);

            // Each cross value appears in exactly one omega0 and one omega1,
            // with the owning nodes ordered.
            std::map<int, int> owner0, owner1;
            for (int j = 1; j <= n; ++j) {
                for (int rho : pm.omega0(j)) CHECK(owner0.emplace(rho, j).second);
                for (int rho : pm.omega1(j)) CHECK(owner1.emplace(rho, j).second);
            }
            CHECK(static_cast<int>(owner0.size()) == pm.m() - g);
            CHECK(static_cast<int>(owner1.size()) == pm.m() - g);
            for (int rho = g + 1; rho <= pm.m(); ++rho) {
                REQUIRE(owner0.count(rho) == 1);
                REQUIRE(owner1.count(rho) == 1);
                CHECK(owner0[rho] < owner1[rho]);
                CHECK(pm.cross_pair(rho) == std::pair(owner0[rho], owner1[rho]));
            }

            // Ungrouped tail nodes have every pair represented in their omegas.
            for (int j = r * g + 1; j <= n; ++j) {
                CHECK_FALSE(pm.grouped(j));
                CHECK(pm.omega0(j).size() + pm.omega1(j).size() == static_cast<std::size_t>(n - 1));
            }
        }
    }
}
