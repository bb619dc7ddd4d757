#include "coopmsr/coop_repair.hpp"

#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace coopmsr;

TEST_CASE("plans classify pairs and fix row sets") {
    const CodeParams p = make_params(7, 4, 65537);

    const RepairPlan intra = make_repair_plan(p, 4, 5);
    CHECK(intra.intra);
    CHECK(intra.u == 2);
    CHECK(intra.v1 == 0);
    CHECK(intra.v2 == 1);
    CHECK(intra.row_digit() == 2);

    const RepairPlan cross = make_repair_plan(p, 1, 7);
    CHECK_FALSE(cross.intra);
    CHECK(cross.rho == 12);
    CHECK(cross.side_value(0) == 0);
    CHECK(cross.side_value(1) == 1);

    CHECK_THROWS_AS(make_repair_plan(p, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_repair_plan(p, 5, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_repair_plan(p, 0, 4), std::invalid_argument);
}

TEST_CASE("helper reads cover exactly the two row sets") {
    const CodeParams p = make_params(4, 2, 65537);
    std::mt19937_64 rng(808);
    const Codeword cw = random_codeword(p, rng);
    const RepairPlan plan = make_repair_plan(p, 1, 2);

    const HelperRead read = helper_read(p, cw.nodes[2], 3, plan);
    CHECK(read.side1.size() + read.side2.size() == static_cast<std::size_t>(2 * p.ell / p.r));
    const AxisSet a1 = p.index.axis_set(plan.row_digit(), plan.side_value(0));
    for (std::int64_t i = 0; i < a1.size(); ++i)
        CHECK(read.side1[static_cast<std::size_t>(i)] ==
              cw.nodes[2][static_cast<std::size_t>(a1.at(i))]);

    CHECK_THROWS_AS(helper_read(p, cw.nodes[0], 1, plan), std::invalid_argument);
}

TEST_CASE("cut-set values") {
    CHECK(repair_bounds(make_params(4, 2, 65537)) == std::pair<std::int64_t, std::int64_t>{192, 128});
    CHECK(repair_bounds(make_params(5, 2, 65537)) ==
          std::pair<std::int64_t, std::int64_t>{17496, 13122});
    // Computable symbolically even where codewords are never materialized.
    CHECK(repair_bounds(make_params(7, 4, 65537)) ==
          std::pair<std::int64_t, std::int64_t>{516560652, 430467210});
}

TEST_CASE("cooperative repair equals the decode oracle on every pair") {
    std::mt19937_64 rng(909);
    // Covers r = 2, 3, 4, tail nodes, both pair classes, and the minimal
    // single-helper code (3,1).
    for (const auto& [n, k, rounds] : std::vector<std::tuple<int, int, int>>{
             {4, 2, 4}, {5, 2, 2}, {5, 3, 3}, {4, 1, 3}, {5, 1, 2}, {3, 1, 5}}) {
        const CodeParams p = make_params(n, k, 65537);
        for (int it = 0; it < rounds; ++it) {
            const Codeword cw = random_codeword(p, rng);
            for (int i1 = 1; i1 <= n; ++i1) {
                for (int i2 = i1 + 1; i2 <= n; ++i2) {
                    const RepairResult res = cooperative_repair(p, cw, i1, i2);
                    const Codeword oracle = erasure_decode(p, cw, {i1, i2});
                    CHECK(res.node1 == oracle.nodes[static_cast<std::size_t>(i1 - 1)]);
                    CHECK(res.node2 == oracle.nodes[static_cast<std::size_t>(i2 - 1)]);

                    const auto verdict = check_optimal(res.transcript, p);
                    CHECK(verdict.ok());
                    CHECK(res.transcript.gamma() == verdict.bound_gamma);
                    CHECK(res.transcript.gamma_access() == verdict.bound_gamma_access);
                    CHECK(res.transcript.collaborated == 2 * p.ell / p.r);
                    CHECK(res.transcript.downloaded == 2 * (n - 2) * (p.ell / p.r));
                }
            }
        }
    }
}

TEST_CASE("intra-group transcripts expose the per-shell round structure") {
    const CodeParams p = make_params(5, 2, 65537);  // r = 3, shells 0..7
    std::mt19937_64 rng(111);
    const Codeword cw = random_codeword(p, rng);
    const RepairResult res = cooperative_repair(p, cw, 1, 2);
    CHECK(res.transcript.intra);
    CHECK(res.transcript.rounds == p.m - p.pairs.groups() + 1);
    std::int64_t collab = 0;
    for (const auto& round : res.transcript.collab_rounds) collab += round.from_i1 + round.from_i2;
    CHECK(collab == res.transcript.collaborated);

    SUBCASE("binary codes collapse to a single exchange") {
        const CodeParams p2 = make_params(4, 2, 65537);
        const Codeword cw2 = random_codeword(p2, rng);
        const RepairResult res2 = cooperative_repair(p2, cw2, 3, 4);
        CHECK(res2.transcript.intra);
        CHECK(res2.transcript.rounds == 1);
    }
}

TEST_CASE("cross-group repair uses one collaboration round and few passes") {
    const CodeParams p = make_params(5, 2, 65537);
    std::mt19937_64 rng(222);
    const Codeword cw = random_codeword(p, rng);
    for (const auto& [i1, i2] : std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {4, 5}}) {
        const RepairPlan plan = make_repair_plan(p, i1, i2);
        REQUIRE_FALSE(plan.intra);
        const RepairResult res = cooperative_repair(p, cw, i1, i2);
        CHECK(res.node1 == cw.nodes[static_cast<std::size_t>(i1 - 1)]);
        CHECK(res.node2 == cw.nodes[static_cast<std::size_t>(i2 - 1)]);
        CHECK(res.transcript.rounds == 1);
        CHECK(res.transcript.solver_passes <= 3 * (p.m - p.pairs.groups()));
        CHECK(check_optimal(res.transcript, p).ok());
    }
}

TEST_CASE("transcripts record coordinate-level access for small codes") {
    const CodeParams p = make_params(4, 2, 65537);
    std::mt19937_64 rng(333);
    const Codeword cw = random_codeword(p, rng);
    const RepairResult res = cooperative_repair(p, cw, 1, 3);
    REQUIRE(res.transcript.per_helper_coords.size() == 2);
    const RepairPlan plan = make_repair_plan(p, 1, 3);
    for (const auto& coords : res.transcript.per_helper_coords) {
        CHECK(coords.size() == static_cast<std::size_t>(2 * p.ell / p.r));
        for (std::size_t i = 1; i < coords.size(); ++i) CHECK(coords[i - 1] < coords[i]);
        for (const auto a : coords) {
            const int d = p.index.digit(a, plan.row_digit());
            CHECK((d == plan.side_value(0) || d == plan.side_value(1)));
        }
    }
    CHECK(res.transcript.to_json().find("\"gamma\"") != std::string::npos);
}

TEST_CASE("repair engines reject mismatched inputs") {
    const CodeParams p = make_params(4, 2, 65537);
    std::mt19937_64 rng(444);
    const Codeword cw = random_codeword(p, rng);
    const RepairPlan intra = make_repair_plan(p, 1, 2);
    const RepairPlan cross = make_repair_plan(p, 1, 3);

    std::vector<HelperRead> reads;
    for (int node = 3; node <= 4; ++node)
        reads.push_back(helper_read(p, cw.nodes[static_cast<std::size_t>(node - 1)], node, intra));

    CHECK_THROWS_AS(repair_cross(p, intra, reads), std::invalid_argument);
    CHECK_THROWS_AS(repair_intra(p, cross, reads), std::invalid_argument);
    reads.pop_back();
    CHECK_THROWS_AS(repair_intra(p, intra, reads), std::invalid_argument);
}
