#include "coopmsr/blocks.hpp"

#include <random>

#include "doctest.h"

using namespace coopmsr;

TEST_CASE("Type-I parity layout") {
    const Field f(65537);

    SUBCASE("r = 2 has no gamma columns") {
        const auto spec = BlockCodeSpec::with_defaults(BlockKind::type1, 4, 2, f);
        const Matrix h = parity_matrix(spec);
        // (H_{t,1}, H_{t,2}) = [[l1, 0, l2, 0], [0, l1, 0, l2]] per block row.
        for (int t = 1; t <= 2; ++t) {
            const auto l1 = pow(spec.lambda[0], static_cast<std::uint64_t>(t - 1));
            const auto l2 = pow(spec.lambda[1], static_cast<std::uint64_t>(t - 1));
            const std::size_t rb = static_cast<std::size_t>((t - 1) * 2);
            CHECK(h.at(rb + 0, 0) == l1);
            CHECK(h.at(rb + 0, 1) == f.zero());
            CHECK(h.at(rb + 0, 2) == l2);
            CHECK(h.at(rb + 0, 3) == f.zero());
            CHECK(h.at(rb + 1, 0) == f.zero());
            CHECK(h.at(rb + 1, 1) == l1);
            CHECK(h.at(rb + 1, 2) == f.zero());
            CHECK(h.at(rb + 1, 3) == l2);
        }
    }

    SUBCASE("row 1 of the first block holds lambda_1 and the gamma tail") {
        const auto spec = BlockCodeSpec::with_defaults(BlockKind::type1, 6, 2, f);  // r = 4
        const Matrix h = parity_matrix(spec);
        for (int t = 1; t <= spec.r; ++t) {
            const std::size_t rb = static_cast<std::size_t>((t - 1) * spec.r);
            for (int col = 0; col < spec.r; ++col) {
                const FieldElement want =
                    col == 0 ? pow(spec.lambda[0], static_cast<std::uint64_t>(t - 1))
                    : col >= 2 ? pow(spec.gamma[static_cast<std::size_t>(col - 2)],
                                     static_cast<std::uint64_t>(t - 1))
                               : f.zero();
                CHECK(h.at(rb, static_cast<std::size_t>(col)) == want);
            }
        }
    }
}

TEST_CASE("Type-II parity layout puts tau left of the diagonal in row i of block i") {
    const Field f(65537);
    const auto spec = BlockCodeSpec::with_defaults(BlockKind::type2, 6, 2, f);  // r = 4
    const Matrix h = parity_matrix(spec);
    // t = 1 makes every lambda power 1, exposing tau itself.
    for (int i = 1; i <= spec.r; ++i)
        for (int j = 1; j < i; ++j)
            CHECK(h.at(static_cast<std::size_t>(i - 1),
                       static_cast<std::size_t>((i - 1) * spec.r + (j - 1))) == spec.tau);
}

TEST_CASE("construction validation") {
    const Field f13(13);
    std::vector<FieldElement> lam;
    for (int j = 1; j <= 6; ++j) lam.push_back(f13.elt(static_cast<std::uint64_t>(j)));
    CHECK_THROWS_AS(BlockCodeSpec::type2(6, 3, f13, lam, f13.one()), std::invalid_argument);
    CHECK_THROWS_AS(BlockCodeSpec::type2(6, 3, f13, lam, f13.zero()), std::invalid_argument);
    CHECK_THROWS_AS(BlockCodeSpec::type1(6, 3, f13, lam, {f13.elt(5)}), std::invalid_argument);
    CHECK_NOTHROW(BlockCodeSpec::type1(6, 3, f13, lam, {f13.elt(7)}));
}

TEST_CASE("MDS checks over small explicit fields") {
    const Field f11(11), f13(13);
    std::vector<FieldElement> lam11, lam13;
    for (int j = 1; j <= 6; ++j) {
        lam11.push_back(f11.elt(static_cast<std::uint64_t>(j)));
        lam13.push_back(f13.elt(static_cast<std::uint64_t>(j)));
    }

    const auto t1 = BlockCodeSpec::type1(6, 3, f11, lam11, {f11.elt(7)});
    const auto rep1 = check_mds(t1);
    CHECK(rep1.ok);
    CHECK(rep1.subsets_checked == 20);

    const auto t2 = BlockCodeSpec::type2(6, 3, f13, lam13, f13.elt(12));
    const auto rep2 = check_mds(t2);
    CHECK(rep2.ok);
    CHECK(rep2.subsets_checked == 20);

    CHECK_THROWS_AS(check_mds(t1, 5), GuardLimitError);
}

TEST_CASE("repair matches the dense erasure-decode oracle") {
    const Field f(65537);
    std::mt19937_64 rng(101);
    for (int n : {4, 5, 6}) {
        for (int k = 1; k <= n - 2; ++k) {
            const auto t1 = BlockCodeSpec::with_defaults(BlockKind::type1, n, k, f);
            const auto t2 = BlockCodeSpec::with_defaults(BlockKind::type2, n, k, f);
            for (int it = 0; it < 20; ++it) {
                const BlockCodeword w1 = random_block_codeword(t1, rng);
                const auto res1 = repair_type1(t1, w1);
                const auto oracle1 = block_erasure_decode(t1, w1, {1, 2});
                CHECK(res1.node1 == oracle1[0]);
                CHECK(res1.node2 == oracle1[1]);
                CHECK(res1.node1 == w1[0]);
                CHECK(res1.node2 == w1[1]);
                CHECK(res1.transcript.bandwidth() == 2 * (n - 1));
                CHECK(res1.transcript.access_total() == 2 * (n - 2));
                CHECK(res1.transcript.downloaded == 2 * (n - 2));
                CHECK(res1.transcript.collaborated == 2);

                const BlockCodeword w2 = random_block_codeword(t2, rng);
                for (int j1 = 1; j1 <= t2.r; ++j1) {
                    for (int j2 = j1 + 1; j2 <= t2.r; ++j2) {
                        const auto res2 = repair_type2(t2, w2, j1, j2);
                        CHECK(res2.node1 == w2[static_cast<std::size_t>(j1 - 1)]);
                        CHECK(res2.node2 == w2[static_cast<std::size_t>(j2 - 1)]);
                        CHECK(res2.transcript.bandwidth() == 2 * (n - 1));
                        CHECK(res2.transcript.access_total() == 2 * (n - 2));
                    }
                }
            }
        }
    }
}

TEST_CASE("all-zero codeword repairs to all-zero") {
    const Field f(65537);
    const auto spec = BlockCodeSpec::with_defaults(BlockKind::type1, 5, 2, f);
    const BlockCodeword zero(5, Vec(static_cast<std::size_t>(spec.r), f.zero()));
    const auto res = repair_type1(spec, zero);
    CHECK(res.node1 == Vec(static_cast<std::size_t>(spec.r), f.zero()));
    CHECK(res.node2 == Vec(static_cast<std::size_t>(spec.r), f.zero()));
}

TEST_CASE("unsupported repair patterns are rejected") {
    const Field f(65537);
    const auto t2 = BlockCodeSpec::with_defaults(BlockKind::type2, 6, 3, f);
    std::mt19937_64 rng(5);
    const BlockCodeword w = random_block_codeword(t2, rng);
    CHECK_THROWS_AS(repair_type2(t2, w, 1, t2.r + 1), UnsupportedPatternError);
    CHECK_THROWS_AS(repair_type2(t2, w, 2, 2), UnsupportedPatternError);
    const auto t1 = BlockCodeSpec::with_defaults(BlockKind::type1, 6, 3, f);
    CHECK_THROWS_AS(repair_type2(t1, w, 1, 2), UnsupportedPatternError);
    CHECK_THROWS_AS(repair_type1(t2, w), UnsupportedPatternError);
}

TEST_CASE("encode, puncture, decode round trip") {
    const Field f(65537);
    std::mt19937_64 rng(77);
    const auto spec = BlockCodeSpec::with_defaults(BlockKind::type2, 6, 3, f);
    for (int it = 0; it < 10; ++it) {
        const BlockCodeword w = random_block_codeword(spec, rng);
        BlockCodeword punctured = w;
        punctured[1].assign(static_cast<std::size_t>(spec.r), f.zero());
        punctured[4].assign(static_cast<std::size_t>(spec.r), f.zero());
        punctured[5].assign(static_cast<std::size_t>(spec.r), f.zero());
        CHECK(block_erasure_decode(spec, punctured, {2, 5, 6}) == w);
    }
    CHECK_THROWS_AS(block_erasure_decode(spec, random_block_codeword(spec, rng), {1, 2, 3, 4}),
                    GuardLimitError);
}
