// The OpenMP kernels must produce bit-identical results to the serial
// reference path regardless of thread count.

#include <random>

#include "coopmsr/cluster.hpp"
#include "coopmsr/coop_repair.hpp"
#include "coopmsr/msrcode.hpp"
#include "doctest.h"
#include "support.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace coopmsr;

namespace {

struct ThreadGuard {
    ThreadGuard() {
#ifdef _OPENMP
        omp_set_num_threads(4);
#endif
    }
};

}  // namespace

TEST_CASE("for_each_chunk covers the range and forwards exceptions") {
    const ThreadGuard guard;
    std::vector<int> hits(1000, 0);
    for_each_index(Exec::parallel, 1000, [&](std::int64_t i) { ++hits[static_cast<std::size_t>(i)]; });
    for (int h : hits) CHECK(h == 1);

    CHECK_THROWS_AS(for_each_index(Exec::parallel, 100,
                                   [](std::int64_t i) {
                                       if (i == 57) throw std::runtime_error("boom");
                                   }),
                    std::runtime_error);
}

TEST_CASE("serial and parallel kernels agree bit-exactly") {
    const ThreadGuard guard;
    const CodeParams p = make_params(5, 2, 65537);
    std::mt19937_64 rng(4242);

    std::vector<Vec> data;
    for (int j = 0; j < p.k; ++j)
        data.push_back(coopmsr::testing::random_vec(p.field, static_cast<std::size_t>(p.ell), rng));

    const Codeword enc_s = encode(p, data, Exec::serial);
    const Codeword enc_p = encode(p, data, Exec::parallel);
    CHECK(enc_s.nodes == enc_p.nodes);

    CHECK(syndrome(p, enc_s, Exec::serial) == syndrome(p, enc_s, Exec::parallel));

    const Codeword dec_s = erasure_decode(p, enc_s, {1, 3, 5}, Exec::serial);
    const Codeword dec_p = erasure_decode(p, enc_s, {1, 3, 5}, Exec::parallel);
    CHECK(dec_s.nodes == dec_p.nodes);

    for (const auto& [i1, i2] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {4, 5}}) {
        const RepairResult rs = cooperative_repair(p, enc_s, i1, i2, Exec::serial);
        const RepairResult rp = cooperative_repair(p, enc_s, i1, i2, Exec::parallel);
        CHECK(rs.node1 == rp.node1);
        CHECK(rs.node2 == rp.node2);
        CHECK(rs.transcript.gamma() == rp.transcript.gamma());
        CHECK(rs.transcript.gamma_access() == rp.transcript.gamma_access());
        CHECK(rs.transcript.rounds == rp.transcript.rounds);
        CHECK(rs.transcript.solver_passes == rp.transcript.solver_passes);
    }

    const auto v_s = verify_mds(p, kVerifyMdsEllGuard, Exec::serial);
    const auto v_p = verify_mds(p, kVerifyMdsEllGuard, Exec::parallel);
    CHECK(v_s.ok == v_p.ok);
    CHECK(v_s.subsets_checked == v_p.subsets_checked);
}
