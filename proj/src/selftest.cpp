#include "coopmsr/selftest.hpp"

#include <random>
#include <string>
#include <vector>

#include "coopmsr/blocks.hpp"
#include "coopmsr/cluster.hpp"
#include "coopmsr/coop_repair.hpp"
#include "coopmsr/msrcode.hpp"

namespace coopmsr {

namespace {

struct Reporter {
    std::ostream& out;
    bool all_ok = true;

    void check(bool ok, const std::string& name) {
        out << (ok ? "ok:   " : "FAIL: ") << name << '\n';
        all_ok = all_ok && ok;
    }
};

bool blocks_suite(Reporter& rep, int rounds, std::uint64_t seed) {
    const Field f(65537);
    bool ok_all = true;
    for (int n : {4, 5, 6}) {
        for (int k = 1; k <= n - 2; ++k) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n * 100 + k));
            const auto t1 = BlockCodeSpec::with_defaults(BlockKind::type1, n, k, f);
            const auto t2 = BlockCodeSpec::with_defaults(BlockKind::type2, n, k, f);
            bool ok = check_mds(t1).ok && check_mds(t2).ok;

            for (int it = 0; it < rounds && ok; ++it) {
                const BlockCodeword w1 = random_block_codeword(t1, rng);
                const auto res = repair_type1(t1, w1);
                const auto oracle = block_erasure_decode(t1, w1, {1, 2});
                ok = ok && res.node1 == oracle[0] && res.node2 == oracle[1];
                ok = ok && res.transcript.bandwidth() == 2 * (n - 1) &&
                     res.transcript.access_total() == 2 * (n - 2);

                const BlockCodeword w2 = random_block_codeword(t2, rng);
                for (int j1 = 1; j1 <= t2.r && ok; ++j1)
                    for (int j2 = j1 + 1; j2 <= t2.r && ok; ++j2) {
                        const auto res2 = repair_type2(t2, w2, j1, j2);
                        const auto orc = block_erasure_decode(t2, w2, {j1, j2});
                        ok = ok && res2.node1 == orc[static_cast<std::size_t>(j1 - 1)] &&
                             res2.node2 == orc[static_cast<std::size_t>(j2 - 1)];
                        ok = ok && res2.transcript.bandwidth() == 2 * (n - 1) &&
                             res2.transcript.access_total() == 2 * (n - 2);
                    }
            }
            rep.check(ok, "blocks n=" + std::to_string(n) + " k=" + std::to_string(k));
            ok_all = ok_all && ok;
        }
    }

    bool rejected = false;
    try {
        const Field f13(13);
        std::vector<FieldElement> lam;
        for (int j = 1; j <= 5; ++j) lam.push_back(f13.elt(static_cast<std::uint64_t>(j)));
        BlockCodeSpec::type2(5, 2, f13, lam, f13.one());
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    rep.check(rejected, "blocks reject tau = 1");
    return ok_all && rejected;
}

bool formulas_suite(Reporter& rep) {
    struct Expect {
        int n, k, m;
        std::int64_t ell;
    };
    const Expect grid[] = {{4, 2, 6, 64},     {5, 3, 10, 1024},  {6, 4, 15, 32768},
                           {5, 2, 8, 6561},   {6, 3, 11, 177147}, {7, 4, 17, 129140163}};
    bool ok = true;
    for (const auto& e : grid) {
        const CodeParams p = make_params(e.n, e.k, 65537);
        const bool this_ok = p.m == e.m && p.ell == e.ell;
        rep.check(this_ok, "sub-packetization n=" + std::to_string(e.n) + " k=" + std::to_string(e.k));
        ok = ok && this_ok;
    }
    return ok;
}

bool pairmap_suite(Reporter& rep) {
    const PairMap pm = PairMap::build(7, 3);
    bool ok = pm.m() == 17;
    ok = ok && pm.pi(1, 2) == 1 && pm.pi(4, 6) == 2 && pm.pi(1, 4) == 3 && pm.pi(3, 5) == 8 &&
         pm.pi(6, 7) == 17 && pm.pi(4, 5) == 2 && pm.pi(2, 7) == 13 && pm.pi(1, 7) == 12;
    ok = ok && pm.omega0(2) == std::vector<int>{4, 7, 10, 13} && pm.omega1(2).empty();
    rep.check(ok, "pair map reproduces the (7,3) table");
    return ok;
}

bool repair_suite(Reporter& rep, bool full, std::uint64_t seed) {
    struct GridPoint {
        int n, k, codewords;
    };
    std::vector<GridPoint> grid = {{4, 2, 3}, {5, 2, 2}};
    if (full) grid = {{4, 2, 5}, {5, 3, 5}, {5, 2, 3}, {6, 3, 1}};

    bool ok_all = true;
    for (const auto& g : grid) {
        const CodeParams p = make_params(g.n, g.k, 65537);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(g.n * 1000 + g.k));
        bool ok = true;
        for (int it = 0; it < g.codewords && ok; ++it) {
            const Codeword cw = random_codeword(p, rng);
            for (int i1 = 1; i1 <= p.n && ok; ++i1) {
                for (int i2 = i1 + 1; i2 <= p.n && ok; ++i2) {
                    const RepairResult res = cooperative_repair(p, cw, i1, i2);
                    const Codeword oracle = erasure_decode(p, cw, {i1, i2});
                    ok = ok && res.node1 == oracle.nodes[static_cast<std::size_t>(i1 - 1)];
                    ok = ok && res.node2 == oracle.nodes[static_cast<std::size_t>(i2 - 1)];
                    ok = ok && res.node1 == cw.nodes[static_cast<std::size_t>(i1 - 1)];
                    ok = ok && res.node2 == cw.nodes[static_cast<std::size_t>(i2 - 1)];
                    ok = ok && check_optimal(res.transcript, p).ok();
                }
            }
        }
        rep.check(ok, "coop repair vs oracle (" + std::to_string(g.n) + "," + std::to_string(g.k) + ")");
        ok_all = ok_all && ok;
    }
    return ok_all;
}

bool mds_suite(Reporter& rep, bool full) {
    std::vector<std::pair<int, int>> grid = {{4, 2}, {5, 3}};
    if (full) grid.push_back({5, 2});
    bool ok_all = true;
    for (const auto& [n, k] : grid) {
        const CodeParams p = make_params(n, k, 65537);
        const auto verdict = verify_mds(p);
        rep.check(verdict.ok, "verify-mds (" + std::to_string(n) + "," + std::to_string(k) + ")");
        ok_all = ok_all && verdict.ok;
    }
    return ok_all;
}

bool cluster_suite(Reporter& rep, std::uint64_t seed) {
    const CodeParams p = make_params(4, 2, 65537);
    std::mt19937_64 rng(seed);
    std::vector<std::byte> bytes(777);
    for (auto& b : bytes) b = static_cast<std::byte>(rng() & 0xff);

    Cluster c = Cluster::ingest(p, bytes);
    bool ok = c.syndromes_clean();
    c.fail(1, 3);
    const auto transcripts = c.repair();
    for (const auto& t : transcripts) ok = ok && check_optimal(t, p).ok();
    ok = ok && c.syndromes_clean();
    ok = ok && c.reconstruct() == bytes;
    rep.check(ok, "cluster ingest/fail/repair/reconstruct round trip");
    return ok;
}

}  // namespace

bool run_selftest(const SelftestOptions& opt, std::ostream& out) {
    Reporter rep{out};
    const int block_rounds = opt.full_grid ? 100 : 20;

    blocks_suite(rep, block_rounds, opt.seed);
    if (!opt.blocks_only) {
        formulas_suite(rep);
        pairmap_suite(rep);
        mds_suite(rep, opt.full_grid);
        repair_suite(rep, opt.full_grid, opt.seed);
        cluster_suite(rep, opt.seed);
    }
    out << (rep.all_ok ? "selftest passed\n" : "selftest FAILED\n");
    return rep.all_ok;
}

}  // namespace coopmsr
