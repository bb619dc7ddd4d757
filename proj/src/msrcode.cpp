#include "coopmsr/msrcode.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>

namespace coopmsr {

namespace {

constexpr int kMaxDigits = 64;  // kMaxIndexBits bounds m well below this

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

std::uint64_t CodeParams::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    h = fnv1a(h, static_cast<std::uint64_t>(n));
    h = fnv1a(h, static_cast<std::uint64_t>(k));
    h = fnv1a(h, field.modulus());
    h = fnv1a(h, static_cast<std::uint64_t>(m));
    for (const auto& l : lambda) h = fnv1a(h, l.value);
    for (const auto& g : gamma) h = fnv1a(h, g.value);
    h = fnv1a(h, tau.value);
    return h;
}

CodeParams make_params(int n, int k, std::uint64_t prime, const PointOverrides& over) {
    if (n < 3 || k < 1 || k > n - 2)
        throw std::invalid_argument("need n >= 3 and 1 <= k <= n-2, got n=" + std::to_string(n) +
                                    " k=" + std::to_string(k));
    const int r = n - k;
    Field field(prime);
    if (prime <= static_cast<std::uint64_t>(n + r - 2))
        throw std::invalid_argument("field too small: need p > n+r-2 = " + std::to_string(n + r - 2));

    std::vector<FieldElement> lambda, gamma;
    if (over.lambda.empty()) {
        for (int j = 1; j <= n; ++j) lambda.push_back(field.elt(static_cast<std::uint64_t>(j)));
    } else {
        if (over.lambda.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("lambda override must have n values");
        for (auto v : over.lambda) lambda.push_back(field.elt(v));
    }
    if (over.gamma.empty()) {
        for (int w = 1; w <= r - 2; ++w) gamma.push_back(field.elt(static_cast<std::uint64_t>(n + w)));
    } else {
        if (over.gamma.size() != static_cast<std::size_t>(r - 2))
            throw std::invalid_argument("gamma override must have r-2 values");
        for (auto v : over.gamma) gamma.push_back(field.elt(v));
    }
    const FieldElement tau = field.elt(over.tau.value_or(prime - 1));
    if (tau.value == 0 || tau.value == 1)
        throw std::invalid_argument("tau must avoid 0 and 1");

    std::unordered_set<std::uint32_t> points;
    for (const auto& e : lambda) points.insert(e.value);
    for (const auto& e : gamma) points.insert(e.value);
    if (points.size() != static_cast<std::size_t>(n + r - 2))
        throw std::invalid_argument("lambda and gamma points must be pairwise distinct");

    PairMap pairs = PairMap::build(n, r);
    IndexSpace index(r, pairs.m(), pairs.groups());

    CodeParams p{n, k, r, pairs.m(), index.size(), field, std::move(lambda), std::move(gamma),
                 tau,    std::move(pairs), std::move(index), {}, {}, {}};

    p.lambda_pow.resize(static_cast<std::size_t>(r));
    p.gamma_pow.resize(static_cast<std::size_t>(r));
    p.tau_lambda_pow.resize(static_cast<std::size_t>(r));
    for (int t = 1; t <= r; ++t) {
        auto& lp = p.lambda_pow[static_cast<std::size_t>(t - 1)];
        auto& gp = p.gamma_pow[static_cast<std::size_t>(t - 1)];
        auto& tp = p.tau_lambda_pow[static_cast<std::size_t>(t - 1)];
        for (const auto& l : p.lambda) {
            lp.push_back(pow(l, static_cast<std::uint64_t>(t - 1)));
            tp.push_back(p.tau * lp.back());
        }
        for (const auto& g : p.gamma) gp.push_back(pow(g, static_cast<std::uint64_t>(t - 1)));
    }
    return p;
}

FieldElement coeff_f(const CodeParams& p, int x, int v) {
    if (x == v) throw std::invalid_argument("coeff_f is undefined on the diagonal (x == v)");
    return x < v ? p.field.one() : p.tau;
}

int coeff_chi(const CodeParams& p, std::int64_t a, int rho, int j) {
    if (rho <= p.pairs.groups() || rho > p.m)
        throw std::invalid_argument("chi digit position must lie in [g+1, m]");
    const int d = p.index.digit(a, rho);
    if (d == 0) {
        const auto& o = p.pairs.omega0(j);
        return std::binary_search(o.begin(), o.end(), rho) ? 1 : 0;
    }
    if (d == 1) {
        const auto& o = p.pairs.omega1(j);
        return std::binary_search(o.begin(), o.end(), rho) ? 1 : 0;
    }
    return 0;
}

void parity_row_into(const CodeParams& p, int t, std::int64_t a, const std::uint8_t* digits,
                     SparseRow& out) {
    const auto& idx = p.index;
    const auto& lam = p.lambda_pow[static_cast<std::size_t>(t - 1)];
    const auto& taulam = p.tau_lambda_pow[static_cast<std::size_t>(t - 1)];
    const auto& gam = p.gamma_pow[static_cast<std::size_t>(t - 1)];
    const int r = p.r;
    const int grouped_nodes = p.pairs.groups() * r;

    for (int j = 1; j <= p.n; ++j) {
        out.push_back({j, a, lam[static_cast<std::size_t>(j - 1)]});
        if (j <= grouped_nodes) {
            const int u = (j - 1) / r + 1;
            const int v = (j - 1) % r;
            if (digits[u - 1] == v) {
                for (int v2 = 0; v2 < r; ++v2) {
                    if (v2 == v) continue;
                    const std::int64_t b = idx.substitute_known(a, u, v, v2);
                    const int node2 = (u - 1) * r + v2;  // 0-based index of the point owner
                    out.push_back({j, b,
                                   v2 < v ? taulam[static_cast<std::size_t>(node2)]
                                          : lam[static_cast<std::size_t>(node2)]});
                }
            }
        }
        if (r > 2) {
            for (int rho : p.pairs.omega0(j)) {
                if (digits[rho - 1] != 0) continue;
                for (int w = 2; w <= r - 1; ++w)
                    out.push_back({j, idx.substitute_known(a, rho, 0, w),
                                   gam[static_cast<std::size_t>(w - 2)]});
            }
            for (int rho : p.pairs.omega1(j)) {
                if (digits[rho - 1] != 1) continue;
                for (int w = 2; w <= r - 1; ++w)
                    out.push_back({j, idx.substitute_known(a, rho, 1, w),
                                   gam[static_cast<std::size_t>(w - 2)]});
            }
        }
    }
}

SparseRow parity_row(const CodeParams& p, int t, std::int64_t a) {
    if (t < 1 || t > p.r) throw std::invalid_argument("parity row index t out of [1, r]");
    if (a < 0 || a >= p.ell) throw std::invalid_argument("parity row label a out of [0, ell)");
    std::uint8_t digits[kMaxDigits];
    p.index.expand_into(a, digits);
    SparseRow row;
    parity_row_into(p, t, a, digits, row);

    SparseRow sorted = row;
    std::sort(sorted.begin(), sorted.end(), [](const RowEntry& x, const RowEntry& y) {
        return std::pair(x.node, x.coord) < std::pair(y.node, y.coord);
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].node == sorted[i - 1].node && sorted[i].coord == sorted[i - 1].coord)
            throw InternalError("parity row generation produced colliding entries");
    return row;
}

Codeword zero_codeword(const CodeParams& p) {
    Codeword c;
    c.nodes.assign(static_cast<std::size_t>(p.n), Vec(static_cast<std::size_t>(p.ell), p.field.zero()));
    return c;
}

namespace {

void check_codeword_shape(const CodeParams& p, const Codeword& c) {
    if (c.nodes.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("codeword has wrong node count");
    for (const auto& node : c.nodes)
        if (node.size() != static_cast<std::size_t>(p.ell))
            throw std::invalid_argument("codeword node has wrong length");
}

}  // namespace

Vec syndrome(const CodeParams& p, const Codeword& c, Exec exec) {
    check_codeword_shape(p, c);
    Vec out(static_cast<std::size_t>(p.r) * static_cast<std::size_t>(p.ell), p.field.zero());
    for_each_chunk(exec, p.ell, [&](std::int64_t lo, std::int64_t hi) {
        SparseRow row;
        row.reserve(64);
        std::uint8_t digits[kMaxDigits];
        for (std::int64_t a = lo; a < hi; ++a) {
            p.index.expand_into(a, digits);
            for (int t = 1; t <= p.r; ++t) {
                row.clear();
                parity_row_into(p, t, a, digits, row);
                FieldElement acc = p.field.zero();
                for (const auto& e : row)
                    acc += e.coeff * c.nodes[static_cast<std::size_t>(e.node - 1)]
                                            [static_cast<std::size_t>(e.coord)];
                out[static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(p.ell) +
                    static_cast<std::size_t>(a)] = acc;
            }
        }
    });
    return out;
}

bool syndrome_is_zero(const CodeParams& p, const Codeword& c, Exec exec) {
    const Vec s = syndrome(p, c, exec);
    return std::all_of(s.begin(), s.end(), [](const FieldElement& e) { return e.value == 0; });
}

namespace {

// Exact solver for the symbols of an erased node set E. The parity equations
// split by coordinate: fixing every digit outside the groups of the erased
// grouped nodes yields an independent dense system whose matrix is the same
// for every such block, and whose couplings to other blocks only reach
// already-solved coordinates when blocks are processed in suffix-weight
// order. One factorization therefore serves the whole decode.
struct ErasureSystem {
    std::vector<int> erased;        // sorted, 1-based
    std::vector<int> ue;            // group digit positions of erased grouped nodes, sorted
    std::vector<std::int64_t> ue_pow;
    std::vector<int> free_pos;      // digit positions outside ue, ascending
    std::int64_t block_size = 1;    // r^|ue|
    int q = 0;
    Matrix matrix = Matrix(0, 0, FieldElement{});
    std::unique_ptr<EchelonSolver> solver;  // absent for rank-only use

    std::size_t col(int erased_idx, std::int64_t d) const {
        return static_cast<std::size_t>(erased_idx) * static_cast<std::size_t>(block_size) +
               static_cast<std::size_t>(d);
    }
    std::size_t row(int t, std::int64_t d) const {
        return static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(block_size) +
               static_cast<std::size_t>(d);
    }
};

ErasureSystem build_erasure_system(const CodeParams& p, std::vector<int> erased,
                                   bool with_solver = true) {
    std::sort(erased.begin(), erased.end());
    ErasureSystem sys;
    sys.erased = std::move(erased);
    sys.q = static_cast<int>(sys.erased.size());

    for (int node : sys.erased)
        if (p.pairs.grouped(node)) {
            const int u = p.pairs.group_of(node);
            if (sys.ue.empty() || sys.ue.back() != u) sys.ue.push_back(u);
        }
    for (int u : sys.ue) {
        sys.ue_pow.push_back(p.index.power(u - 1));
        sys.block_size *= p.r;
    }
    for (int pos = 1; pos <= p.m; ++pos)
        if (std::find(sys.ue.begin(), sys.ue.end(), pos) == sys.ue.end())
            sys.free_pos.push_back(pos);

    // Representative block: free digits pinned to r-1, so no pair-digit rule
    // fires and the assembled matrix holds exactly the in-block couplings.
    std::int64_t rep = 0;
    for (int pos : sys.free_pos) rep += static_cast<std::int64_t>(p.r - 1) * p.index.power(pos - 1);

    const std::size_t rows = static_cast<std::size_t>(p.r) * static_cast<std::size_t>(sys.block_size);
    const std::size_t cols = static_cast<std::size_t>(sys.q) * static_cast<std::size_t>(sys.block_size);
    Matrix m(rows, cols, p.field.zero());

    std::uint8_t digits[kMaxDigits];
    SparseRow rowbuf;
    for (std::int64_t d = 0; d < sys.block_size; ++d) {
        std::int64_t a = rep;
        std::int64_t rem = d;
        for (std::size_t i = 0; i < sys.ue.size(); ++i) {
            a += (rem % p.r) * sys.ue_pow[i];
            rem /= p.r;
        }
        p.index.expand_into(a, digits);
        for (int t = 1; t <= p.r; ++t) {
            rowbuf.clear();
            parity_row_into(p, t, a, digits, rowbuf);
            for (const auto& e : rowbuf) {
                const auto it = std::lower_bound(sys.erased.begin(), sys.erased.end(), e.node);
                if (it == sys.erased.end() || *it != e.node) continue;
                // In-block coordinate: digits outside ue agree with a.
                std::int64_t d2 = 0, scale = 1;
                std::int64_t probe = rep;
                for (std::size_t i = 0; i < sys.ue.size(); ++i) {
                    const std::int64_t dig = (e.coord / sys.ue_pow[i]) % p.r;
                    d2 += dig * scale;
                    scale *= p.r;
                    probe += dig * sys.ue_pow[i];
                }
                if (probe != e.coord)
                    throw InternalError("representative parity row reaches outside its block");
                const int eidx = static_cast<int>(it - sys.erased.begin());
                auto& cell = m.at(sys.row(t, d), sys.col(eidx, d2));
                if (cell.value != 0) throw InternalError("duplicate block-matrix entry");
                cell = e.coeff;
            }
        }
    }
    sys.matrix = std::move(m);
    if (with_solver) sys.solver = std::make_unique<EchelonSolver>(sys.matrix);
    return sys;
}

// Solves every erased symbol in cw, assuming survivors are filled in.
void solve_erased(const CodeParams& p, Codeword& cw, const ErasureSystem& sys, Exec exec) {
    const EchelonSolver& solver = *sys.solver;
    const std::int64_t nblocks = p.ell / sys.block_size;

    std::vector<std::uint8_t> solved(static_cast<std::size_t>(sys.q) *
                                         static_cast<std::size_t>(p.ell),
                                     0);
    auto solved_at = [&](int eidx, std::int64_t coord) -> std::uint8_t& {
        return solved[static_cast<std::size_t>(eidx) * static_cast<std::size_t>(p.ell) +
                      static_cast<std::size_t>(coord)];
    };

    // Bucket blocks by suffix weight of their fixed digits.
    const int shells = p.m - p.pairs.groups() + 1;
    std::vector<std::vector<std::int64_t>> by_shell(static_cast<std::size_t>(shells));
    for (std::int64_t phi = 0; phi < nblocks; ++phi) {
        std::int64_t rem = phi;
        int w = 0;
        for (int pos : sys.free_pos) {
            const int dig = static_cast<int>(rem % p.r);
            rem /= p.r;
            if (pos > p.pairs.groups() && dig <= 1) ++w;
        }
        by_shell[static_cast<std::size_t>(w)].push_back(phi);
    }

    const std::size_t rows = static_cast<std::size_t>(p.r) * static_cast<std::size_t>(sys.block_size);
    for (const auto& bucket : by_shell) {
        for_each_index(exec, static_cast<std::int64_t>(bucket.size()), [&](std::int64_t bi) {
            const std::int64_t phi = bucket[static_cast<std::size_t>(bi)];
            std::int64_t base = 0;
            {
                std::int64_t rem = phi;
                for (int pos : sys.free_pos) {
                    base += (rem % p.r) * p.index.power(pos - 1);
                    rem /= p.r;
                }
            }
            Vec rhs(rows, p.field.zero());
            SparseRow rowbuf;
            rowbuf.reserve(64);
            std::uint8_t digits[kMaxDigits];
            for (std::int64_t d = 0; d < sys.block_size; ++d) {
                std::int64_t a = base;
                std::int64_t rem = d;
                for (std::size_t i = 0; i < sys.ue.size(); ++i) {
                    a += (rem % p.r) * sys.ue_pow[i];
                    rem /= p.r;
                }
                p.index.expand_into(a, digits);
                for (int t = 1; t <= p.r; ++t) {
                    rowbuf.clear();
                    parity_row_into(p, t, a, digits, rowbuf);
                    FieldElement acc = p.field.zero();
                    for (const auto& e : rowbuf) {
                        const auto it = std::lower_bound(sys.erased.begin(), sys.erased.end(), e.node);
                        const bool is_erased = it != sys.erased.end() && *it == e.node;
                        if (is_erased) {
                            // In-block unknowns stay on the left; cross-block
                            // references reach a lower shell, already solved.
                            bool in_block = e.coord == a;
                            for (std::size_t i = 0; i < sys.ue.size() && !in_block; ++i) {
                                const std::int64_t dig_a = (a / sys.ue_pow[i]) % p.r;
                                const std::int64_t dig_b = (e.coord / sys.ue_pow[i]) % p.r;
                                if (dig_a != dig_b && e.coord == a + (dig_b - dig_a) * sys.ue_pow[i])
                                    in_block = true;
                            }
                            if (in_block) continue;
                            const int eidx = static_cast<int>(it - sys.erased.begin());
                            if (!solved_at(eidx, e.coord))
                                throw InternalError("block solve referenced an unsolved symbol");
                            acc += e.coeff * cw.nodes[static_cast<std::size_t>(e.node - 1)]
                                                     [static_cast<std::size_t>(e.coord)];
                        } else {
                            acc += e.coeff * cw.nodes[static_cast<std::size_t>(e.node - 1)]
                                                     [static_cast<std::size_t>(e.coord)];
                        }
                    }
                    rhs[sys.row(t, d)] = -acc;
                }
            }
            const Vec x = solver.solve(rhs);
            for (int eidx = 0; eidx < sys.q; ++eidx) {
                for (std::int64_t d = 0; d < sys.block_size; ++d) {
                    std::int64_t coord = base;
                    std::int64_t rem = d;
                    for (std::size_t i = 0; i < sys.ue.size(); ++i) {
                        coord += (rem % p.r) * sys.ue_pow[i];
                        rem /= p.r;
                    }
                    cw.nodes[static_cast<std::size_t>(sys.erased[static_cast<std::size_t>(eidx)] - 1)]
                            [static_cast<std::size_t>(coord)] = x[sys.col(eidx, d)];
                    solved_at(eidx, coord) = 1;
                }
            }
        });
    }
}

}  // namespace

namespace {

// The parity-node system depends only on the parameters, so encode reuses one
// factorization per distinct CodeParams.
const ErasureSystem& cached_parity_system(const CodeParams& p) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<ErasureSystem>> cache;

    std::string key = std::to_string(p.n) + '/' + std::to_string(p.k) + '/' +
                      std::to_string(p.field.modulus()) + '/' + std::to_string(p.tau.value);
    for (const auto& e : p.lambda) key += ',' + std::to_string(e.value);
    for (const auto& e : p.gamma) key += ';' + std::to_string(e.value);

    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<int> parity_nodes;
        for (int j = p.k + 1; j <= p.n; ++j) parity_nodes.push_back(j);
        it = cache.emplace(key, std::make_unique<ErasureSystem>(
                                    build_erasure_system(p, parity_nodes)))
                 .first;
    }
    return *it->second;
}

}  // namespace

Codeword encode(const CodeParams& p, const std::vector<Vec>& data, Exec exec) {
    if (data.size() != static_cast<std::size_t>(p.k))
        throw std::invalid_argument("encode needs k data vectors");
    for (const auto& d : data)
        if (d.size() != static_cast<std::size_t>(p.ell))
            throw std::invalid_argument("data vector has wrong length");

    Codeword cw = zero_codeword(p);
    for (int j = 0; j < p.k; ++j) cw.nodes[static_cast<std::size_t>(j)] = data[static_cast<std::size_t>(j)];

    solve_erased(p, cw, cached_parity_system(p), exec);
    return cw;
}

Codeword erasure_decode(const CodeParams& p, const Codeword& c, const std::vector<int>& erased,
                        Exec exec) {
    check_codeword_shape(p, c);
    std::vector<int> e = erased;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.size() != erased.size()) throw std::invalid_argument("duplicate erased node");
    for (int node : e)
        if (node < 1 || node > p.n) throw std::invalid_argument("erased node out of range");
    if (e.size() > static_cast<std::size_t>(p.r))
        throw GuardLimitError("beyond MDS radius: " + std::to_string(e.size()) + " erasures > r = " +
                              std::to_string(p.r));
    if (e.empty()) return c;

    Codeword cw = c;
    for (int node : e)
        std::fill(cw.nodes[static_cast<std::size_t>(node - 1)].begin(),
                  cw.nodes[static_cast<std::size_t>(node - 1)].end(), p.field.zero());

    const ErasureSystem sys = build_erasure_system(p, e);
    solve_erased(p, cw, sys, exec);

    if (!syndrome_is_zero(p, cw, exec))
        throw InconsistentDataError("decoded word violates the parity checks; survivors corrupt?");
    return cw;
}

MdsVerdict verify_mds(const CodeParams& p, std::int64_t ell_guard, Exec exec) {
    if (p.ell > ell_guard)
        throw GuardLimitError("verify_mds guard: ell = " + std::to_string(p.ell) + " exceeds " +
                              std::to_string(ell_guard) + "; use smaller parameters");

    std::vector<std::vector<int>> subsets;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (pick.size() == static_cast<std::size_t>(p.r)) {
            subsets.push_back(pick);
            return;
        }
        for (int j = start; j <= p.n; ++j) {
            pick.push_back(j);
            self(self, j + 1);
            pick.pop_back();
        }
    };
    rec(rec, 1);

    std::vector<std::uint8_t> ok(subsets.size(), 0);
    for_each_index(exec, static_cast<std::int64_t>(subsets.size()), [&](std::int64_t i) {
        const ErasureSystem sys =
            build_erasure_system(p, subsets[static_cast<std::size_t>(i)], /*with_solver=*/false);
        ok[static_cast<std::size_t>(i)] =
            matrix_rank(sys.matrix) == sys.matrix.cols() ? 1 : 0;
    });

    MdsVerdict verdict;
    verdict.subsets_checked = static_cast<int>(subsets.size());
    verdict.ok = true;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (!ok[i]) {
            verdict.ok = false;
            verdict.failing_subset = subsets[i];
            break;
        }
    }
    return verdict;
}

Codeword random_codeword(const CodeParams& p, std::mt19937_64& rng, Exec exec) {
    std::uniform_int_distribution<std::uint32_t> dist(0, p.field.modulus() - 1);
    std::vector<Vec> data(static_cast<std::size_t>(p.k));
    for (auto& v : data) {
        v.reserve(static_cast<std::size_t>(p.ell));
        for (std::int64_t i = 0; i < p.ell; ++i) v.push_back(p.field.elt(dist(rng)));
    }
    return encode(p, data, exec);
}

}  // namespace coopmsr
