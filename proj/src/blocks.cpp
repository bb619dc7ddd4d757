#include "coopmsr/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace coopmsr {

namespace {

void check_dims(int n, int k) {
    if (n < 3 || k < 1 || k > n - 2)
        throw std::invalid_argument("block code needs n >= 3 and 1 <= k <= n-2");
}

void check_points_distinct(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    std::unordered_set<std::uint32_t> seen;
    for (const auto& e : a) seen.insert(e.value);
    for (const auto& e : b) seen.insert(e.value);
    if (seen.size() != a.size() + b.size())
        throw std::invalid_argument("evaluation points must be pairwise distinct");
}

}  // namespace

BlockCodeSpec BlockCodeSpec::type1(int n, int k, const Field& f, std::vector<FieldElement> lambda,
                                   std::vector<FieldElement> gamma) {
    check_dims(n, k);
    const int r = n - k;
    if (lambda.size() != static_cast<std::size_t>(n) || gamma.size() != static_cast<std::size_t>(r - 2))
        throw std::invalid_argument("Type-I needs n lambdas and r-2 gammas");
    check_points_distinct(lambda, gamma);
    return {BlockKind::type1, n, k, r, f, std::move(lambda), std::move(gamma), f.zero()};
}

BlockCodeSpec BlockCodeSpec::type2(int n, int k, const Field& f, std::vector<FieldElement> lambda,
                                   FieldElement tau) {
    check_dims(n, k);
    const int r = n - k;
    if (lambda.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("Type-II needs n lambdas");
    check_points_distinct(lambda, {});
    if (tau.value == 0 || tau.value == 1) throw std::invalid_argument("tau must avoid 0 and 1");
    return {BlockKind::type2, n, k, r, f, std::move(lambda), {}, tau};
}

BlockCodeSpec BlockCodeSpec::with_defaults(BlockKind kind, int n, int k, const Field& f) {
    check_dims(n, k);
    const int r = n - k;
    std::vector<FieldElement> lambda, gamma;
    for (int j = 1; j <= n; ++j) lambda.push_back(f.elt(static_cast<std::uint64_t>(j)));
    if (kind == BlockKind::type1) {
        for (int w = 1; w <= r - 2; ++w) gamma.push_back(f.elt(static_cast<std::uint64_t>(n + w)));
        return type1(n, k, f, std::move(lambda), std::move(gamma));
    }
    return type2(n, k, f, std::move(lambda), f.elt(f.modulus() - 1));
}

Matrix parity_matrix(const BlockCodeSpec& spec) {
    const int n = spec.n, r = spec.r, ell = spec.r;
    Matrix h = Matrix::zero(static_cast<std::size_t>(r) * ell, static_cast<std::size_t>(n) * ell,
                            spec.field);

    for (int t = 1; t <= r; ++t) {
        std::vector<FieldElement> lam, gam;
        for (const auto& l : spec.lambda) lam.push_back(pow(l, static_cast<std::uint64_t>(t - 1)));
        for (const auto& g : spec.gamma) gam.push_back(pow(g, static_cast<std::uint64_t>(t - 1)));
        const FieldElement taup = spec.kind == BlockKind::type2 ? spec.tau : spec.field.zero();

        auto block = [&](int j) -> std::size_t { return static_cast<std::size_t>((j - 1) * ell); };
        const std::size_t rbase = static_cast<std::size_t>((t - 1) * ell);

        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < ell; ++i) h.at(rbase + i, block(j) + i) = lam[j - 1];

        if (spec.kind == BlockKind::type1) {
            // Node 1 carries the gamma tail in row 0, node 2 in row 1.
            for (int w = 2; w <= r - 1; ++w) {
                h.at(rbase + 0, block(1) + w) = gam[w - 2];
                h.at(rbase + 1, block(2) + w) = gam[w - 2];
            }
        } else {
            // Row i-1 of block i couples node i with every other point; tau
            // scales the entries left of the diagonal.
            for (int i = 1; i <= r; ++i)
                for (int j = 1; j <= r; ++j) {
                    if (j == i) continue;
                    h.at(rbase + i - 1, block(i) + j - 1) = j < i ? taup * lam[j - 1] : lam[j - 1];
                }
        }
    }
    return h;
}

BlockMdsReport check_mds(const BlockCodeSpec& spec, std::size_t subset_guard) {
    const int n = spec.n, r = spec.r, ell = spec.r;

    std::size_t count = 1;
    for (int i = 1; i <= r; ++i) count = count * (n - r + i) / i;
    if (count > subset_guard)
        throw GuardLimitError("check_mds: " + std::to_string(count) + " subsets exceed guard");

    const Matrix h = parity_matrix(spec);
    BlockMdsReport report;
    report.ok = true;

    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (!report.ok) return;
        if (pick.size() == static_cast<std::size_t>(r)) {
            Matrix sub = Matrix::zero(static_cast<std::size_t>(r) * ell,
                                      static_cast<std::size_t>(r) * ell, spec.field);
            for (std::size_t c = 0; c < pick.size(); ++c)
                for (int i = 0; i < ell; ++i)
                    for (std::size_t row = 0; row < sub.rows(); ++row)
                        sub.at(row, c * ell + i) =
                            h.at(row, static_cast<std::size_t>((pick[c] - 1) * ell + i));
            ++report.subsets_checked;
            if (matrix_rank(sub) != sub.rows()) {
                report.ok = false;
                report.failing_subset = pick;
            }
            return;
        }
        for (int j = start; j <= n; ++j) {
            pick.push_back(j);
            self(self, j + 1);
            pick.pop_back();
        }
    };
    rec(rec, 1);
    return report;
}

namespace {

void check_block_codeword(const BlockCodeSpec& spec, const BlockCodeword& c) {
    if (c.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("block codeword has wrong node count");
    for (const auto& node : c)
        if (node.size() != static_cast<std::size_t>(spec.r))
            throw std::invalid_argument("block codeword node has wrong length");
}

std::int64_t t1_helpers(const BlockCodeSpec& spec) { return spec.n - 2; }

}  // namespace

std::int64_t BlockRepairTranscript::access_total() const {
    return std::accumulate(per_helper_access.begin(), per_helper_access.end(), std::int64_t{0});
}

BlockRepairResult repair_type1(const BlockCodeSpec& spec, const BlockCodeword& c) {
    if (spec.kind != BlockKind::type1)
        throw UnsupportedPatternError("repair_type1 needs a Type-I code");
    check_block_codeword(spec, c);
    const int n = spec.n, r = spec.r;
    const Field& f = spec.field;

    // Newcomer 1 solves (c_{1,0}, c_{1,2..r-1}, c_{2,0}) on the points
    // (lambda_1, gamma_1..gamma_{r-2}, lambda_2) from the row-0 checks;
    // newcomer 2 symmetrically from row 1.
    auto grs_solve = [&](int row, const std::vector<FieldElement>& points) {
        Matrix a = Matrix::zero(static_cast<std::size_t>(r), static_cast<std::size_t>(r), f);
        Vec rhs(static_cast<std::size_t>(r), f.zero());
        for (int t = 1; t <= r; ++t) {
            for (std::size_t col = 0; col < points.size(); ++col)
                a.at(t - 1, col) = pow(points[col], static_cast<std::uint64_t>(t - 1));
            FieldElement acc = f.zero();
            for (int j = 3; j <= n; ++j)
                acc += pow(spec.lambda[j - 1], static_cast<std::uint64_t>(t - 1)) *
                       c[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(row)];
            rhs[static_cast<std::size_t>(t - 1)] = -acc;
        }
        return solve_dense(a, rhs);
    };

    std::vector<FieldElement> pts1{spec.lambda[0]};
    for (const auto& g : spec.gamma) pts1.push_back(g);
    pts1.push_back(spec.lambda[1]);
    const Vec sol1 = grs_solve(0, pts1);  // c_{1,0}, c_{1,2..r-1}, c_{2,0}

    std::vector<FieldElement> pts2{spec.lambda[0], spec.lambda[1]};
    for (const auto& g : spec.gamma) pts2.push_back(g);
    const Vec sol2 = grs_solve(1, pts2);  // c_{1,1}, c_{2,1}, c_{2,2..r-1}

    // One symbol each way: node 1 hands over c_{2,0}, node 2 hands back c_{1,1}.
    const FieldElement c20 = sol1[static_cast<std::size_t>(r - 1)];
    const FieldElement c11 = sol2[0];

    BlockRepairResult res;
    res.node1.assign(static_cast<std::size_t>(r), f.zero());
    res.node2.assign(static_cast<std::size_t>(r), f.zero());
    res.node1[0] = sol1[0];
    res.node1[1] = c11;
    for (int w = 2; w <= r - 1; ++w) res.node1[static_cast<std::size_t>(w)] = sol1[static_cast<std::size_t>(w - 1)];
    res.node2[0] = c20;
    res.node2[1] = sol2[1];
    for (int w = 2; w <= r - 1; ++w) res.node2[static_cast<std::size_t>(w)] = sol2[static_cast<std::size_t>(w)];

    res.transcript.per_helper_access.assign(static_cast<std::size_t>(n), 0);
    for (int j = 3; j <= n; ++j) res.transcript.per_helper_access[static_cast<std::size_t>(j - 1)] = 2;
    res.transcript.downloaded = 2 * t1_helpers(spec);
    res.transcript.collaborated = 2;
    return res;
}

BlockRepairResult repair_type2(const BlockCodeSpec& spec, const BlockCodeword& c, int j1, int j2) {
    if (spec.kind != BlockKind::type2)
        throw UnsupportedPatternError("repair_type2 needs a Type-II code");
    check_block_codeword(spec, c);
    const int n = spec.n, r = spec.r;
    if (j1 < 1 || j2 <= j1 || j2 > r)
        throw UnsupportedPatternError("Type-II repairs pairs {j1 < j2} inside [r] only");
    const Field& f = spec.field;

    // Row rho-1 of the checks: the unknowns of newcomer `rho` sit on the
    // points lambda_1..lambda_r, with the partner symbol folded into one
    // bundled column.
    auto newcomer_solve = [&](int me, int other) {
        Matrix a = Matrix::zero(static_cast<std::size_t>(r), static_cast<std::size_t>(r), f);
        Vec rhs(static_cast<std::size_t>(r), f.zero());
        for (int t = 1; t <= r; ++t) {
            for (int j = 1; j <= r; ++j) {
                // Column j: c_{me,j-1}, scaled by tau left of the diagonal.
                // Column `other` is the bundled pair and keeps the plain power.
                FieldElement coeff = pow(spec.lambda[j - 1], static_cast<std::uint64_t>(t - 1));
                if (j < me && j != other) coeff *= spec.tau;
                a.at(t - 1, j - 1) = coeff;
            }
            FieldElement acc = f.zero();
            for (int j = 1; j <= n; ++j) {
                if (j == j1 || j == j2) continue;
                acc += pow(spec.lambda[j - 1], static_cast<std::uint64_t>(t - 1)) *
                       c[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(me - 1)];
            }
            rhs[static_cast<std::size_t>(t - 1)] = -acc;
        }
        // Column j (j != other): c_{me, j-1}; column `other`: the bundle.
        return solve_dense(a, rhs);
    };

    const Vec sol1 = newcomer_solve(j1, j2);
    const Vec sol2 = newcomer_solve(j2, j1);

    // Bundles: B1 = c_{j2,j1-1} + c_{j1,j2-1}, B2 = c_{j1,j2-1} + tau*c_{j2,j1-1}.
    const FieldElement b1 = sol1[static_cast<std::size_t>(j2 - 1)];
    const FieldElement b2 = sol2[static_cast<std::size_t>(j1 - 1)];
    const FieldElement det = inv(spec.tau - f.one());
    const FieldElement x = (b2 - b1) * det;  // c_{j2, j1-1}
    const FieldElement y = b1 - x;           // c_{j1, j2-1}

    BlockRepairResult res;
    res.node1.assign(static_cast<std::size_t>(r), f.zero());
    res.node2.assign(static_cast<std::size_t>(r), f.zero());
    for (int j = 1; j <= r; ++j) {
        if (j != j2) res.node1[static_cast<std::size_t>(j - 1)] = sol1[static_cast<std::size_t>(j - 1)];
        if (j != j1) res.node2[static_cast<std::size_t>(j - 1)] = sol2[static_cast<std::size_t>(j - 1)];
    }
    res.node1[static_cast<std::size_t>(j2 - 1)] = y;
    res.node2[static_cast<std::size_t>(j1 - 1)] = x;

    res.transcript.per_helper_access.assign(static_cast<std::size_t>(n), 0);
    for (int j = 1; j <= n; ++j)
        if (j != j1 && j != j2) res.transcript.per_helper_access[static_cast<std::size_t>(j - 1)] = 2;
    res.transcript.downloaded = 2 * (n - 2);
    res.transcript.collaborated = 2;
    return res;
}

BlockCodeword block_erasure_decode(const BlockCodeSpec& spec, const BlockCodeword& c,
                                   const std::vector<int>& erased) {
    check_block_codeword(spec, c);
    std::vector<int> e = erased;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.size() != erased.size()) throw std::invalid_argument("duplicate erased node");
    for (int node : e)
        if (node < 1 || node > spec.n) throw std::invalid_argument("erased node out of range");
    if (e.size() > static_cast<std::size_t>(spec.r))
        throw GuardLimitError("beyond MDS radius for the block code");
    if (e.empty()) return c;

    const int ell = spec.r;
    const Matrix h = parity_matrix(spec);
    const std::size_t rows = h.rows();
    const std::size_t cols = e.size() * static_cast<std::size_t>(ell);

    Matrix a = Matrix::zero(rows, cols, spec.field);
    for (std::size_t ei = 0; ei < e.size(); ++ei)
        for (int i = 0; i < ell; ++i)
            for (std::size_t row = 0; row < rows; ++row)
                a.at(row, ei * ell + i) = h.at(row, static_cast<std::size_t>((e[ei] - 1) * ell + i));

    Vec rhs(rows, spec.field.zero());
    for (std::size_t row = 0; row < rows; ++row) {
        FieldElement acc = spec.field.zero();
        for (int j = 1; j <= spec.n; ++j) {
            if (std::binary_search(e.begin(), e.end(), j)) continue;
            for (int i = 0; i < ell; ++i)
                acc += h.at(row, static_cast<std::size_t>((j - 1) * ell + i)) *
                       c[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
        }
        rhs[row] = -acc;
    }

    const EchelonSolver solver(a);
    const Vec x = solver.solve(rhs);

    BlockCodeword out = c;
    for (std::size_t ei = 0; ei < e.size(); ++ei)
        for (int i = 0; i < ell; ++i)
            out[static_cast<std::size_t>(e[ei] - 1)][static_cast<std::size_t>(i)] =
                x[ei * ell + static_cast<std::size_t>(i)];
    return out;
}

BlockCodeword block_encode(const BlockCodeSpec& spec, const std::vector<Vec>& data) {
    if (data.size() != static_cast<std::size_t>(spec.k))
        throw std::invalid_argument("block_encode needs k data vectors");
    BlockCodeword c(static_cast<std::size_t>(spec.n), Vec(static_cast<std::size_t>(spec.r), spec.field.zero()));
    std::vector<int> parity;
    for (int j = spec.k + 1; j <= spec.n; ++j) parity.push_back(j);
    for (int j = 1; j <= spec.k; ++j) {
        if (data[static_cast<std::size_t>(j - 1)].size() != static_cast<std::size_t>(spec.r))
            throw std::invalid_argument("data vector has wrong length");
        c[static_cast<std::size_t>(j - 1)] = data[static_cast<std::size_t>(j - 1)];
    }
    return block_erasure_decode(spec, c, parity);
}

BlockCodeword random_block_codeword(const BlockCodeSpec& spec, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, spec.field.modulus() - 1);
    std::vector<Vec> data(static_cast<std::size_t>(spec.k));
    for (auto& v : data)
        for (int i = 0; i < spec.r; ++i) v.push_back(spec.field.elt(dist(rng)));
    return block_encode(spec, data);
}

}  // namespace coopmsr
