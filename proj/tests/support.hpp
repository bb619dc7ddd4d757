#pragma once

// Shared test helpers, most importantly an independent dense construction of
// the parity-check matrix: every (a, b) entry is classified directly from the
// defining cases, with no shared code with the lazy row generator.

#include <cstdint>
#include <random>
#include <vector>

#include "coopmsr/msrcode.hpp"

namespace coopmsr::testing {

/// Entry (t, j, a, b) of H evaluated from the case definition. Positions are
/// 1-based for t and j, 0-based for a and b.
inline FieldElement dense_entry(const CodeParams& p, int t, int j, std::int64_t a, std::int64_t b) {
    const auto& idx = p.index;
    const auto lam = [&](int node) {
        return pow(p.lambda[static_cast<std::size_t>(node - 1)], static_cast<std::uint64_t>(t - 1));
    };
    const auto gam = [&](int w) {
        return pow(p.gamma[static_cast<std::size_t>(w - 1)], static_cast<std::uint64_t>(t - 1));
    };

    if (a == b) return lam(j);

    // Find the digit positions where a and b differ.
    int diff_pos = 0, diff_count = 0;
    for (int i = 1; i <= p.m; ++i) {
        if (idx.digit(a, i) != idx.digit(b, i)) {
            diff_pos = i;
            ++diff_count;
        }
    }
    if (diff_count != 1) return p.field.zero();

    const int i = diff_pos;
    const int ai = idx.digit(a, i);
    const int bi = idx.digit(b, i);

    if (p.pairs.grouped(j)) {
        const int u = p.pairs.group_of(j);
        const int v = p.pairs.group_slot(j);
        if (i == u && ai == v) {
            const int owner = (u - 1) * p.r + bi + 1;
            return bi < v ? p.tau * lam(owner) : lam(owner);
        }
    }
    if (i > p.pairs.groups() && bi >= 2 && bi <= p.r - 1) {
        const auto& o0 = p.pairs.omega0(j);
        const auto& o1 = p.pairs.omega1(j);
        const bool in0 = std::find(o0.begin(), o0.end(), i) != o0.end();
        const bool in1 = std::find(o1.begin(), o1.end(), i) != o1.end();
        if ((ai == 0 && in0) || (ai == 1 && in1)) return gam(bi - 1);
    }
    return p.field.zero();
}

/// Full dense H (r*ell x n*ell), rows (t-1)*ell + a, columns (j-1)*ell + b.
inline Matrix dense_parity_matrix(const CodeParams& p) {
    const std::size_t ell = static_cast<std::size_t>(p.ell);
    Matrix h = Matrix::zero(static_cast<std::size_t>(p.r) * ell, static_cast<std::size_t>(p.n) * ell,
                            p.field);
    for (int t = 1; t <= p.r; ++t)
        for (std::int64_t a = 0; a < p.ell; ++a)
            for (int j = 1; j <= p.n; ++j)
                for (std::int64_t b = 0; b < p.ell; ++b)
                    h.at(static_cast<std::size_t>(t - 1) * ell + static_cast<std::size_t>(a),
                         static_cast<std::size_t>(j - 1) * ell + static_cast<std::size_t>(b)) =
                        dense_entry(p, t, j, a, b);
    return h;
}

/// Columns of dense H restricted to a node subset, as one square/rect matrix.
inline Matrix dense_column_blocks(const CodeParams& p, const Matrix& h, const std::vector<int>& nodes) {
    const std::size_t ell = static_cast<std::size_t>(p.ell);
    Matrix sub = Matrix::zero(h.rows(), nodes.size() * ell, p.field);
    for (std::size_t c = 0; c < nodes.size(); ++c)
        for (std::size_t b = 0; b < ell; ++b)
            for (std::size_t row = 0; row < h.rows(); ++row)
                sub.at(row, c * ell + b) =
                    h.at(row, static_cast<std::size_t>(nodes[c] - 1) * ell + b);
    return sub;
}

inline Vec random_vec(const Field& f, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
    Vec v;
    v.reserve(len);
    for (std::size_t i = 0; i < len; ++i) v.push_back(f.elt(dist(rng)));
    return v;
}

}  // namespace coopmsr::testing
