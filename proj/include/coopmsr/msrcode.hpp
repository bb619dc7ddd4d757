#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "coopmsr/exec.hpp"
#include "coopmsr/gf.hpp"
#include "coopmsr/pairmap.hpp"
#include "coopmsr/rindex.hpp"

namespace coopmsr {

inline constexpr std::int64_t kVerifyMdsEllGuard = 8192;

/// Everything needed to regenerate one code deterministically: dimensions,
/// field, evaluation points, the pair partition and the index space.
struct CodeParams {
    int n = 0, k = 0, r = 0, m = 0;
    std::int64_t ell = 0;
    Field field;
    std::vector<FieldElement> lambda;  // lambda[j-1] for node j
    std::vector<FieldElement> gamma;   // gamma[w-1], w in [1, r-2]
    FieldElement tau;
    PairMap pairs;
    IndexSpace index;

    // x^(t-1) tables indexed [t-1][...]; tau_lambda_pow holds tau * lambda^(t-1).
    std::vector<std::vector<FieldElement>> lambda_pow;
    std::vector<std::vector<FieldElement>> gamma_pow;
    std::vector<std::vector<FieldElement>> tau_lambda_pow;

    std::uint64_t digest() const;
};

struct PointOverrides {
    std::vector<std::uint64_t> lambda{};
    std::vector<std::uint64_t> gamma{};
    std::optional<std::uint64_t> tau{};
};

/// Builds CodeParams over GF(prime) with defaults lambda_j = j,
/// gamma_w = n + w, tau = prime - 1. Requires prime > n + r - 2 and
/// 1 <= k <= n - 2.
CodeParams make_params(int n, int k, std::uint64_t prime, const PointOverrides& over = {});

/// One entry of a parity row: coefficient on symbol (node, coord).
struct RowEntry {
    std::int32_t node = 0;  // 1-based
    std::int64_t coord = 0;
    FieldElement coeff;

    friend bool operator==(const RowEntry&, const RowEntry&) = default;
};
using SparseRow = std::vector<RowEntry>;

/// Substitution coefficient: 1 if x < v, tau if x > v. x == v is never
/// queried and throws.
FieldElement coeff_f(const CodeParams& p, int x, int v);

/// 1 iff (rho in Omega_{j,0} and a_rho = 0) or (rho in Omega_{j,1} and a_rho = 1).
int coeff_chi(const CodeParams& p, std::int64_t a, int rho, int j);

/// Row (t, a) of the parity-check matrix, t in [1, r], a in [0, ell).
/// Generation never touches more than the row itself, so this works at any
/// sub-packetization. The returned entries are checked for column collisions.
SparseRow parity_row(const CodeParams& p, int t, std::int64_t a);

/// Appends the entries of row (t, a) to out without validation. digits must
/// hold the expansion of a (kernel fast path; same entries, same order).
void parity_row_into(const CodeParams& p, int t, std::int64_t a, const std::uint8_t* digits,
                     SparseRow& out);

struct Codeword {
    std::vector<Vec> nodes;  // n vectors of ell elements
};

Codeword zero_codeword(const CodeParams& p);

/// All r*ell syndrome components; component (t, a) lands at (t-1)*ell + a.
Vec syndrome(const CodeParams& p, const Codeword& c, Exec exec = Exec::parallel);
bool syndrome_is_zero(const CodeParams& p, const Codeword& c, Exec exec = Exec::parallel);

/// Systematic encode: nodes 1..k carry data verbatim, nodes k+1..n are solved
/// from the parity equations.
Codeword encode(const CodeParams& p, const std::vector<Vec>& data, Exec exec = Exec::parallel);

/// Recomputes the erased nodes (at most r of them) from the survivors by
/// exact elimination over the parity equations, then asserts a zero syndrome.
/// This is the generic oracle every repair path is checked against.
Codeword erasure_decode(const CodeParams& p, const Codeword& c, const std::vector<int>& erased,
                        Exec exec = Exec::parallel);

struct MdsVerdict {
    bool ok = false;
    std::vector<int> failing_subset{};
    int subsets_checked = 0;
};

/// Exact invertibility of every r-subset of column blocks of H.
MdsVerdict verify_mds(const CodeParams& p, std::int64_t ell_guard = kVerifyMdsEllGuard,
                      Exec exec = Exec::parallel);

Codeword random_codeword(const CodeParams& p, std::mt19937_64& rng, Exec exec = Exec::parallel);

}  // namespace coopmsr
