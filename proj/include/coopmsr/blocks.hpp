#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coopmsr/gf.hpp"

namespace coopmsr {

inline constexpr std::size_t kCheckMdsSubsetGuard = 100000;

enum class BlockKind { type1, type2 };

/// Parameters of one (n, k, ell = r) building-block array code. Type-I pins
/// the repairable pair to {1,2}; Type-II covers every pair inside [r].
struct BlockCodeSpec {
    BlockKind kind = BlockKind::type1;
    int n = 0, k = 0, r = 0;
    Field field;
    std::vector<FieldElement> lambda;  // n points
    std::vector<FieldElement> gamma;   // r-2 points, Type-I only
    FieldElement tau;                  // Type-II only

    static BlockCodeSpec type1(int n, int k, const Field& f, std::vector<FieldElement> lambda,
                               std::vector<FieldElement> gamma);
    static BlockCodeSpec type2(int n, int k, const Field& f, std::vector<FieldElement> lambda,
                               FieldElement tau);
    /// lambda_j = j, gamma_w = n + w, tau = p - 1.
    static BlockCodeSpec with_defaults(BlockKind kind, int n, int k, const Field& f);
};

/// The full r*ell x n*ell parity-check matrix (tiny for ell = r).
Matrix parity_matrix(const BlockCodeSpec& spec);

struct BlockMdsReport {
    bool ok = false;
    std::vector<int> failing_subset{};
    int subsets_checked = 0;
};

/// Checks that every r-subset of column blocks is invertible (exact rank).
BlockMdsReport check_mds(const BlockCodeSpec& spec, std::size_t subset_guard = kCheckMdsSubsetGuard);

using BlockCodeword = std::vector<Vec>;  // n nodes of r symbols

struct BlockRepairTranscript {
    std::vector<std::int64_t> per_helper_access;  // indexed by helper node - 1; 0 for newcomers
    std::int64_t downloaded = 0;
    std::int64_t collaborated = 0;

    std::int64_t bandwidth() const { return downloaded + collaborated; }
    std::int64_t access_total() const;
};

struct BlockRepairResult {
    Vec node1, node2;  // recovered contents of the two failed nodes
    BlockRepairTranscript transcript;
};

/// Cooperative repair of nodes {1, 2} of a Type-I code: each newcomer reads
/// one symbol per helper, solves one r x r system, and the two exchange one
/// symbol each.
BlockRepairResult repair_type1(const BlockCodeSpec& spec, const BlockCodeword& c);

/// Cooperative repair of {j1, j2} inside [r] of a Type-II code.
BlockRepairResult repair_type2(const BlockCodeSpec& spec, const BlockCodeword& c, int j1, int j2);

/// Dense erasure-decode oracle: recomputes the erased nodes from the rest.
BlockCodeword block_erasure_decode(const BlockCodeSpec& spec, const BlockCodeword& c,
                                   const std::vector<int>& erased);

/// Systematic encode (nodes 1..k carry data).
BlockCodeword block_encode(const BlockCodeSpec& spec, const std::vector<Vec>& data);

BlockCodeword random_block_codeword(const BlockCodeSpec& spec, std::mt19937_64& rng);

}  // namespace coopmsr
