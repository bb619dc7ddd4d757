#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coopmsr/exec.hpp"
#include "coopmsr/msrcode.hpp"

namespace coopmsr {

/// Coordinate-level access sets are kept in transcripts only up to this
/// sub-packetization; above it only counts are recorded.
inline constexpr std::int64_t kAccessLogMaxEll = std::int64_t{1} << 16;

/// Which parity rows each newcomer uses: A(u, v1)/A(u, v2) for an intra-group
/// pair, A(rho, 0)/A(rho, 1) for a cross-group pair.
struct RepairPlan {
    int i1 = 0, i2 = 0;
    bool intra = false;
    int u = 0, v1 = 0, v2 = 0;  // intra case
    int rho = 0;                // cross case

    int row_digit() const { return intra ? u : rho; }
    int side_value(int side) const { return intra ? (side == 0 ? v1 : v2) : side; }
};

RepairPlan make_repair_plan(const CodeParams& p, int i1, int i2);

/// Symbols one helper contributes: its coordinates over both newcomers' row
/// sets, read verbatim.
struct HelperRead {
    int helper = 0;
    Vec side1, side2;  // ascending-coordinate order over each axis set
};

HelperRead helper_read(const CodeParams& p, const Vec& helper_node, int helper,
                       const RepairPlan& plan);

struct CollabRound {
    int round = 0;
    std::int64_t from_i1 = 0;  // symbols i1 -> i2
    std::int64_t from_i2 = 0;  // symbols i2 -> i1
};

struct RepairTranscript {
    int i1 = 0, i2 = 0;
    bool intra = false;
    int class_index = 0;  // u or rho
    std::vector<int> helpers;
    std::vector<std::int64_t> per_helper_access;            // parallel to helpers
    std::vector<std::vector<std::int64_t>> per_helper_coords;  // empty above kAccessLogMaxEll
    std::int64_t downloaded = 0;
    std::int64_t collaborated = 0;
    std::vector<CollabRound> collab_rounds;
    int rounds = 0;
    int solver_passes = 0;  // cross-group fixpoint diagnostic
    std::int64_t bound_gamma = 0;
    std::int64_t bound_gamma_access = 0;

    std::int64_t gamma() const { return downloaded + collaborated; }
    std::int64_t gamma_access() const;

    std::string to_json() const;
};

struct RepairResult {
    Vec node1, node2;
    RepairTranscript transcript;
};

/// Cut-set values at d = n-2, h = 2: gamma = 2(n-1)ell/r and
/// gamma_a = 2(n-2)ell/r.
std::pair<std::int64_t, std::int64_t> repair_bounds(const CodeParams& p);

/// Runs the two-phase cooperative repair of the pair {i1, i2}; reads only the
/// surviving nodes of c. Dispatches on the pair class.
RepairResult cooperative_repair(const CodeParams& p, const Codeword& c, int i1, int i2,
                                Exec exec = Exec::parallel);

/// The two protocol engines, callable directly with pre-read helper data.
RepairResult repair_intra(const CodeParams& p, const RepairPlan& plan,
                          const std::vector<HelperRead>& helpers, Exec exec = Exec::parallel);
RepairResult repair_cross(const CodeParams& p, const RepairPlan& plan,
                          const std::vector<HelperRead>& helpers, Exec exec = Exec::parallel);

struct OptimalityVerdict {
    bool gamma_ok = false;
    bool access_ok = false;
    bool verbatim_ok = false;  // per-helper transmitted == per-helper accessed
    std::int64_t gamma = 0, gamma_access = 0;
    std::int64_t bound_gamma = 0, bound_gamma_access = 0;

    bool ok() const { return gamma_ok && access_ok && verbatim_ok; }
};

/// Compares a finished transcript against the cut-set values with exact
/// equality.
OptimalityVerdict check_optimal(const RepairTranscript& t, const CodeParams& p);

}  // namespace coopmsr
