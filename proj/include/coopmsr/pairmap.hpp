#pragma once

#include <utility>
#include <vector>

#include "coopmsr/errors.hpp"

namespace coopmsr {

/// Partition of all node pairs into the intra-group classes P_1..P_g (nodes
/// (u-1)r+1 .. ur) and the cross-group class P_0, together with the map pi
/// sending P_u to u and enumerating P_0 bijectively onto [g+1, m].
///
/// The P_0 enumeration order is pinned: pairs sorted ascending by (j', j)
/// receive values g+1, g+2, ... This makes every derived structure
/// reproducible across runs and implementations.
class PairMap {
public:
    static PairMap build(int n, int r);

    int n() const { return n_; }
    int r() const { return r_; }
    int groups() const { return g_; }
    int m() const { return m_; }

    static int index_count(int n, int r);

    /// pi(j1, j2); requires 1 <= j1 < j2 <= n.
    int pi(int j1, int j2) const;

    struct Classification {
        bool intra = false;
        int index = 0;  // u in [1, g] if intra, rho in [g+1, m] otherwise
    };
    Classification classify(int i1, int i2) const;

    /// {pi(j, j2) : j < j2, (j, j2) in P_0}, sorted ascending.
    const std::vector<int>& omega0(int j) const;
    /// {pi(j1, j) : j1 < j, (j1, j) in P_0}, sorted ascending.
    const std::vector<int>& omega1(int j) const;

    /// The unique P_0 pair with pi value rho, rho in [g+1, m].
    std::pair<int, int> cross_pair(int rho) const;

    bool grouped(int node) const { return node <= r_ * g_; }
    int group_of(int node) const;   // u, 1-based
    int group_slot(int node) const; // v in [0, r-1]

private:
    PairMap(int n, int r);
    void check_node(int j) const;

    int n_, r_, g_, m_;
    std::vector<int> pi_;                        // (n+1)*(n+1), row-major
    std::vector<std::pair<int, int>> cross_;     // rho - g - 1 -> pair
    std::vector<std::vector<int>> omega0_, omega1_;
};

}  // namespace coopmsr
