#include "coopmsr/pairmap.hpp"

#include <algorithm>
#include <string>

namespace coopmsr {

int PairMap::index_count(int n, int r) {
    const int g = n / r;
    const int pairs_all = n * (n - 1) / 2;
    const int pairs_per_group = r * (r - 1) / 2;
    return pairs_all - g * (pairs_per_group - 1);
}

PairMap::PairMap(int n, int r)
    : n_(n), r_(r), g_(n / r), m_(index_count(n, r)),
      pi_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0),
      omega0_(static_cast<std::size_t>(n + 1)), omega1_(static_cast<std::size_t>(n + 1)) {}

PairMap PairMap::build(int n, int r) {
    if (r < 2) throw std::invalid_argument("pair map needs r >= 2");
    if (n <= r) throw std::invalid_argument("pair map needs n > r");

    PairMap pm(n, r);
    auto pi_at = [&pm](int j1, int j2) -> int& {
        return pm.pi_[static_cast<std::size_t>(j1) * static_cast<std::size_t>(pm.n_ + 1) +
                      static_cast<std::size_t>(j2)];
    };

    // Intra-group pairs map to their group index.
    for (int u = 1; u <= pm.g_; ++u) {
        const int lo = (u - 1) * r + 1, hi = u * r;
        for (int j1 = lo; j1 <= hi; ++j1)
            for (int j2 = j1 + 1; j2 <= hi; ++j2) pi_at(j1, j2) = u;
    }

    // Cross-group pairs, sorted ascending by (j2, j1), take g+1, g+2, ...
    int next = pm.g_;
    for (int j2 = 2; j2 <= n; ++j2) {
        for (int j1 = 1; j1 < j2; ++j1) {
            if (pi_at(j1, j2) != 0) continue;
            pi_at(j1, j2) = ++next;
            pm.cross_.emplace_back(j1, j2);
            pm.omega0_[static_cast<std::size_t>(j1)].push_back(next);
            pm.omega1_[static_cast<std::size_t>(j2)].push_back(next);
        }
    }
    if (next != pm.m_)
        throw InternalError("pair map enumeration mismatch: got " + std::to_string(next) +
                            ", expected " + std::to_string(pm.m_));
    return pm;
}

void PairMap::check_node(int j) const {
    if (j < 1 || j > n_)
        throw std::invalid_argument("node " + std::to_string(j) + " out of [1, " +
                                    std::to_string(n_) + "]");
}

int PairMap::pi(int j1, int j2) const {
    check_node(j1);
    check_node(j2);
    if (j1 >= j2) throw std::invalid_argument("pair must be ordered: j1 < j2");
    return pi_[static_cast<std::size_t>(j1) * static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(j2)];
}

PairMap::Classification PairMap::classify(int i1, int i2) const {
    const int idx = pi(i1, i2);
    return {idx <= g_, idx};
}

const std::vector<int>& PairMap::omega0(int j) const {
    check_node(j);
    return omega0_[static_cast<std::size_t>(j)];
}

const std::vector<int>& PairMap::omega1(int j) const {
    check_node(j);
    return omega1_[static_cast<std::size_t>(j)];
}

std::pair<int, int> PairMap::cross_pair(int rho) const {
    if (rho <= g_ || rho > m_)
        throw std::invalid_argument("cross index " + std::to_string(rho) + " out of [g+1, m]");
    return cross_[static_cast<std::size_t>(rho - g_ - 1)];
}

int PairMap::group_of(int node) const {
    check_node(node);
    if (!grouped(node)) throw std::invalid_argument("node " + std::to_string(node) + " has no group");
    return (node - 1) / r_ + 1;
}

int PairMap::group_slot(int node) const {
    check_node(node);
    if (!grouped(node)) throw std::invalid_argument("node " + std::to_string(node) + " has no group");
    return (node - 1) % r_;
}

}  // namespace coopmsr
