#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "scqsci/determinants/determinant.hpp"

namespace scqsci::det {

/// Calls f(subset) for every subset of `set` with exactly k bits.
template <typename F>
inline void for_each_subset_of_size(std::uint64_t set, int k, F &&f) {
    const int n = std::popcount(set);
    if (k < 0 || k > n)
        return;
    std::vector<int> pos;
    pos.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t m = set; m; m &= m - 1)
        pos.push_back(std::countr_zero(m));
    for (std::uint64_t pick : strings_with_popcount(n, k)) {
        std::uint64_t sub = 0;
        for (; pick; pick &= pick - 1)
            sub |= 1ULL << pos[static_cast<std::size_t>(std::countr_zero(pick))];
        f(sub);
    }
}

/// Every determinant with the same doubly and singly occupied orbitals as d
/// and the same number of alpha electrons among the open shells.
inline std::vector<Determinant> spin_partners(const Determinant &d) {
    const std::uint64_t closed = d.alpha & d.beta;
    const std::uint64_t open = d.alpha ^ d.beta;
    const int k = std::popcount(d.alpha & open);
    std::vector<Determinant> out;
    for_each_subset_of_size(open, k, [&](std::uint64_t sub) {
        out.push_back({closed | sub, closed | (open & ~sub)});
    });
    return out;
}

inline DeterminantSpace symmetry_complete(const DeterminantSpace &space) {
    require_uniform_sector(space.dets(), "symmetry_complete");
    std::vector<Determinant> all;
    all.reserve(space.size());
    for (const auto &d : space) {
        if ((d.alpha ^ d.beta) == 0) {
            all.push_back(d);
            continue;
        }
        const auto partners = spin_partners(d);
        all.insert(all.end(), partners.begin(), partners.end());
    }
    return DeterminantSpace(std::move(all));
}

} // namespace scqsci::det
