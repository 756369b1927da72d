#pragma once

#include <bit>
#include <cstdint>
#include <utility>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::det {

// Phase convention: spin orbitals are ordered alpha block first, then beta
// block, each by ascending spatial index. Alpha and beta phases therefore
// factorize.

/// (-1)^(occupied orbitals strictly between i and a) in mask.
inline double excitation_sign(std::uint64_t mask, int i, int a) noexcept {
    const int lo = i < a ? i : a;
    const int hi = i < a ? a : i;
    const std::uint64_t between = low_bits(hi) & ~low_bits(lo + 1);
    return (std::popcount(mask & between) & 1) ? -1.0 : 1.0;
}

template <typename F> inline void for_each_bit(std::uint64_t mask, F &&f) {
    while (mask) {
        f(std::countr_zero(mask));
        mask &= mask - 1;
    }
}

/// <d|H|d> including the core energy.
inline double diagonal_energy(const Determinant &d,
                              const integrals::IntegralSet &ints) {
    const auto &h = ints.h;
    const auto &g = ints.g;
    double e = ints.e_core;
    auto spin_block = [&](std::uint64_t same) {
        for_each_bit(same, [&](int i) {
            e += h(i, i);
            for_each_bit(same & low_bits(i), [&](int j) {
                e += g(i, i, j, j) - g(i, j, j, i);
            });
        });
    };
    spin_block(d.alpha);
    spin_block(d.beta);
    for_each_bit(d.alpha, [&](int i) {
        for_each_bit(d.beta, [&](int j) { e += g(i, i, j, j); });
    });
    return e;
}

namespace detail {

// <bra|H|ket> for a single excitation i -> a in one spin string; `same` and
// `other` are the ket occupations of the excited and the spectator spin.
inline double single_element(std::uint64_t same, std::uint64_t other, int i,
                             int a, const integrals::IntegralSet &ints) {
    const auto &g = ints.g;
    double v = ints.h(a, i);
    const std::uint64_t common = same & ~(1ULL << i);
    for_each_bit(common, [&](int j) { v += g(a, i, j, j) - g(a, j, j, i); });
    for_each_bit(other, [&](int j) { v += g(a, i, j, j); });
    return excitation_sign(same, i, a) * v;
}

inline std::pair<int, int> two_bits(std::uint64_t m) noexcept {
    const int lo = std::countr_zero(m);
    const int hi = 63 - std::countl_zero(m);
    return {lo, hi};
}

} // namespace detail

/// <bra|H|ket> by the Slater-Condon rules; exactly symmetric in its
/// arguments and exactly zero beyond double excitations.
inline double slater_condon_element(Determinant bra, Determinant ket,
                                    const integrals::IntegralSet &ints) {
    if (bra == ket)
        return diagonal_energy(bra, ints);
    // Evaluate in a canonical argument order so H[i][j] == H[j][i] bitwise.
    if (ket < bra)
        std::swap(bra, ket);
    const std::uint64_t da = bra.alpha ^ ket.alpha;
    const std::uint64_t db = bra.beta ^ ket.beta;
    const int na = std::popcount(da);
    const int nb = std::popcount(db);
    if (na + nb > 4)
        return 0.0;
    const auto &g = ints.g;

    if (na == 2 && nb == 0) {
        const int i = std::countr_zero(ket.alpha & da);
        const int a = std::countr_zero(bra.alpha & da);
        return detail::single_element(ket.alpha, ket.beta, i, a, ints);
    }
    if (na == 0 && nb == 2) {
        const int i = std::countr_zero(ket.beta & db);
        const int a = std::countr_zero(bra.beta & db);
        return detail::single_element(ket.beta, ket.alpha, i, a, ints);
    }
    if (na == 2 && nb == 2) {
        const int i = std::countr_zero(ket.alpha & da);
        const int a = std::countr_zero(bra.alpha & da);
        const int j = std::countr_zero(ket.beta & db);
        const int b = std::countr_zero(bra.beta & db);
        return excitation_sign(ket.alpha, i, a) * excitation_sign(ket.beta, j, b) *
               g(a, i, b, j);
    }
    // Same-spin double.
    const bool alpha = na == 4;
    const std::uint64_t diff = alpha ? da : db;
    const std::uint64_t kmask = alpha ? ket.alpha : ket.beta;
    const std::uint64_t bmask = alpha ? bra.alpha : bra.beta;
    const auto [i, j] = detail::two_bits(kmask & diff);
    const auto [a, b] = detail::two_bits(bmask & diff);
    const std::uint64_t mid = kmask ^ (1ULL << i) ^ (1ULL << a);
    const double sign = excitation_sign(kmask, i, a) * excitation_sign(mid, j, b);
    return sign * (g(a, i, b, j) - g(a, j, b, i));
}

} // namespace scqsci::det
