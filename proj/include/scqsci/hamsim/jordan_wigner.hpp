#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/error.hpp"
#include "scqsci/hamsim/pauli.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::hamsim {

// Qubit layout: qubit 2p is (p, alpha), qubit 2p+1 is (p, beta).

namespace detail {

inline std::uint64_t spread_bits(std::uint64_t v) noexcept {
    v &= 0xFFFFFFFFULL;
    v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
    v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
    v = (v | (v << 2)) & 0x3333333333333333ULL;
    v = (v | (v << 1)) & 0x5555555555555555ULL;
    return v;
}

inline std::uint64_t compact_bits(std::uint64_t v) noexcept {
    v &= 0x5555555555555555ULL;
    v = (v | (v >> 1)) & 0x3333333333333333ULL;
    v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
    v = (v | (v >> 4)) & 0x00FF00FF00FF00FFULL;
    v = (v | (v >> 8)) & 0x0000FFFF0000FFFFULL;
    v = (v | (v >> 16)) & 0x00000000FFFFFFFFULL;
    return v;
}

} // namespace detail

inline constexpr std::uint64_t kAlphaQubits = 0x5555555555555555ULL;
inline constexpr std::uint64_t kBetaQubits = 0xAAAAAAAAAAAAAAAAULL;

inline std::uint64_t to_bitstring(const det::Determinant &d) {
    if ((d.alpha | d.beta) >> 32)
        throw ContractViolation("to_bitstring: more than 32 spatial orbitals");
    return detail::spread_bits(d.alpha) | (detail::spread_bits(d.beta) << 1);
}

inline det::Determinant to_determinant(std::uint64_t bits) noexcept {
    return {detail::compact_bits(bits), detail::compact_bits(bits >> 1)};
}

/// Little-endian text form, qubit 0 leftmost.
inline std::string bitstring_text(std::uint64_t bits, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if ((bits >> q) & 1ULL)
            s[static_cast<std::size_t>(q)] = '1';
    return s;
}

inline std::uint64_t parse_bitstring(const std::string &s) {
    if (s.size() > 64)
        throw ParseError("bitstring longer than 64 qubits");
    std::uint64_t b = 0;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] == '1')
            b |= 1ULL << q;
        else if (s[q] != '0')
            throw ParseError("bad bitstring '" + s + "'");
    }
    return b;
}

/// Sign relating the interleaved JW occupation-number state to the
/// alpha-block-then-beta-block determinant: (-1) to the number of pairs
/// (beta in p, alpha in q) with p < q.
inline double layout_sign(const det::Determinant &d) noexcept {
    int n = 0;
    for (std::uint64_t a = d.alpha; a; a &= a - 1)
        n += std::popcount(d.beta & det::low_bits(std::countr_zero(a)));
    return (n & 1) ? -1.0 : 1.0;
}

struct PauliTerm {
    PauliString pauli;
    double coeff = 0.0;
};

struct QubitHamiltonian {
    int n_qubits = 0;
    std::vector<PauliTerm> terms; // sorted by (x, z)

    double identity_coeff() const noexcept {
        for (const auto &t : terms)
            if (t.pauli.is_identity())
                return t.coeff;
        return 0.0;
    }
};

struct JordanWignerOptions {
    int max_qubits = 24;
    double drop_tol = 1e-13;
};

namespace detail {

struct XzTerm {
    std::uint64_t x, z;
    cplx c;
};

// a^dagger_j = Z_{<j} (X + XZ)/2, a_j = Z_{<j} (X - XZ)/2.
inline std::array<XzTerm, 2> ladder(int j, bool dagger) noexcept {
    const std::uint64_t bit = 1ULL << j;
    const std::uint64_t below = bit - 1;
    return {XzTerm{bit, below, 0.5}, XzTerm{bit, below | bit, dagger ? 0.5 : -0.5}};
}

inline XzTerm mul(const XzTerm &a, const XzTerm &b) noexcept {
    const double sign = (std::popcount(a.z & b.x) & 1) ? -1.0 : 1.0;
    return {a.x ^ b.x, a.z ^ b.z, a.c * b.c * sign};
}

} // namespace detail

inline QubitHamiltonian jordan_wigner(const integrals::IntegralSet &ints,
                                      const JordanWignerOptions &opt = {}) {
    const int m = static_cast<int>(ints.norb);
    const int nq = 2 * m;
    if (nq > opt.max_qubits || nq > 32)
        throw SizeLimitError("jordan_wigner: " + std::to_string(nq) +
                             " qubits exceeds the statevector limit of " +
                             std::to_string(std::min(opt.max_qubits, 32)));

    std::unordered_map<std::uint64_t, cplx> acc;
    auto add = [&](const detail::XzTerm &t, double w) {
        acc[t.x | (t.z << 32)] += w * t.c;
    };
    acc[0] += ints.e_core;

    auto so = [](int p, int spin) { return 2 * p + spin; };
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const double h = ints.h(p, q);
            if (h == 0.0)
                continue;
            for (int s = 0; s < 2; ++s)
                for (const auto &u : detail::ladder(so(p, s), true))
                    for (const auto &v : detail::ladder(so(q, s), false))
                        add(detail::mul(u, v), h);
        }

    // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    const double v = 0.5 * ints.g(p, q, r, s);
                    if (v == 0.0)
                        continue;
                    for (int sg = 0; sg < 2; ++sg)
                        for (int tau = 0; tau < 2; ++tau) {
                            const int i = so(p, sg), j = so(r, tau);
                            const int k = so(s, tau), l = so(q, sg);
                            if (i == j || k == l)
                                continue;
                            for (const auto &a : detail::ladder(i, true))
                                for (const auto &b : detail::ladder(j, true)) {
                                    const auto ab = detail::mul(a, b);
                                    for (const auto &c : detail::ladder(k, false)) {
                                        const auto abc = detail::mul(ab, c);
                                        for (const auto &d : detail::ladder(l, false))
                                            add(detail::mul(abc, d), v);
                                    }
                                }
                        }
                }

    QubitHamiltonian out;
    out.n_qubits = nq;
    for (const auto &[key, c] : acc) {
        PauliString p{key & 0xFFFFFFFFULL, key >> 32};
        // X^x Z^z = (-i)^{n_y} P
        const cplx coeff = c * i_pow(-p.n_y());
        if (std::abs(coeff.imag()) > 1e-9 * std::max(1.0, std::abs(coeff.real())))
            throw ContractViolation("jordan_wigner: non-Hermitian term " +
                                    label(p, nq));
        if (std::abs(coeff.real()) <= opt.drop_tol && !p.is_identity())
            continue;
        out.terms.push_back({p, coeff.real()});
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const PauliTerm &a, const PauliTerm &b) { return a.pauli < b.pauli; });
    return out;
}

inline Eigen::MatrixXcd to_dense(const QubitHamiltonian &h) {
    if (h.n_qubits > 14)
        throw SizeLimitError("to_dense: limited to 14 qubits");
    const auto dim = Eigen::Index{1} << h.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : h.terms)
        for (Eigen::Index b = 0; b < dim; ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            m(static_cast<Eigen::Index>(ub ^ t.pauli.x), b) +=
                t.coeff * apply_phase(t.pauli, ub);
        }
    return m;
}

} // namespace scqsci::hamsim
