#pragma once

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>
#include <string>

#include "scqsci/error.hpp"

namespace scqsci::hamsim {

using cplx = std::complex<double>;

/// Pauli string P = i^{|x & z|} X^x Z^z; a qubit with both bits set is Y.
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    int n_y() const noexcept { return std::popcount(x & z); }
    bool is_identity() const noexcept { return (x | z) == 0; }

    friend constexpr auto operator<=>(const PauliString &,
                                      const PauliString &) = default;
};

inline bool commute(const PauliString &a, const PauliString &b) noexcept {
    return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) == 0;
}

/// i^n for integer n.
inline cplx i_pow(int n) noexcept {
    switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

/// P|b> = phase * |b ^ x>.
inline cplx apply_phase(const PauliString &p, std::uint64_t b) noexcept {
    const cplx ph = i_pow(p.n_y());
    return (std::popcount(p.z & b) & 1) ? -ph : ph;
}

/// One character per qubit, qubit 0 leftmost.
inline std::string label(const PauliString &p, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
        const bool xb = (p.x >> q) & 1ULL;
        const bool zb = (p.z >> q) & 1ULL;
        s[static_cast<std::size_t>(q)] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

inline PauliString parse_pauli(const std::string &s) {
    if (s.size() > 64)
        throw ParseError("Pauli label longer than 64 qubits");
    PauliString p;
    for (std::size_t q = 0; q < s.size(); ++q) {
        const std::uint64_t bit = 1ULL << q;
        switch (s[q]) {
        case 'I': break;
        case 'X': p.x |= bit; break;
        case 'Y': p.x |= bit; p.z |= bit; break;
        case 'Z': p.z |= bit; break;
        default: throw ParseError("bad Pauli label '" + s + "'");
        }
    }
    return p;
}

/// Dense 2^n x 2^n matrix of a Pauli string.
inline Eigen::MatrixXcd pauli_matrix(const PauliString &p, int n_qubits) {
    if (n_qubits > 14)
        throw SizeLimitError("pauli_matrix: dense form limited to 14 qubits");
    const auto dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        m(static_cast<Eigen::Index>(ub ^ p.x), b) = apply_phase(p, ub);
    }
    return m;
}

} // namespace scqsci::hamsim
