#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "scqsci/error.hpp"
#include "scqsci/integrals/geometry.hpp"
#include "scqsci/integrals/integral_set.hpp"
#include "scqsci/integrals/rhf.hpp"

namespace scqsci::integrals {

/// Contracted s-type Gaussian: sum_k c_k N(a_k) exp(-a_k |r - center|^2).
struct SShell {
    Eigen::Vector3d center;
    std::array<double, 3> exponents;
    std::array<double, 3> coefficients; // for normalized primitives
};

// STO-3G hydrogen 1s (zeta = 1.24).
inline constexpr std::array<double, 3> kSto3gHydrogenExponents = {
    3.42525091, 0.62391373, 0.16885540};
inline constexpr std::array<double, 3> kSto3gHydrogenCoefficients = {
    0.15432897, 0.53532814, 0.44463454};

/// F0(t) = int_0^1 exp(-t u^2) du.
inline double boys_f0(double t) {
    if (t < 1e-12)
        return 1.0 - t / 3.0;
    const double st = std::sqrt(t);
    return 0.5 * std::sqrt(std::numbers::pi / t) * std::erf(st);
}

inline double primitive_norm(double alpha) {
    return std::pow(2.0 * alpha / std::numbers::pi, 0.75);
}

namespace detail {

// Primitive integrals over unnormalized s Gaussians.
inline double overlap_prim(double a, double b, double rab2) {
    const double p = a + b;
    return std::pow(std::numbers::pi / p, 1.5) * std::exp(-a * b / p * rab2);
}

inline double kinetic_prim(double a, double b, double rab2) {
    const double p = a + b;
    const double mu = a * b / p;
    return mu * (3.0 - 2.0 * mu * rab2) * overlap_prim(a, b, rab2);
}

inline double nuclear_prim(double a, const Eigen::Vector3d &A, double b,
                           const Eigen::Vector3d &B, const Eigen::Vector3d &C,
                           double charge) {
    const double p = a + b;
    const Eigen::Vector3d P = (a * A + b * B) / p;
    return -2.0 * std::numbers::pi / p * charge *
           std::exp(-a * b / p * (A - B).squaredNorm()) *
           boys_f0(p * (P - C).squaredNorm());
}

inline double eri_prim(double a, const Eigen::Vector3d &A, double b,
                       const Eigen::Vector3d &B, double c,
                       const Eigen::Vector3d &C, double d,
                       const Eigen::Vector3d &D) {
    const double p = a + b;
    const double q = c + d;
    const Eigen::Vector3d P = (a * A + b * B) / p;
    const Eigen::Vector3d Q = (c * C + d * D) / q;
    const double pre = 2.0 * std::pow(std::numbers::pi, 2.5) /
                       (p * q * std::sqrt(p + q));
    return pre *
           std::exp(-a * b / p * (A - B).squaredNorm() -
                    c * d / q * (C - D).squaredNorm()) *
           boys_f0(p * q / (p + q) * (P - Q).squaredNorm());
}

} // namespace detail

inline std::vector<SShell> sto3g_basis(const Geometry &geom) {
    std::vector<SShell> basis;
    for (const auto &atom : geom.atoms) {
        if (atom.charge != 1)
            throw UnsupportedElement(
                "STO-3G engine supports hydrogen only (got '" + atom.symbol +
                "'); supply the Hamiltonian as an FCIDUMP file instead");
        SShell shell{atom.position_bohr(), kSto3gHydrogenExponents,
                     kSto3gHydrogenCoefficients};
        // The tabulated coefficients carry 8 digits; renormalize the
        // contraction so the self-overlap is exactly one.
        double self = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const double a = shell.exponents[k];
                const double b = shell.exponents[l];
                self += shell.coefficients[k] * shell.coefficients[l] *
                        primitive_norm(a) * primitive_norm(b) *
                        detail::overlap_prim(a, b, 0.0);
            }
        for (auto &c : shell.coefficients)
            c /= std::sqrt(self);
        basis.push_back(shell);
    }
    return basis;
}

/// AO-basis Hamiltonian plus overlap for a hydrogen-only geometry.
struct AoIntegrals {
    IntegralSet ints; // h = T + V, g = AO ERIs, e_core = nuclear repulsion
    Eigen::MatrixXd overlap;
};

inline AoIntegrals compute_sto3g_integrals(const Geometry &geom) {
    validate(geom);
    const auto basis = sto3g_basis(geom);
    const std::size_t n = basis.size();
    const int nelec = geom.total_charge();
    AoIntegrals ao;
    ao.ints = IntegralSet::zeros(n, (nelec + 1) / 2, nelec / 2,
                                 geom.nuclear_repulsion());
    ao.overlap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                       static_cast<Eigen::Index>(n));

    auto contract2 = [&](std::size_t i, std::size_t j, auto &&prim) {
        double v = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const double a = basis[i].exponents[k];
                const double b = basis[j].exponents[l];
                v += basis[i].coefficients[k] * basis[j].coefficients[l] *
                     primitive_norm(a) * primitive_norm(b) * prim(a, b);
            }
        return v;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const auto &A = basis[i].center;
            const auto &B = basis[j].center;
            const double rab2 = (A - B).squaredNorm();
            const double s = contract2(i, j, [&](double a, double b) {
                return detail::overlap_prim(a, b, rab2);
            });
            const double t = contract2(i, j, [&](double a, double b) {
                return detail::kinetic_prim(a, b, rab2);
            });
            double v = 0.0;
            for (const auto &atom : geom.atoms)
                v += contract2(i, j, [&](double a, double b) {
                    return detail::nuclear_prim(a, A, b, B, atom.position_bohr(),
                                                atom.charge);
                });
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            ao.overlap(ii, jj) = ao.overlap(jj, ii) = s;
            ao.ints.h(ii, jj) = ao.ints.h(jj, ii) = t + v;
        }

    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q <= p; ++q)
            for (std::size_t r = 0; r <= p; ++r)
                for (std::size_t s = 0; s <= (r == p ? q : r); ++s) {
                    double v = 0.0;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            for (int k = 0; k < 3; ++k)
                                for (int l = 0; l < 3; ++l) {
                                    const double a = basis[p].exponents[i];
                                    const double b = basis[q].exponents[j];
                                    const double c = basis[r].exponents[k];
                                    const double d = basis[s].exponents[l];
                                    v += basis[p].coefficients[i] *
                                         basis[q].coefficients[j] *
                                         basis[r].coefficients[k] *
                                         basis[s].coefficients[l] *
                                         primitive_norm(a) * primitive_norm(b) *
                                         primitive_norm(c) * primitive_norm(d) *
                                         detail::eri_prim(a, basis[p].center, b,
                                                          basis[q].center, c,
                                                          basis[r].center, d,
                                                          basis[s].center);
                                }
                    ao.ints.g.set_symmetric(p, q, r, s, v);
                }
    return ao;
}

/// One core-guess block per fragment; each hydrogen contributes one AO.
inline std::vector<GuessBlock> fragment_guess_blocks(const Geometry &geom) {
    std::vector<GuessBlock> blocks;
    for (int id : geom.fragments()) {
        GuessBlock blk;
        int electrons = 0;
        for (std::size_t i = 0; i < geom.atoms.size(); ++i)
            if (geom.atoms[i].fragment == id) {
                blk.aos.push_back(static_cast<int>(i));
                electrons += geom.atoms[i].charge;
            }
        if (electrons % 2 != 0)
            throw ContractViolation("fragment " + std::to_string(id) +
                                    " has an odd electron count");
        blk.n_occupied = electrons / 2;
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

} // namespace scqsci::integrals
