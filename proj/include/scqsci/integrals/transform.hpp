#pragma once

#include <Eigen/Dense>

#include <vector>

#include "scqsci/error.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::integrals {

/// Four-index transformation of an AO Hamiltonian into the orbital basis
/// given by the columns of coeffs (rows: AOs). Four quarter transformations,
/// O(n^5).
inline IntegralSet transform_to_mo(const IntegralSet &ao,
                                   const Eigen::MatrixXd &coeffs) {
    const auto n = static_cast<std::size_t>(coeffs.rows());
    const auto m = static_cast<std::size_t>(coeffs.cols());
    if (n != ao.norb)
        throw ContractViolation("transform_to_mo: coefficient rows (" +
                                std::to_string(n) + ") != AO count (" +
                                std::to_string(ao.norb) + ")");
    if (m == 0)
        throw ContractViolation("transform_to_mo: no orbitals");

    IntegralSet mo = IntegralSet::zeros(m, ao.n_alpha, ao.n_beta, ao.e_core);
    mo.h = coeffs.transpose() * ao.h * coeffs;
    mo.h = 0.5 * (mo.h + mo.h.transpose()).eval();

    auto c = [&](std::size_t mu, std::size_t i) {
        return coeffs(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(i));
    };

    // (pq|rs) -> (pq|rl) -> (pq|kl) -> (pj|kl) -> (ij|kl)
    std::vector<double> t1(n * n * n * m, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) {
                    const double v = ao.g(p, q, r, s);
                    if (v == 0.0)
                        continue;
                    double *dst = &t1[((p * n + q) * n + r) * m];
                    for (std::size_t l = 0; l < m; ++l)
                        dst[l] += v * c(s, l);
                }
    std::vector<double> t2(n * n * m * m, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t k = 0; k < m; ++k) {
                    const double crk = c(r, k);
                    const double *src = &t1[((p * n + q) * n + r) * m];
                    double *dst = &t2[((p * n + q) * m + k) * m];
                    for (std::size_t l = 0; l < m; ++l)
                        dst[l] += crk * src[l];
                }
    t1.assign(n * m * m * m, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t j = 0; j < m; ++j) {
                const double cqj = c(q, j);
                const double *src = &t2[(p * n + q) * m * m];
                double *dst = &t1[(p * m + j) * m * m];
                for (std::size_t kl = 0; kl < m * m; ++kl)
                    dst[kl] += cqj * src[kl];
            }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t i = 0; i < m; ++i) {
            const double cpi = c(p, i);
            const double *src = &t1[p * m * m * m];
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t kl = 0; kl < m * m; ++kl)
                    mo.g.at(i, j, kl / m, kl % m) += cpi * src[j * m * m + kl];
        }
    mo.g.symmetrize_from_canonical();
    return mo;
}

/// As above, additionally checking C^T S C = I.
inline IntegralSet transform_to_mo(const IntegralSet &ao,
                                   const Eigen::MatrixXd &coeffs,
                                   const Eigen::MatrixXd &overlap,
                                   double tol = 1e-8) {
    if (overlap.rows() != coeffs.rows() || overlap.cols() != coeffs.rows())
        throw ContractViolation("transform_to_mo: overlap dimension mismatch");
    const Eigen::MatrixXd metric = coeffs.transpose() * overlap * coeffs;
    const auto m = metric.rows();
    if ((metric - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > tol)
        throw ContractViolation(
            "transform_to_mo: coefficients are not orthonormal");
    return transform_to_mo(ao, coeffs);
}

} // namespace scqsci::integrals
