#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "scqsci/error.hpp"

namespace scqsci::integrals {

/// Dense two-electron integrals (pq|rs) in chemist notation.
///
/// Storage is the full M^4 tensor. Writers go through set_symmetric() so the
/// eight permutation-equivalent slots always hold bitwise-identical values,
/// which downstream code (exact symmetry of Slater-Condon elements) relies on.
class TwoElectronIntegrals {
  public:
    TwoElectronIntegrals() = default;
    explicit TwoElectronIntegrals(std::size_t norb)
        : n_(norb), data_(norb * norb * norb * norb, 0.0) {}

    std::size_t norb() const noexcept { return n_; }

    double operator()(std::size_t p, std::size_t q, std::size_t r,
                      std::size_t s) const noexcept {
        return data_[((p * n_ + q) * n_ + r) * n_ + s];
    }

    /// Assigns value to all eight permutations of (pq|rs).
    void set_symmetric(std::size_t p, std::size_t q, std::size_t r,
                       std::size_t s, double value) noexcept {
        at(p, q, r, s) = value;
        at(q, p, r, s) = value;
        at(p, q, s, r) = value;
        at(q, p, s, r) = value;
        at(r, s, p, q) = value;
        at(s, r, p, q) = value;
        at(r, s, q, p) = value;
        at(s, r, q, p) = value;
    }

    /// Raw writes, used by transformations that symmetrize afterwards.
    double &at(std::size_t p, std::size_t q, std::size_t r,
               std::size_t s) noexcept {
        return data_[((p * n_ + q) * n_ + r) * n_ + s];
    }

    /// Rewrites every slot from its canonical representative (p>=q, r>=s,
    /// pq>=rs), averaging nothing: the canonical value wins.
    void symmetrize_from_canonical() noexcept {
        for (std::size_t p = 0; p < n_; ++p)
            for (std::size_t q = 0; q <= p; ++q)
                for (std::size_t r = 0; r <= p; ++r)
                    for (std::size_t s = 0; s <= (r == p ? q : r); ++s)
                        set_symmetric(p, q, r, s, (*this)(p, q, r, s));
    }

    const std::vector<double> &data() const noexcept { return data_; }

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Second-quantized Hamiltonian data over M spatial orbitals.
struct IntegralSet {
    std::size_t norb = 0;
    int n_alpha = 0;
    int n_beta = 0;
    double e_core = 0.0;
    Eigen::MatrixXd h;
    TwoElectronIntegrals g;

    static IntegralSet zeros(std::size_t norb, int n_alpha, int n_beta,
                             double e_core = 0.0) {
        IntegralSet out;
        out.norb = norb;
        out.n_alpha = n_alpha;
        out.n_beta = n_beta;
        out.e_core = e_core;
        out.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(norb),
                                      static_cast<Eigen::Index>(norb));
        out.g = TwoElectronIntegrals(norb);
        return out;
    }
};

/// Checks the documented invariants; throws ContractViolation on failure.
inline void validate(const IntegralSet &ints, double tol = 1e-12) {
    const auto m = ints.norb;
    if (m < 1)
        throw ContractViolation("IntegralSet: at least one orbital required");
    if (ints.n_alpha < 0 || ints.n_beta < 0 ||
        static_cast<std::size_t>(ints.n_alpha + ints.n_beta) > 2 * m)
        throw ContractViolation("IntegralSet: electron count exceeds 2M");
    if (static_cast<std::size_t>(ints.h.rows()) != m ||
        static_cast<std::size_t>(ints.h.cols()) != m || ints.g.norb() != m)
        throw ContractViolation("IntegralSet: dimension mismatch");
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < p; ++q)
            if (std::abs(ints.h(p, q) - ints.h(q, p)) > tol)
                throw ContractViolation("IntegralSet: h is not symmetric");
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < m; ++s) {
                    const double v = ints.g(p, q, r, s);
                    if (std::abs(v - ints.g(q, p, r, s)) > tol ||
                        std::abs(v - ints.g(p, q, s, r)) > tol ||
                        std::abs(v - ints.g(r, s, p, q)) > tol)
                        throw ContractViolation(
                            "IntegralSet: g lacks 8-fold symmetry");
                }
}

} // namespace scqsci::integrals
