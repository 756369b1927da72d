#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "scqsci/cidiag/solver.hpp"
#include "scqsci/cidiag/sparse.hpp"
#include "scqsci/determinants/determinant.hpp"
#include "scqsci/determinants/slater_condon.hpp"
#include "scqsci/error.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::ci {

/// Matrix-free sigma build over a complete (N_alpha, N_beta) sector with
/// string-driven replacement lists. Determinant (ia, ib) has index
/// ia * n_beta_strings + ib, which is the canonical DeterminantSpace order.
class FullCiSigma {
  public:
    FullCiSigma(const integrals::IntegralSet &ints, int n_alpha, int n_beta)
        : ints_(ints), m_(static_cast<int>(ints.norb)) {
        alpha_ = det::strings_with_popcount(m_, n_alpha);
        beta_ = det::strings_with_popcount(m_, n_beta);
        if (alpha_.empty() || beta_.empty())
            throw ContractViolation("full_ci: empty particle sector");
        alpha_repl_ = replacements(alpha_);
        beta_repl_ = replacements(beta_);

        const int mm = m_ * m_;
        k_.resize(mm);
        gmat_.resize(mm, mm);
        for (int p = 0; p < m_; ++p)
            for (int q = 0; q < m_; ++q) {
                double v = ints.h(p, q);
                for (int r = 0; r < m_; ++r)
                    v -= 0.5 * ints.g(p, r, r, q);
                k_(p * m_ + q) = v;
                for (int r = 0; r < m_; ++r)
                    for (int s = 0; s < m_; ++s)
                        gmat_(p * m_ + q, r * m_ + s) = 0.5 * ints.g(p, q, r, s);
            }

        diag_.resize(static_cast<Eigen::Index>(dim()));
        const auto nb = beta_.size();
        for (std::size_t ia = 0; ia < alpha_.size(); ++ia)
            for (std::size_t ib = 0; ib < nb; ++ib)
                diag_(static_cast<Eigen::Index>(ia * nb + ib)) =
                    det::diagonal_energy({alpha_[ia], beta_[ib]}, ints);
    }

    std::size_t dim() const noexcept { return alpha_.size() * beta_.size(); }
    const Eigen::VectorXd &diagonal() const noexcept { return diag_; }

    det::Determinant determinant(std::size_t i) const {
        const auto nb = beta_.size();
        return {alpha_[i / nb], beta_[i % nb]};
    }

    void apply(const Eigen::VectorXd &c, Eigen::VectorXd &sigma) const {
        const auto nb = static_cast<Eigen::Index>(beta_.size());
        const auto na = static_cast<Eigen::Index>(alpha_.size());
        const auto n = static_cast<Eigen::Index>(dim());
        const int mm = m_ * m_;
        // d(pq, K) = <K|E_pq|c>
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(mm, n);
        for (Eigen::Index ia = 0; ia < na; ++ia)
            for (const auto &e : alpha_repl_[static_cast<std::size_t>(ia)])
                for (Eigen::Index ib = 0; ib < nb; ++ib)
                    d(e.pq, e.target * nb + ib) += e.sign * c(ia * nb + ib);
        for (Eigen::Index ib = 0; ib < nb; ++ib)
            for (const auto &e : beta_repl_[static_cast<std::size_t>(ib)])
                for (Eigen::Index ia = 0; ia < na; ++ia)
                    d(e.pq, ia * nb + e.target) += e.sign * c(ia * nb + ib);

        // sigma_I = sum_pq k_pq d(pq, I) + sum_rs <I|E_rs|K> (g d)(rs, K)
        const Eigen::MatrixXd gd = gmat_ * d;
        sigma = d.transpose() * k_ + ints_.e_core * c;
        // <I|E_rs|K> = <K|E_sr|I>
        for (Eigen::Index ia = 0; ia < na; ++ia)
            for (const auto &e : alpha_repl_[static_cast<std::size_t>(ia)])
                for (Eigen::Index ib = 0; ib < nb; ++ib)
                    sigma(ia * nb + ib) += e.sign * gd(e.qp, e.target * nb + ib);
        for (Eigen::Index ib = 0; ib < nb; ++ib)
            for (const auto &e : beta_repl_[static_cast<std::size_t>(ib)])
                for (Eigen::Index ia = 0; ia < na; ++ia)
                    sigma(ia * nb + ib) += e.sign * gd(e.qp, ia * nb + e.target);
    }

    LinearOperator as_operator() const {
        return {dim(), [this](const Eigen::VectorXd &x, Eigen::VectorXd &y) { apply(x, y); },
                diag_};
    }

  private:
    struct Replacement {
        int pq;     // p * M + q for a+_p a_q
        int qp;     // q * M + p
        Eigen::Index target;
        double sign;
    };

    std::vector<std::vector<Replacement>>
    replacements(const std::vector<std::uint64_t> &strings) const {
        std::vector<Eigen::Index> rank(std::size_t{1} << m_, -1);
        for (std::size_t i = 0; i < strings.size(); ++i)
            rank[strings[i]] = static_cast<Eigen::Index>(i);
        std::vector<std::vector<Replacement>> out(strings.size());
        for (std::size_t i = 0; i < strings.size(); ++i) {
            const auto s = strings[i];
            det::for_each_bit(s, [&](int q) {
                for (int p = 0; p < m_; ++p) {
                    if (p != q && ((s >> p) & 1ULL))
                        continue;
                    const auto t = (s & ~(1ULL << q)) | (1ULL << p);
                    out[i].push_back({p * m_ + q, q * m_ + p, rank[t],
                                      det::excitation_sign(s, q, p)});
                }
            });
        }
        return out;
    }

    const integrals::IntegralSet &ints_;
    int m_;
    std::vector<std::uint64_t> alpha_, beta_;
    std::vector<std::vector<Replacement>> alpha_repl_, beta_repl_;
    Eigen::VectorXd k_;
    Eigen::MatrixXd gmat_;
    Eigen::VectorXd diag_;
};

struct FullCiOptions {
    std::size_t max_dim = 2'000'000;
    SolverOptions solver;
};

/// Ground state of the complete (N_alpha, N_beta) sector; the vector is in
/// canonical DeterminantSpace order.
inline SpectrumResult full_ci(const integrals::IntegralSet &ints, int n_alpha, int n_beta,
                              const FullCiOptions &opt = {}) {
    if (ints.norb > 16)
        throw SizeLimitError("full_ci: more than 16 orbitals");
    const int m = static_cast<int>(ints.norb);
    if (n_alpha < 0 || n_beta < 0 || n_alpha > m || n_beta > m)
        throw ContractViolation("full_ci: electron count exceeds orbitals");
    const auto dim = det::strings_with_popcount(m, n_alpha).size() *
                     det::strings_with_popcount(m, n_beta).size();
    if (dim > opt.max_dim)
        throw SizeLimitError("full_ci: sector dimension " + std::to_string(dim) +
                             " exceeds budget " + std::to_string(opt.max_dim));
    if (dim <= opt.solver.dense_threshold)
        return dense_ground_state(
            build_subspace_hamiltonian(det::full_sector(m, n_alpha, n_beta), ints).to_dense());
    FullCiSigma sigma(ints, n_alpha, n_beta);
    const auto hf = det::hf_reference(n_alpha, n_beta, m);
    std::size_t start = 0;
    for (std::size_t i = 0; i < sigma.dim(); ++i)
        if (sigma.determinant(i) == hf)
            start = i;
    return davidson(sigma.as_operator(), start, opt.solver.davidson);
}

inline SpectrumResult full_ci(const integrals::IntegralSet &ints,
                              const FullCiOptions &opt = {}) {
    return full_ci(ints, ints.n_alpha, ints.n_beta, opt);
}

} // namespace scqsci::ci
