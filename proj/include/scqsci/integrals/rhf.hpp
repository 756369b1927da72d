#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <vector>

#include "scqsci/error.hpp"
#include "scqsci/integrals/integral_set.hpp"
#include "scqsci/integrals/transform.hpp"

namespace scqsci::integrals {

/// AO subset that receives its own core-Hamiltonian guess with n_occupied
/// doubly occupied orbitals.
struct GuessBlock {
    std::vector<int> aos;
    int n_occupied = 0;
};

struct RhfOptions {
    double density_tol = 1e-10; // RMS change of the density matrix
    double energy_tol = 1e-11;  // Hartree
    int max_iterations = 200;
    int diis_size = 8;
    /// Use the optimal-damping algorithm from the first iteration instead of
    /// only after a DIIS step raised the energy.
    bool force_damping = false;
    /// Follow negative eigenvalues of the real RHF orbital Hessian until the
    /// solution is a local minimum.
    bool follow_instabilities = true;
    double instability_threshold = -1e-6;
    int max_stability_steps = 10;
    /// Block-diagonal core guess (one block per non-interacting fragment).
    /// Empty: core guess over the whole system. Degenerate core levels
    /// otherwise let the aufbau guess move electrons between fragments.
    std::vector<GuessBlock> guess_blocks;
};

struct RhfResult {
    double energy = 0.0;
    Eigen::MatrixXd coeffs; // AO x MO, C^T S C = I
    Eigen::VectorXd orbital_energies;
    int n_occupied = 0;
    int iterations = 0;
    /// Energies of the damped iterates, one per iteration once damping has
    /// engaged; non-increasing by construction.
    std::vector<double> damped_energies;
    bool damping_engaged = false;
    int stability_steps = 0;
    double lowest_hessian_eigenvalue = 0.0;
};

namespace detail {

inline Eigen::MatrixXd two_electron_fock(const IntegralSet &ao,
                                         const Eigen::MatrixXd &density) {
    const auto n = ao.norb;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(density.rows(), density.cols());
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t v = 0; v < n; ++v) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t s = 0; s < n; ++s)
                    acc += density(static_cast<Eigen::Index>(l),
                                   static_cast<Eigen::Index>(s)) *
                           (ao.g(m, v, l, s) - 0.5 * ao.g(m, l, v, s));
            g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(v)) = acc;
        }
    return g;
}

inline double electronic_energy(const IntegralSet &ao,
                                const Eigen::MatrixXd &density,
                                const Eigen::MatrixXd &fock) {
    return 0.5 * (density.cwiseProduct(ao.h + fock)).sum();
}

inline void fix_column_signs(Eigen::MatrixXd &c) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
        Eigen::Index imax = 0;
        c.col(j).cwiseAbs().maxCoeff(&imax);
        if (c(imax, j) < 0)
            c.col(j) *= -1.0;
    }
}

inline Eigen::MatrixXd symmetric_orthogonalizer(const Eigen::MatrixXd &s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.eigenvalues().minCoeff() <= 1e-12)
        throw ContractViolation("overlap matrix is singular");
    return es.eigenvectors() *
           es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

inline Eigen::MatrixXd density_from(const Eigen::MatrixXd &c, int nocc) {
    const auto occ = c.leftCols(nocc);
    return 2.0 * occ * occ.transpose();
}

struct ScfState {
    Eigen::MatrixXd coeffs;
    Eigen::VectorXd eps;
};

inline ScfState diagonalize_fock(const Eigen::MatrixXd &fock,
                                 const Eigen::MatrixXd &x) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * fock * x);
    ScfState st{x * es.eigenvectors(), es.eigenvalues()};
    fix_column_signs(st.coeffs);
    return st;
}

inline double rms(const Eigen::MatrixXd &m) {
    return std::sqrt(m.squaredNorm() / static_cast<double>(m.size()));
}

/// SCF iterations from a starting density; DIIS with optimal-damping fallback.
inline RhfResult scf_from_density(const IntegralSet &ao,
                                  const Eigen::MatrixXd &overlap,
                                  const Eigen::MatrixXd &x,
                                  Eigen::MatrixXd density, int nocc,
                                  const RhfOptions &opt) {
    RhfResult res;
    res.n_occupied = nocc;
    bool damping = opt.force_damping;
    std::deque<Eigen::MatrixXd> fock_hist, err_hist;

    Eigen::MatrixXd fock = ao.h + two_electron_fock(ao, density);
    double energy = electronic_energy(ao, density, fock);
    if (damping)
        res.damped_energies.push_back(energy + ao.e_core);

    double last_drms = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opt.max_iterations; ++it) {
        res.iterations = it;
        Eigen::MatrixXd f_use = fock;
        if (!damping) {
            const Eigen::MatrixXd err =
                x.transpose() *
                (fock * density * overlap - overlap * density * fock) * x;
            fock_hist.push_back(fock);
            err_hist.push_back(err);
            if (static_cast<int>(fock_hist.size()) > opt.diis_size) {
                fock_hist.pop_front();
                err_hist.pop_front();
            }
            const auto k = static_cast<Eigen::Index>(fock_hist.size());
            if (k >= 2) {
                Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k + 1, k + 1);
                Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
                for (Eigen::Index i = 0; i < k; ++i) {
                    for (Eigen::Index j = 0; j < k; ++j)
                        b(i, j) = err_hist[static_cast<std::size_t>(i)]
                                      .cwiseProduct(
                                          err_hist[static_cast<std::size_t>(j)])
                                      .sum();
                    b(i, k) = b(k, i) = -1.0;
                }
                rhs(k) = -1.0;
                const Eigen::VectorXd w = b.fullPivLu().solve(rhs);
                if (w.allFinite()) {
                    f_use.setZero();
                    for (Eigen::Index i = 0; i < k; ++i)
                        f_use += w(i) * fock_hist[static_cast<std::size_t>(i)];
                }
            }
        }

        const auto st = diagonalize_fock(f_use, x);
        const Eigen::MatrixXd d_new = density_from(st.coeffs, nocc);
        const Eigen::MatrixXd f_new = ao.h + two_electron_fock(ao, d_new);
        const double e_new = electronic_energy(ao, d_new, f_new);
        res.coeffs = st.coeffs;
        res.orbital_energies = st.eps;

        if (damping) {
            // Optimal damping: E(D + l dD) is quadratic in l.
            const Eigen::MatrixXd dd = d_new - density;
            const double slope = fock.cwiseProduct(dd).sum();
            const double curv = e_new - energy - slope;
            double lambda = 1.0;
            // Below ~1e-13 the quadratic model is roundoff; a full step then
            // changes the energy by noise only.
            if (curv > 1e-13)
                lambda = std::clamp(-slope / (2.0 * curv), 0.0, 1.0);
            const double e_mix = energy + lambda * slope + lambda * lambda * curv;
            last_drms = rms(lambda * dd);
            const double de = e_mix - energy;
            density += lambda * dd;
            fock += lambda * (f_new - fock);
            energy = e_mix;
            res.damped_energies.push_back(energy + ao.e_core);
            if (rms(dd) < opt.density_tol && std::abs(de) < opt.energy_tol) {
                res.energy = e_new + ao.e_core;
                return res;
            }
            continue;
        }

        const double de = e_new - energy;
        last_drms = rms(d_new - density);
        if (de > 1e-10 && it > 1) {
            // DIIS overshot; continue from the current density with damping.
            damping = true;
            res.damping_engaged = true;
            res.damped_energies.push_back(energy + ao.e_core);
            continue;
        }
        density = d_new;
        fock = f_new;
        energy = e_new;
        if (last_drms < opt.density_tol && std::abs(de) < opt.energy_tol) {
            res.energy = energy + ao.e_core;
            return res;
        }
    }
    std::ostringstream msg;
    msg << "RHF did not converge in " << opt.max_iterations
        << " iterations (last RMS density change " << last_drms << ")";
    throw ConvergenceError(msg.str(), last_drms);
}

/// Lowest eigenpair of the real singlet orbital Hessian (A + B).
inline std::pair<double, Eigen::VectorXd>
lowest_hessian_mode(const IntegralSet &ao, const RhfResult &res) {
    const auto mo = transform_to_mo(ao, res.coeffs);
    const int nocc = res.n_occupied;
    const int nmo = static_cast<int>(mo.norb);
    const int nvir = nmo - nocc;
    if (nocc == 0 || nvir == 0)
        return {0.0, Eigen::VectorXd()};
    Eigen::MatrixXd hess(nocc * nvir, nocc * nvir);
    for (int i = 0; i < nocc; ++i)
        for (int a = 0; a < nvir; ++a)
            for (int j = 0; j < nocc; ++j)
                for (int b = 0; b < nvir; ++b) {
                    const auto A = static_cast<std::size_t>(nocc + a);
                    const auto B = static_cast<std::size_t>(nocc + b);
                    const auto I = static_cast<std::size_t>(i);
                    const auto J = static_cast<std::size_t>(j);
                    double v = 4.0 * mo.g(I, A, J, B) - mo.g(I, B, J, A) -
                               mo.g(I, J, A, B);
                    if (i == j && a == b)
                        v += res.orbital_energies(nocc + a) -
                             res.orbital_energies(i);
                    hess(i * nvir + a, j * nvir + b) = v;
                }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

} // namespace detail

/// Closed-shell restricted Hartree-Fock from the core-Hamiltonian guess.
inline RhfResult run_rhf(const IntegralSet &ao, const Eigen::MatrixXd &overlap,
                         const RhfOptions &opt = {}) {
    if (ao.n_alpha != ao.n_beta)
        throw ContractViolation("run_rhf: closed-shell system required");
    if (static_cast<std::size_t>(overlap.rows()) != ao.norb ||
        static_cast<std::size_t>(overlap.cols()) != ao.norb)
        throw ContractViolation("run_rhf: overlap dimension mismatch");
    const int nocc = ao.n_alpha;
    const Eigen::MatrixXd x = detail::symmetric_orthogonalizer(overlap);
    Eigen::MatrixXd d0;
    if (opt.guess_blocks.empty()) {
        d0 = detail::density_from(detail::diagonalize_fock(ao.h, x).coeffs, nocc);
    } else {
        const auto n = static_cast<Eigen::Index>(ao.norb);
        d0 = Eigen::MatrixXd::Zero(n, n);
        int total = 0;
        for (const auto &blk : opt.guess_blocks) {
            const auto nb = static_cast<Eigen::Index>(blk.aos.size());
            Eigen::MatrixXd hb(nb, nb), sb(nb, nb);
            for (Eigen::Index i = 0; i < nb; ++i)
                for (Eigen::Index j = 0; j < nb; ++j) {
                    hb(i, j) = ao.h(blk.aos[i], blk.aos[j]);
                    sb(i, j) = overlap(blk.aos[i], blk.aos[j]);
                }
            const auto cb = detail::diagonalize_fock(
                hb, detail::symmetric_orthogonalizer(sb));
            const Eigen::MatrixXd db = detail::density_from(cb.coeffs, blk.n_occupied);
            for (Eigen::Index i = 0; i < nb; ++i)
                for (Eigen::Index j = 0; j < nb; ++j)
                    d0(blk.aos[i], blk.aos[j]) = db(i, j);
            total += blk.n_occupied;
        }
        if (total != nocc)
            throw ContractViolation("run_rhf: guess blocks hold " +
                                    std::to_string(total) + " orbitals, expected " +
                                    std::to_string(nocc));
    }
    RhfResult res = detail::scf_from_density(ao, overlap, x, d0, nocc, opt);
    if (!opt.follow_instabilities)
        return res;

    int total_iterations = res.iterations;
    for (int step = 0; step < opt.max_stability_steps; ++step) {
        auto [lowest, mode] = detail::lowest_hessian_mode(ao, res);
        res.lowest_hessian_eigenvalue = lowest;
        if (lowest > opt.instability_threshold)
            break;
        const auto nmo = res.coeffs.cols();
        const int nvir = static_cast<int>(nmo) - nocc;
        Eigen::MatrixXd kappa = Eigen::MatrixXd::Zero(nmo, nmo);
        for (int i = 0; i < nocc; ++i)
            for (int a = 0; a < nvir; ++a) {
                kappa(nocc + a, i) = mode(i * nvir + a);
                kappa(i, nocc + a) = -mode(i * nvir + a);
            }
        // Coarse line search along the unstable mode.
        double best_e = std::numeric_limits<double>::infinity();
        Eigen::MatrixXd best_c;
        for (int k = 1; k <= 16; ++k) {
            const double theta = 0.1 * k;
            const Eigen::MatrixXd c = res.coeffs * (theta * kappa).exp();
            const Eigen::MatrixXd d = detail::density_from(c, nocc);
            const double e = detail::electronic_energy(
                ao, d, ao.h + detail::two_electron_fock(ao, d));
            if (e < best_e) {
                best_e = e;
                best_c = c;
            }
        }
        auto next = detail::scf_from_density(
            ao, overlap, x, detail::density_from(best_c, nocc), nocc, opt);
        total_iterations += next.iterations;
        if (next.energy > res.energy - 1e-12)
            break;
        next.stability_steps = step + 1;
        next.damping_engaged = next.damping_engaged || res.damping_engaged;
        res = std::move(next);
    }
    res.iterations = total_iterations;
    return res;
}

} // namespace scqsci::integrals
