#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <lapacke.h>

#include "scqsci/cidiag/sparse.hpp"
#include "scqsci/error.hpp"

namespace scqsci::ci {

struct SpectrumResult {
    double energy = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
    int iterations = 0;
    std::string solver;
    std::optional<bool> degenerate; // filled by probe_degeneracy
    std::optional<double> gap;
};

/// y = A x for a symmetric operator, with its diagonal for preconditioning.
struct LinearOperator {
    std::size_t dim = 0;
    std::function<void(const Eigen::VectorXd &, Eigen::VectorXd &)> apply;
    Eigen::VectorXd diagonal;
};

inline LinearOperator as_operator(const SparseSymmetricMatrix &m) {
    return {m.dim, [&m](const Eigen::VectorXd &x, Eigen::VectorXd &y) { m.multiply(x, y); },
            m.diagonal};
}

struct DavidsonOptions {
    double tol = 1e-9;
    int max_subspace = 30;
    int max_iterations = 2000;
};

struct SolverOptions {
    std::size_t dense_threshold = 2000;
    DavidsonOptions davidson;
};

namespace detail {

// Sign fixed so the largest-magnitude component is positive.
inline void fix_sign(Eigen::VectorXd &v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (v(k) < 0)
        v = -v;
}

} // namespace detail

inline SpectrumResult dense_ground_state(const Eigen::MatrixXd &h) {
    if (h.rows() < 1 || h.rows() != h.cols())
        throw ContractViolation("dense_ground_state: square matrix of dimension >= 1 required");
    const auto n = static_cast<lapack_int>(h.rows());
    const lapack_int want = n > 1 ? 2 : 1;
    Eigen::MatrixXd a = h;
    Eigen::VectorXd w(n);
    Eigen::MatrixXd z(n, want);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(want));
    lapack_int found = 0;
    auto info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1,
                               want, 2 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), n,
                               support.data());
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff()) * static_cast<double>(n);
    bool poor = info != 0 || found != want;
    for (lapack_int c = 0; !poor && c < want; ++c)
        poor = (h * z.col(c) - w(c) * z.col(c)).norm() > 1e-12 * scale ||
               std::abs(z.col(c).norm() - 1.0) > 1e-10;
    if (poor) {
        // some optimized BLAS builds return corrupt vectors; Eigen does not call BLAS
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        if (es.info() != Eigen::Success)
            throw ConvergenceError("dense eigensolver failed", 0.0);
        w.head(want) = es.eigenvalues().head(want);
        z = es.eigenvectors().leftCols(want);
    }
    SpectrumResult r;
    r.energy = w(0);
    r.vector = z.col(0);
    detail::fix_sign(r.vector);
    r.residual = (h * r.vector - r.energy * r.vector).norm();
    r.solver = "dense";
    if (want > 1) {
        r.gap = w(1) - r.energy;
        r.degenerate = *r.gap < 1e-8;
    } else {
        r.degenerate = false;
    }
    return r;
}

/// Lowest eigenpair by Davidson with diagonal preconditioning, started from
/// the unit vector on `start`.
inline SpectrumResult davidson(const LinearOperator &op, std::size_t start,
                               const DavidsonOptions &opt = {}) {
    const auto n = static_cast<Eigen::Index>(op.dim);
    if (n < 1)
        throw ContractViolation("davidson: dimension must be >= 1");
    if (static_cast<Eigen::Index>(start) >= n)
        throw ContractViolation("davidson: start index out of range");
    const int max_sub = std::max(2, std::min<int>(opt.max_subspace, static_cast<int>(n)));

    Eigen::MatrixXd v(n, max_sub), av(n, max_sub);
    int m = 0;
    auto push = [&](Eigen::VectorXd t) -> bool {
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < m; ++j)
                t -= v.col(j).dot(t) * v.col(j);
        const double nt = t.norm();
        if (nt < 1e-10)
            return false;
        v.col(m) = t / nt;
        Eigen::VectorXd y(n);
        op.apply(v.col(m), y);
        av.col(m) = y;
        ++m;
        return true;
    };

    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0(static_cast<Eigen::Index>(start)) = 1.0;
    push(e0);

    SpectrumResult r;
    r.solver = "davidson";
    double best = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opt.max_iterations; ++it) {
        const Eigen::MatrixXd t = v.leftCols(m).transpose() * av.leftCols(m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()));
        const double theta = es.eigenvalues()(0);
        const Eigen::VectorXd s = es.eigenvectors().col(0);
        Eigen::VectorXd x = v.leftCols(m) * s;
        Eigen::VectorXd ax = av.leftCols(m) * s;
        Eigen::VectorXd res = ax - theta * x;
        const double rn = res.norm();
        best = std::min(best, rn);
        r.iterations = it;
        if (rn < opt.tol || m == n) {
            r.energy = theta;
            const double nx = x.norm();
            r.vector = x / nx;
            detail::fix_sign(r.vector);
            Eigen::VectorXd y(n);
            op.apply(r.vector, y);
            r.energy = r.vector.dot(y);
            r.residual = (y - r.energy * r.vector).norm();
            return r;
        }
        Eigen::VectorXd corr(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double den = theta - op.diagonal(i);
            if (std::abs(den) < 1e-8)
                den = den < 0 ? -1e-8 : 1e-8;
            corr(i) = res(i) / den;
        }
        if (m == max_sub) {
            // restart from the current Ritz vector
            v.col(0) = x;
            av.col(0) = ax;
            m = 1;
        }
        if (!push(corr) && !push(res))
            throw ConvergenceError("davidson: subspace collapsed", best);
    }
    throw ConvergenceError("davidson: no convergence within " +
                               std::to_string(opt.max_iterations) + " iterations",
                           best);
}

/// Dense for small dimensions, Davidson otherwise. Davidson starts on
/// `start`; index 0 holds the aufbau determinant of any canonically ordered
/// space that contains it.
inline SpectrumResult ground_state(const SparseSymmetricMatrix &h, std::size_t start = 0,
                                   const SolverOptions &opt = {}) {
    if (h.dim < 1)
        throw ContractViolation("ground_state: empty matrix");
    if (h.dim <= opt.dense_threshold)
        return dense_ground_state(h.to_dense());
    return davidson(as_operator(h), start, opt.davidson);
}

/// Second eigenvalue by Davidson on the operator deflated by the ground
/// vector; fills degenerate and gap.
inline void probe_degeneracy(const LinearOperator &op, SpectrumResult &ground,
                             double tol = 1e-8, const DavidsonOptions &opt = {}) {
    if (op.dim < 2) {
        ground.degenerate = false;
        return;
    }
    const Eigen::VectorXd c = ground.vector;
    const double shift = std::abs(ground.energy) + 1e3;
    LinearOperator deflated{op.dim,
                            [&](const Eigen::VectorXd &x, Eigen::VectorXd &y) {
                                op.apply(x, y);
                                y += shift * c.dot(x) * c;
                            },
                            op.diagonal + shift * c.cwiseAbs2()};
    Eigen::Index k = 0;
    (deflated.diagonal).minCoeff(&k);
    const auto second = davidson(deflated, static_cast<std::size_t>(k), opt);
    ground.gap = second.energy - ground.energy;
    ground.degenerate = *ground.gap < tol;
}

} // namespace scqsci::ci
