#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "common.hpp"

using namespace scqsci;
using namespace scqsci::ci;
using testing_support::data;
using testing_support::h4;

namespace {

det::DeterminantSpace random_subspace(int m, int na, int nb, std::size_t n, unsigned seed) {
    const auto full = det::full_sector(m, na, nb);
    std::mt19937 rng(seed);
    std::vector<det::Determinant> v{full[0]};
    std::uniform_int_distribution<std::size_t> pick(0, full.size() - 1);
    while (v.size() < n)
        v.push_back(full[pick(rng)]);
    return det::DeterminantSpace(v);
}

} // namespace

TEST(SubspaceHamiltonian, MatchesElementwiseSlaterCondon) {
    const auto ints = integrals::read_fcidump(data("fh_h2o_A.fcidump"));
    const auto space = random_subspace(6, 4, 4, 120, 3);
    const auto h = build_subspace_hamiltonian(space, ints);
    const auto dense = h.to_dense();
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            ASSERT_EQ(dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                      det::slater_condon_element(space[i], space[j], ints));
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(h.dim), -1.0, 2.0);
    Eigen::VectorXd y;
    h.multiply(x, y);
    EXPECT_LT((y - dense * x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SubspaceHamiltonian, WritesLowerTriangle) {
    const auto h = build_subspace_hamiltonian(det::full_sector(4, 2, 2), h4().mo);
    std::ostringstream out;
    write_matrix(h, out);
    std::istringstream in(out.str());
    std::size_t dim = 0;
    in >> dim;
    EXPECT_EQ(dim, 36u);
    Eigen::MatrixXd back = Eigen::MatrixXd::Zero(36, 36);
    std::size_t i, j;
    double v;
    while (in >> i >> j >> v) {
        ASSERT_GE(i, j);
        back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
    EXPECT_LT((back - h.to_dense()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseSolver, AgreesWithEigenSelfAdjointSolver) {
    const auto ints = integrals::read_fcidump(data("fh_dimer_A.fcidump"));
    const auto h = build_subspace_hamiltonian(det::full_sector(5, 4, 4), ints).to_dense();
    const auto r = dense_ground_state(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    EXPECT_NEAR(r.energy, es.eigenvalues()(0), 1e-11);
    EXPECT_NEAR(*r.gap, es.eigenvalues()(1) - es.eigenvalues()(0), 1e-10);
    EXPECT_LT((h * r.vector - r.energy * r.vector).norm(), 1e-10);
    EXPECT_NEAR(r.vector.norm(), 1.0, 1e-12);
}

TEST(Davidson, AgreesWithDenseOnFullSectors) {
    // 8H at 100 Angstrom: 4900 determinants
    const auto &in = testing_support::h8_far();
    const auto h8 = build_subspace_hamiltonian(det::full_sector(8, 4, 4), in.dimer);
    ASSERT_EQ(h8.dim, 4900u);
    const auto dv = davidson(as_operator(h8), 0, {});
    const auto dn = dense_ground_state(h8.to_dense());
    EXPECT_NEAR(dv.energy, dn.energy, 1e-9);
    EXPECT_LT(dv.residual, 1e-9);
    EXPECT_GT(std::abs(dv.vector.dot(dn.vector)), 1 - 1e-8);

    // interacting FH dimer, 2025 determinants
    const auto ints = integrals::read_fcidump(data("fh_dimer.fcidump"));
    const auto hfh = build_subspace_hamiltonian(det::full_sector(10, 8, 8), ints);
    EXPECT_NEAR(davidson(as_operator(hfh), 0, {}).energy, dense_ground_state(hfh.to_dense()).energy, 1e-9);
}

TEST(Davidson, ReportsNonConvergence) {
    const auto ints = integrals::read_fcidump(data("fh_dimer.fcidump"));
    const auto h = build_subspace_hamiltonian(det::full_sector(10, 8, 8), ints);
    DavidsonOptions opt;
    opt.max_iterations = 2;
    EXPECT_THROW(davidson(as_operator(h), 0, opt), ConvergenceError);
}

TEST(Davidson, DegeneracyProbe) {
    SparseSymmetricMatrix m;
    m.dim = 50;
    m.diagonal = Eigen::VectorXd::LinSpaced(50, 0.0, 49.0);
    m.diagonal(1) = 0.0;
    auto g = davidson(as_operator(m), 0, {});
    probe_degeneracy(as_operator(m), g);
    EXPECT_TRUE(*g.degenerate);

    const auto h = build_subspace_hamiltonian(det::full_sector(4, 2, 2), h4().mo);
    auto r = dense_ground_state(h.to_dense());
    const double gap = *r.gap;
    r.gap.reset();
    probe_degeneracy(as_operator(h), r);
    EXPECT_FALSE(*r.degenerate);
    EXPECT_NEAR(*r.gap, gap, 1e-8);
}

TEST(FullCi, SigmaMatchesExplicitMatrix) {
    const auto ints = integrals::read_fcidump(data("fh_h2o_A.fcidump"));
    FullCiSigma sigma(ints, 4, 4);
    const auto space = det::full_sector(6, 4, 4);
    ASSERT_EQ(sigma.dim(), space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        ASSERT_EQ(sigma.determinant(i), space[i]);
    const auto h = build_subspace_hamiltonian(space, ints);
    std::mt19937 rng(5);
    std::normal_distribution<double> n;
    Eigen::VectorXd x(static_cast<Eigen::Index>(sigma.dim()));
    for (auto &v : x)
        v = n(rng);
    Eigen::VectorXd y1, y2;
    sigma.apply(x, y1);
    h.multiply(x, y2);
    EXPECT_LT((y1 - y2).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT((sigma.diagonal() - h.diagonal).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FullCi, HydrogenGoldenNumbersAndSeparability) {
    const double e4 = testing_support::h4_fci();
    EXPECT_NEAR(e4, -1.939432, 2e-6);
    const auto r8 = full_ci(testing_support::h8_far().dimer);
    EXPECT_EQ(r8.solver, "davidson");
    EXPECT_NEAR(r8.energy, -3.878863, 2e-6);
    EXPECT_NEAR(r8.energy - 2 * e4, 0.0, 1e-7);
}

TEST(FullCi, GuardsBudgetAndSector) {
    FullCiOptions opt;
    opt.max_dim = 100;
    EXPECT_THROW(full_ci(testing_support::h8_far().dimer, opt), SizeLimitError);
    EXPECT_THROW(full_ci(h4().mo, 5, 1), ContractViolation);
}
