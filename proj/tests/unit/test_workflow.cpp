#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "common.hpp"

using namespace scqsci;
using namespace scqsci::wf;
using testing_support::fh;

namespace {

RunConfig config(Method m, int k_max, int shots, std::uint64_t seed) {
    RunConfig c;
    c.method = m;
    c.k_max = k_max;
    c.shots = shots;
    c.seed = seed;
    return c;
}

const SystemInputs &fh_dimer() {
    static const auto in = fh("fh_dimer");
    return in;
}

const hamsim::SamplePool &fh_pool() {
    static const auto pool = make_pool(fh_dimer().dimer, config(Method::Sc, 5, 1000, 2), "fh");
    return pool;
}

} // namespace

TEST(Interaction, ArithmeticAndConversion) {
    EXPECT_DOUBLE_EQ(supramolecular_interaction(-3.0, -1.25, -1.5), -0.25 * 627.509474);
    EXPECT_DOUBLE_EQ(dimer_approach_interaction(-3.0, -2.5), -0.5 * 627.509474);
    EXPECT_DOUBLE_EQ(supramolecular_interaction(-3.0, -1.25, -1.5, 1.0), -0.25);
    EXPECT_EQ(kKcalPerHartree, 627.509474);
}

TEST(ShotScaling, MonomerSquaresToDimer) {
    Eigen::VectorXd c(3);
    c << std::sqrt(0.99), 0.1, 0.0;
    const auto rows = shot_scaling_estimate(c);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[1].monomer_shots, 100.0, 1e-9);
    EXPECT_NEAR(rows[1].dimer_shots, 1e4, 1e-7);
    EXPECT_TRUE(std::isinf(rows[2].monomer_shots));
    EXPECT_TRUE(std::isinf(rows[2].dimer_shots));
    Eigen::VectorXd one = Eigen::VectorXd::Unit(4, 2);
    EXPECT_EQ(shot_scaling_estimate(one)[2].monomer_shots, 1.0);
    EXPECT_EQ(shot_scaling_estimate(one)[2].dimer_shots, 1.0);
    for (const auto &r : shot_scaling_estimate(Eigen::VectorXd::Constant(9, 1.0 / 3.0)))
        EXPECT_NEAR(r.dimer_shots, r.monomer_shots * r.monomer_shots, 1e-9);
    EXPECT_THROW(shot_scaling_estimate(Eigen::VectorXd::Ones(3)), ContractViolation);
    EXPECT_THROW(shot_scaling_estimate(Eigen::VectorXd()), ContractViolation);
}

TEST(Pipeline, RowsRecomputeExactlyAndSerialize) {
    auto cfg = config(Method::Sc, 3, 500, 4);
    cfg.full_ci = true;
    const auto rep = run_pipeline(fh_dimer(), cfg, &fh_pool());
    ASSERT_EQ(rep.rows.size(), 3u);
    for (const auto &r : rep.rows) {
        EXPECT_EQ(r.e_int_hartree, r.e_dimer - r.e_a - r.e_b);
        EXPECT_EQ(r.e_int_kcal, (r.e_dimer - r.e_a - r.e_b) * kKcalPerHartree);
    }
    EXPECT_EQ(rep.rhf.e_int_kcal, (rep.rhf.dimer - rep.rhf.a - rep.rhf.b) * kKcalPerHartree);
    ASSERT_TRUE(rep.full_ci);

    const auto j = to_json(rep);
    EXPECT_EQ(j["system"], "fh_dimer");
    EXPECT_EQ(j["method"], "sc");
    EXPECT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][1]["K"], 2);
    EXPECT_EQ(j["rows"][1]["E_int_kcal"].get<double>(), rep.rows[1].e_int_kcal);
    EXPECT_TRUE(j["rows"][0]["epsilon"].is_null());
    EXPECT_EQ(j["provenance"]["seed"], 4);
    EXPECT_EQ(j["provenance"]["kcal_per_hartree"], 627.509474);
    EXPECT_EQ(j["full_ci"]["E_dimer"].get<double>(), rep.full_ci->dimer);
    std::ostringstream table;
    print_table(rep, table);
    EXPECT_NE(table.str().find("fh_dimer"), std::string::npos);
}

TEST(Pipeline, MethodNamesRoundTrip) {
    for (Method m : {Method::Sc, Method::Org, Method::ScHci, Method::OrgDimerApproach})
        EXPECT_EQ(parse_method(method_name(m)), m);
    EXPECT_THROW(parse_method("qsci"), ContractViolation);
    auto bad = config(Method::Sc, 0, 10, 1);
    EXPECT_THROW(run_pipeline(fh_dimer(), bad), ContractViolation);
}

TEST(Pipeline, ReferenceOnlyPoolGivesRhf) {
    auto pool = fh_pool();
    const auto hf = hamsim::to_bitstring(pool.reference());
    for (auto &c : pool.per_k)
        c = {{hf, pool.shots}};
    for (Method m : {Method::Sc, Method::Org}) {
        const auto rep = run_pipeline(fh_dimer(), config(m, 5, 10, 0), &pool);
        for (const auto &r : rep.rows) {
            EXPECT_EQ(r.dim_dimer, 1u);
            EXPECT_NEAR(r.e_dimer, rep.rhf.dimer, 1e-12);
            EXPECT_NEAR(r.e_int_kcal, rep.rhf.e_int_kcal, 1e-8);
        }
    }
}

TEST(Pipeline, ScIsVariationalMonotoneAndBelowOrg) {
    const auto &in = fh_dimer();
    const auto sc = run_pipeline(in, config(Method::Sc, 5, 1000, 2), &fh_pool());
    const auto org = run_pipeline(in, config(Method::Org, 5, 1000, 2), &fh_pool());
    const double fci_ab = ci::full_ci(in.dimer).energy;
    const double fci_a = ci::full_ci(in.monomers[0]).energy;
    const double fci_b = ci::full_ci(in.monomers[1]).energy;
    for (std::size_t i = 0; i < sc.rows.size(); ++i) {
        const auto &s = sc.rows[i];
        EXPECT_LE(s.e_dimer, org.rows[i].e_dimer + 1e-12);
        EXPECT_LE(s.e_dimer, sc.rhf.dimer + 1e-12);
        EXPECT_GE(s.e_dimer, fci_ab - 1e-10);
        EXPECT_GE(s.e_a, fci_a - 1e-10);
        EXPECT_GE(s.e_b, fci_b - 1e-10);
        EXPECT_GE(org.rows[i].e_dimer, fci_ab - 1e-10);
        if (i > 0) {
            EXPECT_LE(s.e_dimer, sc.rows[i - 1].e_dimer + 1e-12);
            EXPECT_LE(s.e_a, sc.rows[i - 1].e_a + 1e-12);
            EXPECT_LE(org.rows[i].e_dimer, org.rows[i - 1].e_dimer + 1e-12);
        }
    }
}

TEST(Pipeline, DimerApproachUsesFarDimer) {
    auto in = fh("fh_dimer");
    in.dimer_far = integrals::read_fcidump(testing_support::data("fh_dimer_far.fcidump"));
    const auto rep = run_pipeline(in, config(Method::OrgDimerApproach, 2, 300, 5));
    for (const auto &r : rep.rows) {
        EXPECT_GT(r.dim_far, 0u);
        EXPECT_EQ(r.e_int_hartree, r.e_dimer - r.e_far);
        EXPECT_EQ(r.e_int_kcal, (r.e_dimer - r.e_far) * kKcalPerHartree);
    }
    EXPECT_THROW(run_pipeline(fh_dimer(), config(Method::OrgDimerApproach, 1, 10, 1)),
                 ContractViolation);
}

TEST(SizeConsistency, ScOnSeparatedHydrogenAcrossSeeds) {
    const auto &in = testing_support::h8_far();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = size_consistency_check(in, config(Method::Sc, 5, 10, seed));
        EXPECT_TRUE(r.passed) << "seed " << seed << ": " << r.max_abs_e_int;
        EXPECT_LT(r.coupling.max_cross_one_electron, 1e-12);
    }
    auto hci = config(Method::ScHci, 1, 10, 0);
    hci.epsilons = {1e-2, 1e-3};
    EXPECT_TRUE(size_consistency_check(in, hci).passed);
}

TEST(SizeConsistency, OrgIsNotSizeConsistent) {
    const auto r = size_consistency_check(testing_support::h8_far(), config(Method::Org, 3, 30, 1));
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.max_abs_e_int, 1e-6);
}

TEST(SizeConsistency, RefusesInteractingFragments) {
    EXPECT_THROW(size_consistency_check(fh_dimer(), config(Method::Sc, 1, 10, 1)),
                 ContractViolation);
}

TEST(SizeConsistency, FarFluorideDimerGivesZeroInteraction) {
    const auto in = fh("fh_dimer", true);
    const auto rep = run_pipeline(in, config(Method::Sc, 3, 500, 1));
    for (const auto &r : rep.rows)
        EXPECT_LT(std::abs(r.e_int_kcal), 5e-4);
}

TEST(FullCi, MatchesIndependentCasciReferences) {
    nlohmann::json manifest;
    std::ifstream(testing_support::data("fh_manifest.json")) >> manifest;
    for (const char *name : {"fh_dimer_A", "fh_dimer_B", "fh_dimer", "fh_dimer_far", "fh_h2o_A",
                             "fh_h2o_B", "fh_h2o", "fh_h2o_far"}) {
        const auto ints = integrals::read_fcidump(testing_support::data(std::string(name) + ".fcidump"));
        EXPECT_NEAR(ci::full_ci(ints).energy, manifest[name]["e_casci"].get<double>(), 1e-8)
            << name;
        if (manifest[name].contains("e_rhf")) {
            const auto hf = det::hf_reference(ints.n_alpha, ints.n_beta, static_cast<int>(ints.norb));
            EXPECT_NEAR(det::diagonal_energy(hf, ints), manifest[name]["e_rhf"].get<double>(), 1e-8)
                << name;
        }
    }
}
