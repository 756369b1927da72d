#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scqsci/cidiag/full_ci.hpp"
#include "scqsci/cidiag/solver.hpp"
#include "scqsci/cidiag/sparse.hpp"
#include "scqsci/determinants/slater_condon.hpp"
#include "scqsci/error.hpp"
#include "scqsci/hamsim/sampling.hpp"
#include "scqsci/subspace/hci.hpp"
#include "scqsci/subspace/subspaces.hpp"
#include "scqsci/version.hpp"
#include "scqsci/workflow/inputs.hpp"
#include "scqsci/workflow/interaction.hpp"

namespace scqsci::wf {

enum class Method { Sc, Org, ScHci, OrgDimerApproach };

inline const char *method_name(Method m) noexcept {
    switch (m) {
    case Method::Sc: return "sc";
    case Method::Org: return "org";
    case Method::ScHci: return "sc-hci";
    default: return "org-dimer-approach";
    }
}

inline Method parse_method(const std::string &s) {
    for (Method m : {Method::Sc, Method::Org, Method::ScHci, Method::OrgDimerApproach})
        if (s == method_name(m))
            return m;
    throw ContractViolation("unknown method '" + s +
                            "' (expected sc, org, sc-hci or org-dimer-approach)");
}

struct RunConfig {
    Method method = Method::Sc;
    double dt = 1.0;
    int k_max = 5;
    int shots = 10000;
    std::uint64_t seed = 0;
    std::vector<double> epsilons{1e-3};
    double kcal_per_hartree = kKcalPerHartree;
    bool full_ci = false;
    int max_qubits = 24;
    ci::SolverOptions solver;
};

inline void validate(const RunConfig &cfg) {
    if (cfg.k_max < 1)
        throw ContractViolation("K_max must be >= 1");
    if (cfg.shots < 1)
        throw ContractViolation("shots must be >= 1");
    if (!std::isfinite(cfg.dt))
        throw ContractViolation("dt must be finite");
    if (cfg.method == Method::ScHci) {
        if (cfg.epsilons.empty())
            throw ContractViolation("sc-hci needs at least one epsilon");
        for (double e : cfg.epsilons)
            if (!(e > 0.0))
                throw ContractViolation("epsilon must be positive");
    }
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ReportRow {
    int k = 0;               // 0 for sc-hci rows
    double epsilon = kNaN;   // sc-hci only
    double e_dimer = kNaN;
    double e_a = kNaN;
    double e_b = kNaN;
    double e_far = kNaN;     // dimer approach only
    double e_selector = kNaN; // plain HCI dimer energy (sc-hci only)
    std::size_t dim_dimer = 0, dim_a = 0, dim_b = 0, dim_far = 0;
    std::size_t intra = 0, charge_transfer = 0;
    double e_int_hartree = kNaN;
    double e_int_kcal = kNaN;
};

struct ReferenceEnergies {
    double dimer = kNaN;
    double a = kNaN;
    double b = kNaN;
    double far = kNaN;
    double e_int_hartree = kNaN;
    double e_int_kcal = kNaN;
};

struct Report {
    std::string system;
    Method method = Method::Sc;
    RunConfig config;
    std::vector<ReportRow> rows;
    ReferenceEnergies rhf;
    std::optional<ReferenceEnergies> full_ci;
};

namespace detail {

inline double subspace_energy(const det::DeterminantSpace &space,
                              const integrals::IntegralSet &ints,
                              const ci::SolverOptions &opt) {
    return ci::ground_state(ci::build_subspace_hamiltonian(space, ints), 0, opt).energy;
}

inline double reference_energy(const integrals::IntegralSet &ints) {
    const auto hf = det::hf_reference(ints.n_alpha, ints.n_beta, static_cast<int>(ints.norb));
    return det::diagonal_energy(hf, ints);
}

template <typename F> auto with_context(const std::string &where, F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        throw Error(where + ": " + e.what());
    }
}

inline void set_interaction(ReportRow &r, Method m, double conv) {
    if (m == Method::OrgDimerApproach) {
        r.e_int_hartree = r.e_dimer - r.e_far;
        r.e_int_kcal = dimer_approach_interaction(r.e_dimer, r.e_far, conv);
    } else {
        r.e_int_hartree = r.e_dimer - r.e_a - r.e_b;
        r.e_int_kcal = supramolecular_interaction(r.e_dimer, r.e_a, r.e_b, conv);
    }
}

} // namespace detail

/// Sampling pool for a system under the run configuration.
inline hamsim::SamplePool make_pool(const integrals::IntegralSet &ints, const RunConfig &cfg,
                                    const std::string &system) {
    hamsim::PoolOptions po;
    po.system = system;
    po.dt = cfg.dt;
    po.k_max = cfg.k_max;
    po.shots = cfg.shots;
    po.seed = cfg.seed;
    po.max_qubits = cfg.max_qubits;
    return po.k_max > 0 ? hamsim::generate_pool(ints, po) : hamsim::SamplePool{};
}

/// Runs one method over K = 1..K_max (or over each epsilon for sc-hci).
/// `pool` replaces the simulated dimer pool when given (e.g. hardware counts).
inline Report run_pipeline(const SystemInputs &in, const RunConfig &cfg,
                           const hamsim::SamplePool *pool = nullptr) {
    validate(cfg);
    validate(in);
    Report rep;
    rep.system = in.name;
    rep.method = cfg.method;
    rep.config = cfg;
    const auto &part = in.partition;
    const double conv = cfg.kcal_per_hartree;

    rep.rhf.dimer = detail::reference_energy(in.dimer);
    rep.rhf.a = detail::reference_energy(in.monomers[0]);
    rep.rhf.b = detail::reference_energy(in.monomers[1]);
    rep.rhf.e_int_hartree = rep.rhf.dimer - rep.rhf.a - rep.rhf.b;
    rep.rhf.e_int_kcal = supramolecular_interaction(rep.rhf.dimer, rep.rhf.a, rep.rhf.b, conv);
    if (in.dimer_far)
        rep.rhf.far = detail::reference_energy(*in.dimer_far);

    if (cfg.full_ci) {
        ReferenceEnergies f;
        f.dimer = detail::with_context(in.name + " dimer full-CI",
                                       [&] { return ci::full_ci(in.dimer).energy; });
        f.a = detail::with_context(in.name + " monomer A full-CI",
                                   [&] { return ci::full_ci(in.monomers[0]).energy; });
        f.b = detail::with_context(in.name + " monomer B full-CI",
                                   [&] { return ci::full_ci(in.monomers[1]).energy; });
        if (in.dimer_far)
            f.far = detail::with_context(in.name + " far dimer full-CI",
                                         [&] { return ci::full_ci(*in.dimer_far).energy; });
        f.e_int_hartree = f.dimer - f.a - f.b;
        f.e_int_kcal = supramolecular_interaction(f.dimer, f.a, f.b, conv);
        rep.full_ci = f;
    }

    auto monomer_rows = [&](ReportRow &row, const sub::ScSubspaces &sc, const std::string &where) {
        row.dim_a = sc.s_a.size();
        row.dim_b = sc.s_b.size();
        row.intra = sc.intra_sampled;
        row.charge_transfer = sc.ct_sampled;
        row.e_a = detail::with_context(where + " monomer A", [&] {
            return detail::subspace_energy(sc.s_a, in.monomers[0], cfg.solver);
        });
        row.e_b = detail::with_context(where + " monomer B", [&] {
            return detail::subspace_energy(sc.s_b, in.monomers[1], cfg.solver);
        });
    };

    if (cfg.method == Method::ScHci) {
        for (double eps : cfg.epsilons) {
            const std::string where = in.name + " epsilon=" + std::to_string(eps);
            const auto hci = detail::with_context(where + " dimer selection", [&] {
                return sub::hci_select(in.dimer, eps, {200, cfg.solver});
            });
            ReportRow row;
            row.epsilon = eps;
            row.e_selector = hci.spectrum.energy;
            const auto sc = sub::build_sc_subspaces(hci.space.dets(), part);
            monomer_rows(row, sc, where);
            const auto space = sub::assemble_dimer_space(sc, part);
            row.dim_dimer = space.size();
            row.e_dimer = detail::with_context(where + " dimer", [&] {
                return detail::subspace_energy(space, in.dimer, cfg.solver);
            });
            detail::set_interaction(row, cfg.method, conv);
            rep.rows.push_back(row);
        }
        return rep;
    }

    hamsim::SamplePool own;
    if (!pool) {
        own = detail::with_context(in.name + " dimer sampling",
                                   [&] { return make_pool(in.dimer, cfg, in.name + " dimer"); });
        pool = &own;
    }
    if (pool->k_max() < cfg.k_max)
        throw ContractViolation(in.name + ": sample pool holds K = " +
                                std::to_string(pool->k_max()) + " < K_max = " +
                                std::to_string(cfg.k_max));
    sub::require_sector(part, pool->norb, pool->n_alpha, pool->n_beta);

    hamsim::SamplePool far_pool;
    if (cfg.method == Method::OrgDimerApproach) {
        if (!in.dimer_far)
            throw ContractViolation("org-dimer-approach needs a far-separated dimer");
        far_pool = detail::with_context(in.name + " far dimer sampling", [&] {
            return make_pool(*in.dimer_far, cfg, in.name + " far dimer");
        });
    }

    for (int k = 1; k <= cfg.k_max; ++k) {
        const std::string where = in.name + " K=" + std::to_string(k);
        ReportRow row;
        row.k = k;
        const auto sc = sub::build_sc_subspaces(*pool, k, part);
        row.intra = sc.intra_sampled;
        row.charge_transfer = sc.ct_sampled;
        if (cfg.method == Method::OrgDimerApproach) {
            const auto near = sub::build_org_subspace(*pool, k);
            const auto far = sub::build_org_subspace(far_pool, k);
            row.dim_dimer = near.size();
            row.dim_far = far.size();
            row.e_dimer = detail::with_context(where + " dimer", [&] {
                return detail::subspace_energy(near, in.dimer, cfg.solver);
            });
            row.e_far = detail::with_context(where + " far dimer", [&] {
                return detail::subspace_energy(far, *in.dimer_far, cfg.solver);
            });
        } else {
            monomer_rows(row, sc, where);
            const auto space = cfg.method == Method::Sc ? sub::assemble_dimer_space(sc, part)
                                                        : sub::build_org_subspace(*pool, k);
            row.dim_dimer = space.size();
            row.e_dimer = detail::with_context(where + " dimer", [&] {
                return detail::subspace_energy(space, in.dimer, cfg.solver);
            });
        }
        detail::set_interaction(row, cfg.method, conv);
        rep.rows.push_back(row);
    }
    return rep;
}

struct SizeConsistencyResult {
    bool passed = false;
    double max_abs_e_int = 0.0; // Hartree
    CouplingReport coupling;
    Report report;
};

/// Refuses inputs whose fragments interact; otherwise passes iff every row
/// has |E_AB - E_A - E_B| <= tol.
inline SizeConsistencyResult size_consistency_check(const SystemInputs &in, const RunConfig &cfg,
                                                    double tol = 1e-7,
                                                    double coupling_tol = 1e-10) {
    SizeConsistencyResult r;
    r.coupling = inter_fragment_coupling(in.dimer, in.partition);
    if (r.coupling.max_cross_one_electron > coupling_tol ||
        r.coupling.max_exchange_two_electron > coupling_tol) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "%s: fragments interact (max cross h %.3e, max exchange-type g %.3e); "
                      "the size-consistency check needs non-interacting fragments",
                      in.name.c_str(), r.coupling.max_cross_one_electron,
                      r.coupling.max_exchange_two_electron);
        throw ContractViolation(buf);
    }
    if (cfg.method == Method::OrgDimerApproach)
        throw ContractViolation("size-consistency check applies to supramolecular methods");
    r.report = run_pipeline(in, cfg);
    for (const auto &row : r.report.rows)
        r.max_abs_e_int = std::max(r.max_abs_e_int, std::abs(row.e_int_hartree));
    r.passed = r.max_abs_e_int <= tol;
    return r;
}

inline nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const ReferenceEnergies &e) {
    return {{"E_dimer", number_or_null(e.dimer)},
            {"E_A", number_or_null(e.a)},
            {"E_B", number_or_null(e.b)},
            {"E_far", number_or_null(e.far)},
            {"E_int_hartree", number_or_null(e.e_int_hartree)},
            {"E_int_kcal", number_or_null(e.e_int_kcal)}};
}

inline nlohmann::json to_json(const Report &rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : rep.rows)
        rows.push_back({{"K", r.k},
                        {"epsilon", number_or_null(r.epsilon)},
                        {"E_dimer", number_or_null(r.e_dimer)},
                        {"E_A", number_or_null(r.e_a)},
                        {"E_B", number_or_null(r.e_b)},
                        {"E_far", number_or_null(r.e_far)},
                        {"E_selector", number_or_null(r.e_selector)},
                        {"dim_dimer", r.dim_dimer},
                        {"dim_A", r.dim_a},
                        {"dim_B", r.dim_b},
                        {"dim_far", r.dim_far},
                        {"intra_sampled", r.intra},
                        {"ct_sampled", r.charge_transfer},
                        {"E_int_hartree", number_or_null(r.e_int_hartree)},
                        {"E_int_kcal", number_or_null(r.e_int_kcal)}});
    const auto &c = rep.config;
    nlohmann::json j = {{"system", rep.system},
                        {"method", method_name(rep.method)},
                        {"rows", rows},
                        {"rhf", to_json(rep.rhf)},
                        {"full_ci", rep.full_ci ? to_json(*rep.full_ci) : nlohmann::json(nullptr)},
                        {"provenance",
                         {{"seed", c.seed},
                          {"shots", c.shots},
                          {"dt", c.dt},
                          {"K_max", c.k_max},
                          {"epsilons", c.epsilons},
                          {"kcal_per_hartree", c.kcal_per_hartree},
                          {"version", kVersion}}}};
    return j;
}

/// Plain-text table, one line per K (or epsilon).
inline void print_table(const Report &rep, std::ostream &out) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s  method=%s  seed=%llu  shots=%d  dt=%g\n",
                  rep.system.c_str(), method_name(rep.method),
                  static_cast<unsigned long long>(rep.config.seed), rep.config.shots,
                  rep.config.dt);
    out << buf;
    const bool hci = rep.method == Method::ScHci;
    const bool far = rep.method == Method::OrgDimerApproach;
    std::snprintf(buf, sizeof buf, "%10s %7s %7s %8s %6s %6s %16s %16s %16s %12s\n",
                  hci ? "epsilon" : "K", far ? "-" : "dim A", far ? "dim far" : "dim B",
                  "dim AB", "intra", "CT", far ? "E far" : "E A", far ? "-" : "E B", "E AB",
                  "E int/kcal");
    out << buf;
    for (const auto &r : rep.rows) {
        char key[32];
        if (hci)
            std::snprintf(key, sizeof key, "%.1e", r.epsilon);
        else
            std::snprintf(key, sizeof key, "%d", r.k);
        std::snprintf(buf, sizeof buf,
                      "%10s %7zu %7zu %8zu %6zu %6zu %16.8f %16.8f %16.8f %12.3f\n", key,
                      far ? std::size_t{0} : r.dim_a, far ? r.dim_far : r.dim_b, r.dim_dimer,
                      r.intra, r.charge_transfer, far ? r.e_far : r.e_a,
                      far ? kNaN : r.e_b, r.e_dimer, r.e_int_kcal);
        out << buf;
    }
    auto ref = [&](const char *label, const ReferenceEnergies &e) {
        std::snprintf(buf, sizeof buf, "%10s %7s %7s %8s %6s %6s %16.8f %16.8f %16.8f %12.3f\n",
                      label, "", "", "", "", "", e.a, e.b, e.dimer, e.e_int_kcal);
        out << buf;
    };
    ref("RHF", rep.rhf);
    if (rep.full_ci)
        ref("full-CI", *rep.full_ci);
}

} // namespace scqsci::wf
