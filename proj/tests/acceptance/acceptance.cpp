// Acceptance driver: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include "scqsci/scqsci.hpp"

using namespace scqsci;
using Clock = std::chrono::steady_clock;
using Mat = Eigen::MatrixXcd;

namespace {

std::string data_dir = SCQSCI_TEST_DATA;

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

wf::RunConfig config(wf::Method m, int k_max, int shots, std::uint64_t seed) {
    wf::RunConfig c;
    c.method = m;
    c.k_max = k_max;
    c.shots = shots;
    c.seed = seed;
    return c;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Inputs and pools shared between criteria, built on first use.
struct Cache {
    std::map<std::string, wf::SystemInputs> inputs;
    std::map<std::string, hamsim::SamplePool> pools;
    std::map<std::string, double> fci;
    std::optional<integrals::HydrogenMonomer> h4;

    const integrals::HydrogenMonomer &hydrogen4() {
        if (!h4)
            h4 = integrals::build_hydrogen_monomer(integrals::hydrogen_square(2.0));
        return *h4;
    }

    const wf::SystemInputs &system(const std::string &name) {
        auto it = inputs.find(name);
        if (it != inputs.end())
            return it->second;
        wf::SystemInputs in;
        if (name == "8H") {
            in = wf::load_hydrogen_inputs(integrals::hydrogen_square_dimer(2.0, 100.0),
                                          std::nullopt, "8H");
        } else {
            const bool far = name.ends_with("_far");
            const std::string base = far ? name.substr(0, name.size() - 4) : name;
            const std::string d = data_dir + "/";
            in = wf::load_fcidump_inputs(d + name + ".fcidump", d + base + "_A.fcidump",
                                         d + base + "_B.fcidump", d + name + ".orbmap",
                                         std::nullopt, name);
            if (!far)
                in.dimer_far = integrals::read_fcidump(d + name + "_far.fcidump");
        }
        return inputs.emplace(name, std::move(in)).first->second;
    }

    // K = 10, 1e4 shots, seed 1 for the fluoride systems
    const hamsim::SamplePool &pool(const std::string &name) {
        auto it = pools.find(name);
        if (it != pools.end())
            return it->second;
        const auto cfg = name == "8H" ? config(wf::Method::Sc, 5, 100, 1)
                                      : config(wf::Method::Sc, 10, 10000, 1);
        return pools.emplace(name, wf::make_pool(system(name).dimer, cfg, name)).first->second;
    }

    double full_ci(const std::string &key, const integrals::IntegralSet &ints) {
        auto it = fci.find(key);
        if (it != fci.end())
            return it->second;
        return fci.emplace(key, ci::full_ci(ints).energy).first->second;
    }
};

Cache cache;

Outcome criterion_1() {
    const auto t0 = Clock::now();
    const auto &h4 = cache.hydrogen4();
    const auto h8 = integrals::build_hydrogen_monomer(integrals::hydrogen_square_dimer(2.0, 100.0));
    const double f4 = cache.full_ci("4H", h4.mo);
    const double f8 = ci::full_ci(h8.mo).energy;
    const double t = seconds_since(t0);
    const double worst = std::max({std::abs(h4.rhf.energy - -1.776770), std::abs(h8.rhf.energy - -3.553541),
                                   std::abs(f4 - -1.939432), std::abs(f8 - -3.878863)});
    return {worst <= 2e-6 && t < 60.0,
            fmt("RHF 4H %.6f 8H %.6f, FCI 4H %.6f 8H %.6f, max dev %.1e, %.1f s", h4.rhf.energy,
                h8.rhf.energy, f4, f8, worst, t)};
}

Outcome criterion_2() {
    const auto &in = cache.system("8H");
    double worst = 0.0;
    bool all = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = wf::size_consistency_check(in, config(wf::Method::Sc, 5, 10, seed));
        all = all && r.passed && r.report.rows.size() == 5;
        worst = std::max(worst, r.max_abs_e_int);
    }
    return {all && worst <= 1e-7, fmt("max |E_int| %.2e Ha over K 1..5, seeds 1..5, 10 shots", worst)};
}

Outcome criterion_3() {
    const double f4 = cache.full_ci("4H", cache.hydrogen4().mo);
    const double f8 = cache.full_ci("8H", cache.system("8H").dimer);
    const double d = f8 - 2 * f4;
    return {std::abs(d) <= 1e-7, fmt("E(8H) - 2 E(4H) = %.2e Ha", d)};
}

Outcome criterion_4() {
    constexpr double tol = 1e-10;
    int violations = 0;
    std::string first;
    auto check = [&](bool ok, const std::string &what) {
        if (!ok && violations++ == 0)
            first = what;
    };
    std::size_t rows = 0;
    for (const std::string name : {"8H", "fh_dimer", "fh_h2o"}) {
        const auto &in = cache.system(name);
        const auto &pool = cache.pool(name);
        const int k_max = pool.k_max();
        const double fab = cache.full_ci(name, in.dimer);
        const double fa = cache.full_ci(name + "_A", in.monomers[0]);
        const double fb = cache.full_ci(name + "_B", in.monomers[1]);
        std::map<wf::Method, wf::Report> reps;
        for (auto m : {wf::Method::Sc, wf::Method::Org})
            reps[m] = wf::run_pipeline(in, config(m, k_max, pool.shots, pool.seed), &pool);
        if (in.dimer_far)
            reps[wf::Method::OrgDimerApproach] = wf::run_pipeline(
                in, config(wf::Method::OrgDimerApproach, k_max, pool.shots, pool.seed), &pool);
        const double ffar = in.dimer_far ? cache.full_ci(name + "_far", *in.dimer_far) : 0.0;
        for (const auto &[m, rep] : reps) {
            const std::string tag = name + " " + wf::method_name(m);
            for (std::size_t i = 0; i < rep.rows.size(); ++i) {
                const auto &r = rep.rows[i];
                const std::string at = tag + " K=" + std::to_string(r.k);
                ++rows;
                check(r.e_dimer <= rep.rhf.dimer + tol && r.e_dimer >= fab - tol, at + " dimer bounds");
                if (m == wf::Method::OrgDimerApproach) {
                    check(r.e_far >= ffar - tol, at + " far bound");
                } else {
                    check(r.e_a <= rep.rhf.a + tol && r.e_a >= fa - tol, at + " A bounds");
                    check(r.e_b <= rep.rhf.b + tol && r.e_b >= fb - tol, at + " B bounds");
                }
                if (i > 0) {
                    const auto &p = rep.rows[i - 1];
                    check(r.e_dimer <= p.e_dimer + tol, at + " dimer monotone");
                    if (m == wf::Method::OrgDimerApproach)
                        check(r.e_far <= p.e_far + tol, at + " far monotone");
                    else
                        check(r.e_a <= p.e_a + tol && r.e_b <= p.e_b + tol, at + " monomers monotone");
                }
                if (m == wf::Method::Sc) {
                    const auto &o = reps.at(wf::Method::Org).rows[i];
                    check(r.e_dimer <= o.e_dimer + tol, at + " E_sc <= E_org");
                    const auto sc = sub::build_sc_subspaces(pool, r.k, in.partition);
                    check(sub::build_org_subspace(pool, r.k).is_subset_of(
                              sub::assemble_dimer_space(sc, in.partition)),
                          at + " org space inside sc space");
                }
            }
        }
    }
    return {violations == 0, violations == 0
                                 ? fmt("%zu rows over 8H, FH dimer, FH-H2O; sc, org, dimer approach", rows)
                                 : fmt("%d violations, first: %s", violations, first.c_str())};
}

Outcome criterion_5() {
    const auto &ints = cache.hydrogen4().mo;
    const Mat dense = hamsim::to_dense(hamsim::jordan_wigner(ints));
    const auto space = det::full_sector(4, 2, 2);
    const auto sc = ci::build_subspace_hamiltonian(space, ints).to_dense();
    double worst = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j) {
            const auto bi = static_cast<Eigen::Index>(hamsim::to_bitstring(space[i]));
            const auto bj = static_cast<Eigen::Index>(hamsim::to_bitstring(space[j]));
            const auto v = hamsim::layout_sign(space[i]) * hamsim::layout_sign(space[j]) * dense(bi, bj);
            worst = std::max(worst, std::abs(v - sc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
    double dav = 0.0;
    std::size_t largest = 0;
    for (const std::string name : {"fh_dimer", "8H"}) {
        const auto &in = cache.system(name);
        const auto h = ci::build_subspace_hamiltonian(
            det::full_sector(static_cast<int>(in.dimer.norb), in.dimer.n_alpha, in.dimer.n_beta), in.dimer);
        const auto d = ci::davidson(ci::as_operator(h), 0, {});
        const auto e = ci::dense_ground_state(h.to_dense());
        dav = std::max(dav, std::abs(d.energy - e.energy));
        largest = std::max(largest, h.dim);
    }
    return {worst < 1e-10 && dav <= 1e-9,
            fmt("4H 36x36 max |dH| %.1e; Davidson vs dense max |dE| %.1e up to dim %zu", worst, dav, largest)};
}

Outcome criterion_6() {
    using namespace hamsim;
    const auto &ints = cache.hydrogen4().mo;
    const auto qh = jordan_wigner(ints);
    const auto basis = Basis::sector(4, 2, 2);
    const auto hf = to_bitstring(det::hf_reference(2, 2, 4));

    double drift = 0.0;
    {
        Evolver ev(build_trotter_schedule(qh, 1.0, 2), basis);
        auto st = Statevector::basis_state(basis, hf);
        for (int k = 1; k <= 10; ++k) {
            ev.apply(st, 1);
            drift = std::max(drift, std::abs(st.norm() - 1.0));
        }
    }

    // sector of every draw in the cached pools
    std::size_t draws = 0, outside = 0;
    for (const std::string name : {"8H", "fh_dimer", "fh_h2o"}) {
        const auto &pool = cache.pool(name);
        for (const auto &counts : pool.per_k)
            for (const auto &[bits, n] : counts) {
                const auto d = to_determinant(bits);
                draws += static_cast<std::size_t>(n);
                if (d.n_alpha() != pool.n_alpha || d.n_beta() != pool.n_beta ||
                    (bits >> (2 * pool.norb)) != 0)
                    outside += static_cast<std::size_t>(n);
            }
    }

    // exact propagator restricted to the sector
    const Mat full = to_dense(qh);
    const auto n = static_cast<Eigen::Index>(basis->size());
    Mat hs(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            hs(i, j) = full(static_cast<Eigen::Index>(basis->state(static_cast<std::size_t>(i))),
                            static_cast<Eigen::Index>(basis->state(static_cast<std::size_t>(j))));
    Eigen::SelfAdjointEigenSolver<Mat> es(hs);
    const Eigen::VectorXcd phase = (es.eigenvalues().cast<cplx>() * cplx(0.0, -1.0)).array().exp().matrix();
    const Eigen::VectorXcd exact = es.eigenvectors() * phase.asDiagonal() *
                                   es.eigenvectors().adjoint() *
                                   Statevector::basis_state(basis, hf).amplitudes;
    auto error = [&](double dt) {
        const auto st = evolve(Statevector::basis_state(basis, hf), build_trotter_schedule(qh, dt, 2),
                               static_cast<int>(std::lround(1.0 / dt)));
        return (st.amplitudes - exact).norm();
    };
    const double r1 = error(0.5) / error(0.25), r2 = error(0.25) / error(0.125);

    // chi-square of 1e5 draws against |amplitude|^2
    const auto st = evolve(Statevector::basis_state(basis, hf), build_trotter_schedule(qh, 1.0, 2), 3);
    const int shots = 100000;
    const auto counts = sample(st, shots, 2024, 1);
    double chi2 = 0.0, pooled_obs = 0.0, pooled_exp = 0.0;
    int bins = 0;
    for (std::size_t i = 0; i < basis->size(); ++i) {
        const double e = std::norm(st.amplitudes(static_cast<Eigen::Index>(i))) * shots;
        const auto it = counts.find(basis->state(i));
        const double o = it == counts.end() ? 0.0 : it->second;
        if (e < 5.0) {
            pooled_obs += o;
            pooled_exp += e;
            continue;
        }
        chi2 += (o - e) * (o - e) / e;
        ++bins;
    }
    if (pooled_exp > 0.0) {
        chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++bins;
    }
    const double p = 1.0 - boost::math::cdf(boost::math::chi_squared(bins - 1), chi2);

    const bool ok = drift < 1e-12 && outside == 0 && draws > 0 && std::abs(r1 - 4.0) < 0.6 &&
                    std::abs(r2 - 4.0) < 0.6 && p > 1e-3;
    return {ok, fmt("norm drift %.1e; %zu draws, %zu outside sector; dt-halving ratios %.2f %.2f; "
                    "chi2 p = %.3f (%d bins)",
                    drift, draws, outside, r1, r2, p, bins)};
}

Outcome criterion_7() {
    const auto &in = cache.system("fh_dimer");
    const auto big = sub::hci_select(in.dimer, 1e3);
    const double rhf = det::diagonal_energy(det::hf_reference(8, 8, 10), in.dimer);
    const double d_big = std::abs(big.spectrum.energy - rhf);
    const double d_fci =
        std::abs(sub::hci_select(cache.hydrogen4().mo, 1e-10).spectrum.energy - cache.full_ci("4H", cache.hydrogen4().mo));
    bool monotone = true;
    std::ostringstream trend;
    for (const std::string name : {"fh_dimer", "fh_h2o"}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double eps : {5e-3, 1e-3, 5e-4, 1e-4}) {
            const auto r = sub::hci_select(cache.system(name).dimer, eps);
            monotone = monotone && r.spectrum.energy <= prev + 1e-12;
            prev = r.spectrum.energy;
        }
        trend << name << " " << fmt("%.6f", prev) << " ";
    }
    return {d_big <= 1e-12 && big.space.size() == 1 && d_fci <= 1e-9 && monotone,
            fmt("large eps |E-E_RHF| %.1e; 4H eps 1e-10 |E-E_FCI| %.1e; non-increasing %s (at 1e-4: %s)",
                d_big, d_fci, monotone ? "yes" : "no", trend.str().c_str())};
}

Outcome criterion_8a() {
    const std::vector<std::pair<std::string, double>> ref{{"fh_dimer", -200.103699},
                                                          {"fh_h2o", -176.142717},
                                                          {"fh_dimer_far", -200.097212},
                                                          {"fh_h2o_far", -176.128718}};
    double worst = 0.0;
    std::ostringstream s;
    for (const auto &[name, e] : ref) {
        const auto ints = integrals::read_fcidump(data_dir + "/" + name + ".fcidump");
        const double f = cache.full_ci(name, ints);
        worst = std::max(worst, std::abs(f - e));
        s << fmt("%s %.6f (%+.1e) ", name.c_str(), f, f - e);
    }
    return {worst <= 1e-5, s.str() + fmt("max dev %.1e Ha", worst)};
}

Outcome criterion_8b() {
    double worst = 0.0;
    for (const std::string name : {"fh_dimer_far", "fh_h2o_far"}) {
        const auto rep = wf::run_pipeline(cache.system(name), config(wf::Method::Sc, 5, 10000, 1));
        for (const auto &r : rep.rows)
            worst = std::max(worst, std::abs(r.e_int_kcal));
    }
    const bool zero = fmt("%.3f", worst) == "0.000";
    return {zero, fmt("max |E_int| %.2e kcal/mol over K 1..5, 1e4 shots (prints %.3f)", worst, worst)};
}

Outcome criterion_8c() {
    const std::vector<std::pair<std::string, double>> cas{{"fh_dimer", -4.071}, {"fh_h2o", -8.786}};
    bool ok = true;
    std::ostringstream s;
    for (const auto &[name, target] : cas) {
        const auto &pool = cache.pool(name);
        const auto rep = wf::run_pipeline(cache.system(name), config(wf::Method::Sc, 10, 10000, 1), &pool);
        const double e = rep.rows.back().e_int_kcal;
        ok = ok && std::abs(e - target) <= 0.05;
        s << fmt("%s K=10 %.3f vs %.3f (%+.3f); ", name.c_str(), e, target, e - target);
    }
    return {ok, s.str() + "1e4 shots"};
}

Outcome criterion_9() {
    // stored Hartree -> kcal must be exact, also after a JSON round trip
    const auto &pool = cache.pool("fh_dimer");
    const auto rep = wf::run_pipeline(cache.system("fh_dimer"), config(wf::Method::Sc, 10, 10000, 1), &pool);
    const auto back = nlohmann::json::parse(wf::to_json(rep).dump());
    const double conv = back["provenance"]["kcal_per_hartree"].get<double>();
    bool exact = true;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto &r = rep.rows[i];
        const auto &j = back["rows"][i];
        const double h = j["E_dimer"].get<double>() - j["E_A"].get<double>() - j["E_B"].get<double>();
        exact = exact && h == j["E_int_hartree"].get<double>() &&
                h * conv == j["E_int_kcal"].get<double>() &&
                j["E_int_kcal"].get<double>() == r.e_int_kcal;
    }
    // printed total energies -> printed interaction energies
    struct Row {
        const char *what;
        double value, expect;
    };
    const Row rows[] = {
        {"FH dimer sc K=10", wf::supramolecular_interaction(-200.103681, -100.048655, -100.048558), -4.059},
        {"FH-H2O sc K=10", wf::supramolecular_interaction(-176.142652, -76.080688, -100.048023), -8.748},
        {"FH dimer dimer-approach K=5", wf::dimer_approach_interaction(-200.103653, -200.097202), -4.048},
        {"FH-H2O dimer-approach K=5", wf::dimer_approach_interaction(-176.142533, -176.128661), -8.705},
    };
    bool table = true;
    std::ostringstream s;
    for (const auto &r : rows) {
        table = table && fmt("%.3f", r.value) == fmt("%.3f", r.expect);
        s << fmt("%s %.3f; ", r.what, r.value);
    }
    return {exact && table, std::string(exact ? "report arithmetic exact; " : "report arithmetic inexact; ") + s.str()};
}

Outcome criterion_10() {
    Eigen::VectorXd c(2);
    c << std::sqrt(0.99), 0.1;
    const auto row = wf::shot_scaling_estimate(c)[1];
    const auto v = ci::dense_ground_state(
                       ci::build_subspace_hamiltonian(det::full_sector(4, 2, 2), cache.hydrogen4().mo).to_dense())
                       .vector;
    bool squares = true;
    for (const auto &r : wf::shot_scaling_estimate(v))
        squares = squares && (std::isinf(r.monomer_shots)
                                  ? std::isinf(r.dimer_shots)
                                  : std::abs(r.dimer_shots - r.monomer_shots * r.monomer_shots) <=
                                        1e-12 * r.dimer_shots);
    const bool ok = squares && std::abs(row.monomer_shots - 100.0) < 1e-9 && std::abs(row.dimer_shots - 1e4) < 1e-7;
    return {ok, fmt("c = 0.1 -> (%.6g, %.6g); dimer = monomer^2 on 4H ground state: %s", row.monomer_shots,
                    row.dimer_shots, squares ? "yes" : "no")};
}

std::set<std::string> split_ids(const std::string &s) {
    std::set<std::string> out;
    std::stringstream ss(s);
    std::string id;
    while (std::getline(ss, id, ','))
        if (!id.empty())
            out.insert(id);
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"acceptance criteria"};
    std::string known_s, only_s;
    app.add_option("--known-fail", known_s, "comma-separated ids expected to fail");
    app.add_option("--only", only_s, "comma-separated ids to run");
    app.add_option("--data", data_dir, "test data directory");
    CLI11_PARSE(app, argc, argv);
    const auto known = split_ids(known_s);
    const auto only = split_ids(only_s);

    const std::vector<std::tuple<std::string, std::string, std::function<Outcome()>>> criteria{
        {"1", "hydrogen golden numbers", criterion_1},
        {"2", "size consistency on 8H", criterion_2},
        {"3", "separable full CI", criterion_3},
        {"4", "variational and monotone", criterion_4},
        {"5", "oracle equivalence", criterion_5},
        {"6", "simulation contracts", criterion_6},
        {"7", "HCI limits", criterion_7},
        {"8a", "FH CAS-CI energies", criterion_8a},
        {"8b", "sc E_int at 100 A", criterion_8b},
        {"8c", "bonded sc E_int at K=10", criterion_8c},
        {"9", "report arithmetic", criterion_9},
        {"10", "shot-scaling estimator", criterion_10},
    };

    std::set<std::string> failed;
    for (const auto &[id, title, run] : criteria) {
        if (!only.empty() && !only.contains(id))
            continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass)
            failed.insert(id);
        std::cout << (o.pass ? "PASS " : "FAIL ") << id << (id.size() < 2 ? "  " : " ") << title << " | "
                  << o.detail << fmt(" [%.1f s]", seconds_since(t0)) << std::endl;
    }

    std::set<std::string> expected;
    for (const auto &id : known)
        if (only.empty() || only.contains(id))
            expected.insert(id);
    std::cout << failed.size() << " failed";
    if (!expected.empty())
        std::cout << " (" << expected.size() << " known)";
    std::cout << std::endl;
    if (failed == expected)
        return 0;
    for (const auto &id : expected)
        if (!failed.contains(id))
            std::cout << "known failure " << id << " now passes; update the known list" << std::endl;
    return 1;
}
