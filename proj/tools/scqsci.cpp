// scqsci command-line driver.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scqsci/scqsci.hpp"

using namespace scqsci;

namespace {

struct InputFlags {
    std::string geometry, geometry_far;
    std::string dimer, monomer_a, monomer_b, orbital_map, dimer_far;
    std::string name;

    void add(CLI::App *app) {
        app->add_option("--geometry", geometry,
                        "hydrogen geometry (element x y z fragment, Angstrom)");
        app->add_option("--geometry-far", geometry_far, "separated hydrogen geometry");
        app->add_option("--dimer", dimer, "dimer FCIDUMP");
        app->add_option("--monomer-a", monomer_a, "monomer A FCIDUMP");
        app->add_option("--monomer-b", monomer_b, "monomer B FCIDUMP");
        app->add_option("--orbital-map", orbital_map, "dimer-to-fragment orbital map");
        app->add_option("--dimer-far", dimer_far, "separated dimer FCIDUMP (dimer approach)");
        app->add_option("--name", name, "system label for the report");
    }

    wf::SystemInputs load() const {
        if (!geometry.empty()) {
            std::optional<integrals::Geometry> far;
            if (!geometry_far.empty())
                far = integrals::read_geometry(geometry_far);
            return wf::load_hydrogen_inputs(integrals::read_geometry(geometry), far,
                                            name.empty() ? geometry : name);
        }
        if (dimer.empty() || monomer_a.empty() || monomer_b.empty() || orbital_map.empty())
            throw ContractViolation("give --geometry, or all of --dimer, --monomer-a, "
                                    "--monomer-b and --orbital-map");
        std::optional<std::string> far;
        if (!dimer_far.empty())
            far = dimer_far;
        return wf::load_fcidump_inputs(dimer, monomer_a, monomer_b, orbital_map, far,
                                       name.empty() ? dimer : name);
    }
};

struct ConfigFlags {
    wf::RunConfig cfg;
    std::string method = "sc";

    void add(CLI::App *app) {
        app->add_option("--method", method, "sc | org | sc-hci | org-dimer-approach")
            ->capture_default_str();
        app->add_option("--kmax", cfg.k_max, "largest evolution step K")->capture_default_str();
        app->add_option("--shots", cfg.shots, "shots per K")->capture_default_str();
        app->add_option("--dt", cfg.dt, "Trotter step (a.u.)")->capture_default_str();
        app->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
        app->add_option("--epsilon", cfg.epsilons, "HCI thresholds (sc-hci)");
        app->add_option("--max-qubits", cfg.max_qubits, "statevector qubit budget")
            ->capture_default_str();
        app->add_flag("--full-ci", cfg.full_ci, "add full-CI reference energies");
    }

    wf::RunConfig get() {
        cfg.method = wf::parse_method(method);
        return cfg;
    }
};

integrals::IntegralSet load_ints(const std::string &fcidump, const std::string &geometry) {
    if (!fcidump.empty())
        return integrals::read_fcidump(fcidump);
    if (geometry.empty())
        throw ContractViolation("give --fcidump or --geometry");
    return integrals::build_hydrogen_monomer(integrals::read_geometry(geometry)).mo;
}

void write_json(const nlohmann::json &j, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << j.dump(1) << '\n';
}

int cmd_integrals(const std::string &geometry, const std::string &out,
                  const std::string &out_a, const std::string &out_b,
                  const std::string &out_map) {
    const auto geom = integrals::read_geometry(geometry);
    if (geom.fragments().size() < 2) {
        const auto m = integrals::build_hydrogen_monomer(geom);
        integrals::write_fcidump(m.mo, out);
        std::printf("RHF energy %.10f  (%zu orbitals) -> %s\n", m.rhf.energy, m.mo.norb,
                    out.c_str());
        return 0;
    }
    const auto d = integrals::build_hydrogen_dimer(geom);
    integrals::write_fcidump(d.mo, out);
    std::printf("dimer: %zu orbitals, max inter-fragment overlap %.3e -> %s\n", d.mo.norb,
                d.orbitals.max_interfragment_overlap, out.c_str());
    const std::string outs[2] = {out_a, out_b};
    for (int f = 0; f < 2; ++f) {
        if (outs[f].empty())
            continue;
        integrals::write_fcidump(d.monomers[f].mo, outs[f]);
        std::printf("monomer %c: RHF %.10f -> %s\n", "AB"[f], d.monomers[f].rhf.energy,
                    outs[f].c_str());
    }
    if (!out_map.empty()) {
        std::ofstream m(out_map);
        integrals::write_orbital_map(d.orbitals.partition, m);
        std::printf("orbital map -> %s\n", out_map.c_str());
    }
    return 0;
}

int cmd_fullci(const std::string &fcidump, const std::string &geometry) {
    const auto ints = load_ints(fcidump, geometry);
    const auto hf = det::hf_reference(ints.n_alpha, ints.n_beta, static_cast<int>(ints.norb));
    const auto r = ci::full_ci(ints);
    std::printf("orbitals %zu  electrons (%d,%d)  dim %lld\n", ints.norb, ints.n_alpha,
                ints.n_beta, static_cast<long long>(r.vector.size()));
    std::printf("E_RHF     %.10f\n", det::diagonal_energy(hf, ints));
    std::printf("E_fullCI  %.10f   (%s, %d iterations, residual %.1e)\n", r.energy,
                r.solver.c_str(), r.iterations, r.residual);
    return 0;
}

int cmd_run(const InputFlags &inputs, ConfigFlags &flags, const std::string &report,
            const std::string &pool_in, const std::string &pool_out) {
    const auto in = inputs.load();
    auto cfg = flags.get();
    std::optional<hamsim::SamplePool> pool;
    if (!pool_in.empty()) {
        pool = hamsim::read_pool(pool_in);
        cfg.seed = pool->seed;
        cfg.shots = pool->shots;
        cfg.dt = pool->dt;
    } else if (!pool_out.empty() && cfg.method != wf::Method::ScHci)
        pool = wf::make_pool(in.dimer, cfg, in.name + " dimer");
    if (pool && !pool_out.empty())
        hamsim::write_pool(*pool, pool_out);
    const auto rep = wf::run_pipeline(in, cfg, pool ? &*pool : nullptr);
    wf::print_table(rep, std::cout);
    if (!report.empty())
        write_json(wf::to_json(rep), report);
    return 0;
}

int cmd_check_sc(const InputFlags &inputs, ConfigFlags &flags, double tol) {
    const auto in = inputs.load();
    const auto r = wf::size_consistency_check(in, flags.get(), tol);
    wf::print_table(r.report, std::cout);
    std::printf("coupling: max cross h %.3e, max exchange-type g %.3e\n",
                r.coupling.max_cross_one_electron, r.coupling.max_exchange_two_electron);
    std::printf("%s  max |E_int| = %.3e Ha (tol %.1e)\n", r.passed ? "PASS" : "FAIL",
                r.max_abs_e_int, tol);
    return r.passed ? 0 : 1;
}

int cmd_shot_scaling(const std::string &fcidump, const std::string &geometry, int top,
                     const std::string &json_out) {
    const auto ints = load_ints(fcidump, geometry);
    const auto r = ci::full_ci(ints);
    const auto space =
        det::full_sector(static_cast<int>(ints.norb), ints.n_alpha, ints.n_beta);
    const auto rows = wf::shot_scaling_estimate(r.vector);
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(rows[a].coefficient) > std::abs(rows[b].coefficient);
    });
    if (top > 0 && static_cast<std::size_t>(top) < order.size())
        order.resize(static_cast<std::size_t>(top));
    const int m = static_cast<int>(ints.norb);
    std::printf("%6s  %-*s %14s %14s %14s\n", "j", 2 * m + 4, "determinant", "c_j",
                "monomer shots", "dimer shots");
    nlohmann::json j = nlohmann::json::array();
    for (auto i : order) {
        const auto &row = rows[i];
        const auto label = det::to_string(space[i], m);
        std::printf("%6zu  %-*s %14.6e %14.4e %14.4e\n", row.index, 2 * m + 4, label.c_str(),
                    row.coefficient, row.monomer_shots, row.dimer_shots);
        j.push_back({{"index", row.index},
                     {"determinant", label},
                     {"coefficient", row.coefficient},
                     {"monomer_shots", std::isinf(row.monomer_shots)
                                           ? nlohmann::json(nullptr)
                                           : nlohmann::json(row.monomer_shots)},
                     {"dimer_shots", std::isinf(row.dimer_shots)
                                         ? nlohmann::json(nullptr)
                                         : nlohmann::json(row.dimer_shots)}});
    }
    if (!json_out.empty())
        write_json(j, json_out);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"size-consistent quantum-selected CI for interaction energies"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string geometry, fcidump, out = "out.fcidump", out_a, out_b, out_map;
    auto *integ = app.add_subcommand("integrals", "STO-3G hydrogen cluster -> FCIDUMP");
    integ->add_option("--geometry", geometry, "geometry file")->required();
    integ->add_option("-o,--out", out, "dimer (or single system) FCIDUMP")->capture_default_str();
    integ->add_option("--monomer-a", out_a, "monomer A FCIDUMP output");
    integ->add_option("--monomer-b", out_b, "monomer B FCIDUMP output");
    integ->add_option("--orbital-map", out_map, "orbital map output");

    auto *fci = app.add_subcommand("fullci", "full-CI energy of an FCIDUMP or hydrogen cluster");
    fci->add_option("--fcidump", fcidump);
    fci->add_option("--geometry", geometry);

    InputFlags run_in;
    ConfigFlags run_cfg;
    std::string report, pool_in, pool_out;
    auto *run = app.add_subcommand("run", "K sweep of one method, table + JSON report");
    run_in.add(run);
    run_cfg.add(run);
    run->add_option("--report", report, "JSON report output");
    run->add_option("--pool-in", pool_in, "use recorded dimer samples instead of simulating");
    run->add_option("--pool-out", pool_out, "save the dimer samples");

    InputFlags sc_in;
    ConfigFlags sc_cfg;
    double tol = 1e-7;
    auto *check = app.add_subcommand("check-sc", "size-consistency check on non-interacting "
                                                 "fragments (exit 1 on failure)");
    sc_in.add(check);
    sc_cfg.add(check);
    check->add_option("--tol", tol, "Hartree")->capture_default_str();

    int top = 20;
    std::string json_out;
    auto *shots = app.add_subcommand("shot-scaling", "1/|c|^2 and 1/|c|^4 shot estimates");
    shots->add_option("--fcidump", fcidump);
    shots->add_option("--geometry", geometry);
    shots->add_option("--top", top, "largest |c_j| rows to print (0 = all)")
        ->capture_default_str();
    shots->add_option("--json", json_out, "JSON output");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*integ)
            return cmd_integrals(geometry, out, out_a, out_b, out_map);
        if (*fci)
            return cmd_fullci(fcidump, geometry);
        if (*run)
            return cmd_run(run_in, run_cfg, report, pool_in, pool_out);
        if (*check)
            return cmd_check_sc(sc_in, sc_cfg, tol);
        if (*shots)
            return cmd_shot_scaling(fcidump, geometry, top, json_out);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
