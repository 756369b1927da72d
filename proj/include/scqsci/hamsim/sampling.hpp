#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/error.hpp"
#include "scqsci/hamsim/jordan_wigner.hpp"
#include "scqsci/hamsim/statevector.hpp"
#include "scqsci/hamsim/trotter.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::hamsim {

/// bitstring -> number of times drawn
using Counts = std::map<std::uint64_t, int>;

/// i.i.d. draws from |amplitude|^2. The generator is seeded from
/// (seed, stream) only, so the result is a pure function of its inputs.
inline Counts sample(const Statevector &state, int shots, std::uint64_t seed,
                     std::uint64_t stream = 0) {
    if (shots < 1)
        throw ContractViolation("sample: shots must be >= 1");
    const auto n = static_cast<std::size_t>(state.amplitudes.size());
    std::vector<double> cdf(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += std::norm(state.amplitudes(static_cast<Eigen::Index>(i)));
        cdf[i] = total;
    }
    if (!(total > 0.0))
        throw ContractViolation("sample: zero state");
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(0.0, total);
    Counts out;
    for (int s = 0; s < shots; ++s) {
        // First cdf entry strictly above u: never a zero-probability state.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
        if (it == cdf.end())
            it = std::lower_bound(cdf.begin(), cdf.end(), total);
        ++out[state.basis->state(static_cast<std::size_t>(it - cdf.begin()))];
    }
    return out;
}

struct SamplePool {
    std::string system;
    int norb = 0;
    int n_alpha = 0;
    int n_beta = 0;
    double dt = 1.0;
    int shots = 0;
    std::uint64_t seed = 0;
    std::vector<Counts> per_k; // per_k[k-1] holds the draws at time k*dt

    int k_max() const noexcept { return static_cast<int>(per_k.size()); }

    det::Determinant reference() const {
        return det::hf_reference(n_alpha, n_beta, norb);
    }

    /// Distinct sampled determinants over k = 1..K (reference not added).
    std::vector<det::Determinant> distinct(int k) const {
        if (k < 0 || k > k_max())
            throw ContractViolation("SamplePool: K = " + std::to_string(k) +
                                    " outside 0.." + std::to_string(k_max()));
        std::vector<det::Determinant> out;
        for (int i = 0; i < k; ++i)
            for (const auto &[bits, n] : per_k[static_cast<std::size_t>(i)])
                out.push_back(to_determinant(bits));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

struct PoolOptions {
    std::string system;
    double dt = 1.0;
    int k_max = 5;
    int shots = 10000;
    std::uint64_t seed = 0;
    int max_qubits = 24;
};

/// Evolves the reference determinant under the second-order Trotter step
/// and samples after each of k = 1..k_max steps.
inline SamplePool generate_pool(const integrals::IntegralSet &ints,
                                const PoolOptions &opt) {
    if (opt.k_max < 0)
        throw ContractViolation("generate_pool: k_max must be >= 0");
    if (opt.shots < 1)
        throw ContractViolation("generate_pool: shots must be >= 1");
    SamplePool pool;
    pool.system = opt.system;
    pool.norb = static_cast<int>(ints.norb);
    pool.n_alpha = ints.n_alpha;
    pool.n_beta = ints.n_beta;
    pool.dt = opt.dt;
    pool.shots = opt.shots;
    pool.seed = opt.seed;
    if (opt.k_max == 0)
        return pool;

    const auto h = jordan_wigner(ints, {opt.max_qubits});
    const auto schedule = build_trotter_schedule(h, opt.dt, 2);
    const auto basis = Basis::sector(pool.norb, pool.n_alpha, pool.n_beta);
    const Evolver evolver(schedule, basis);
    auto state = Statevector::basis_state(basis, to_bitstring(pool.reference()));
    for (int k = 1; k <= opt.k_max; ++k) {
        evolver.apply(state, 1);
        auto counts = sample(state, opt.shots, opt.seed, static_cast<std::uint64_t>(k));
        for (const auto &[bits, n] : counts) {
            const auto d = to_determinant(bits);
            if (d.n_alpha() != pool.n_alpha || d.n_beta() != pool.n_beta)
                throw ContractViolation("generate_pool: sample left the particle "
                                        "sector");
        }
        pool.per_k.push_back(std::move(counts));
    }
    return pool;
}

inline nlohmann::json to_json(const SamplePool &pool) {
    nlohmann::json j;
    j["system"] = pool.system;
    j["M"] = pool.norb;
    j["N_alpha"] = pool.n_alpha;
    j["N_beta"] = pool.n_beta;
    j["dt"] = pool.dt;
    j["shots"] = pool.shots;
    j["seed"] = pool.seed;
    nlohmann::json per_k = nlohmann::json::object();
    for (int k = 1; k <= pool.k_max(); ++k) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &[bits, n] : pool.per_k[static_cast<std::size_t>(k - 1)])
            rows.push_back({{"bits", bitstring_text(bits, 2 * pool.norb)}, {"count", n}});
        per_k[std::to_string(k)] = std::move(rows);
    }
    j["per_k"] = std::move(per_k);
    return j;
}

inline SamplePool pool_from_json(const nlohmann::json &j) {
    SamplePool pool;
    try {
        pool.system = j.value("system", std::string{});
        pool.norb = j.at("M").get<int>();
        pool.n_alpha = j.at("N_alpha").get<int>();
        pool.n_beta = j.at("N_beta").get<int>();
        pool.dt = j.at("dt").get<double>();
        pool.shots = j.at("shots").get<int>();
        pool.seed = j.at("seed").get<std::uint64_t>();
        const auto &per_k = j.at("per_k");
        const int k_max = static_cast<int>(per_k.size());
        pool.per_k.resize(static_cast<std::size_t>(k_max));
        for (const auto &[key, rows] : per_k.items()) {
            const int k = std::stoi(key);
            if (k < 1 || k > k_max)
                throw ParseError("sample pool: per_k keys must be 1..K");
            auto &counts = pool.per_k[static_cast<std::size_t>(k - 1)];
            for (const auto &row : rows) {
                const auto text = row.at("bits").get<std::string>();
                if (static_cast<int>(text.size()) != 2 * pool.norb)
                    throw ParseError("sample pool: bitstring '" + text +
                                     "' does not have 2M characters");
                counts[parse_bitstring(text)] += row.at("count").get<int>();
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("sample pool: ") + e.what());
    }
    return pool;
}

inline void write_pool(const SamplePool &pool, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write sample pool '" + path + "'");
    out << to_json(pool).dump(1) << '\n';
}

inline SamplePool read_pool(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open sample pool '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("sample pool: ") + e.what());
    }
    return pool_from_json(j);
}

} // namespace scqsci::hamsim
