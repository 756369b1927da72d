#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "scqsci/error.hpp"
#include "scqsci/integrals/fcidump.hpp"
#include "scqsci/integrals/geometry.hpp"
#include "scqsci/integrals/hydrogen.hpp"
#include "scqsci/integrals/integral_set.hpp"
#include "scqsci/integrals/partition.hpp"

namespace scqsci::wf {

/// Dimer and monomer Hamiltonians with the dimer-to-fragment orbital map.
/// Monomer orbital j is fragment-local orbital j of the partition.
struct SystemInputs {
    std::string name;
    integrals::IntegralSet dimer;
    std::array<integrals::IntegralSet, 2> monomers;
    integrals::OrbitalPartition partition;
    std::optional<integrals::IntegralSet> dimer_far; // for the dimer approach
};

inline void validate(const SystemInputs &in) {
    const auto &p = in.partition;
    integrals::validate(p);
    if (p.norb() != in.dimer.norb)
        throw ContractViolation(in.name + ": orbital map covers " + std::to_string(p.norb()) +
                                " orbitals, dimer has " + std::to_string(in.dimer.norb));
    for (std::size_t f = 0; f < 2; ++f) {
        const auto frag = static_cast<integrals::Fragment>(f);
        const auto &m = in.monomers[f];
        const std::string tag =
            in.name + ": monomer " + std::string(1, integrals::fragment_label(frag));
        if (static_cast<int>(m.norb) != p.fragment_norb(frag))
            throw ContractViolation(tag + " has " + std::to_string(m.norb) +
                                    " orbitals, orbital map assigns " +
                                    std::to_string(p.fragment_norb(frag)));
        if (m.n_alpha != p.counts(frag).n_alpha || m.n_beta != p.counts(frag).n_beta)
            throw ContractViolation(tag + " electron counts differ from the partition");
    }
    if (p.ref_counts[0].n_alpha + p.ref_counts[1].n_alpha != in.dimer.n_alpha ||
        p.ref_counts[0].n_beta + p.ref_counts[1].n_beta != in.dimer.n_beta)
        throw ContractViolation(in.name + ": monomer electron counts do not add up to "
                                          "the dimer's");
    if (in.dimer_far && (in.dimer_far->norb != in.dimer.norb ||
                         in.dimer_far->n_alpha != in.dimer.n_alpha ||
                         in.dimer_far->n_beta != in.dimer.n_beta))
        throw ContractViolation(in.name + ": far dimer differs in orbital or electron count");
}

/// Hydrogen clusters computed in-repo; the geometry declares two fragments.
inline SystemInputs load_hydrogen_inputs(const integrals::Geometry &dimer,
                                         const std::optional<integrals::Geometry> &far = {},
                                         const std::string &name = "hydrogen") {
    SystemInputs in;
    in.name = name;
    auto d = integrals::build_hydrogen_dimer(dimer);
    in.dimer = std::move(d.mo);
    in.monomers = {std::move(d.monomers[0].mo), std::move(d.monomers[1].mo)};
    in.partition = std::move(d.orbitals.partition);
    if (far)
        in.dimer_far = integrals::build_hydrogen_dimer(*far).mo;
    validate(in);
    return in;
}

/// FCIDUMP files plus an orbital map; reference counts come from the
/// monomer headers.
inline SystemInputs load_fcidump_inputs(const std::string &dimer, const std::string &monomer_a,
                                        const std::string &monomer_b,
                                        const std::string &orbital_map,
                                        const std::optional<std::string> &far = {},
                                        const std::string &name = "fcidump") {
    SystemInputs in;
    in.name = name;
    in.dimer = integrals::read_fcidump(dimer);
    in.monomers = {integrals::read_fcidump(monomer_a), integrals::read_fcidump(monomer_b)};
    in.partition = integrals::read_orbital_map(orbital_map);
    for (std::size_t f = 0; f < 2; ++f)
        in.partition.ref_counts[f] = {in.monomers[f].n_alpha, in.monomers[f].n_beta};
    if (far)
        in.dimer_far = integrals::read_fcidump(*far);
    validate(in);
    return in;
}

struct CouplingReport {
    double max_cross_one_electron = 0.0;
    double max_exchange_two_electron = 0.0;
};

/// Largest inter-fragment one-electron integral and largest two-electron
/// integral with a mixed-fragment charge distribution (pq| or |rs).
/// Coulomb-type integrals with both pairs fragment-local are excluded.
inline CouplingReport inter_fragment_coupling(const integrals::IntegralSet &ints,
                                              const integrals::OrbitalPartition &part) {
    CouplingReport r;
    const auto m = ints.norb;
    auto frag = [&](std::size_t p) { return part.slots[p].fragment; };
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            if (frag(p) != frag(q))
                r.max_cross_one_electron =
                    std::max(r.max_cross_one_electron,
                             std::abs(ints.h(static_cast<Eigen::Index>(p),
                                             static_cast<Eigen::Index>(q))));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t s = 0; s < m; ++s)
                for (std::size_t t = 0; t < m; ++t)
                    if (frag(p) != frag(q) || frag(s) != frag(t))
                        r.max_exchange_two_electron = std::max(
                            r.max_exchange_two_electron, std::abs(ints.g(p, q, s, t)));
    return r;
}

} // namespace scqsci::wf
