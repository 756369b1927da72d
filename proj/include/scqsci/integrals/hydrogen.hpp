#pragma once

#include <array>

#include "scqsci/integrals/geometry.hpp"
#include "scqsci/integrals/localize.hpp"
#include "scqsci/integrals/rhf.hpp"
#include "scqsci/integrals/sto3g.hpp"
#include "scqsci/integrals/transform.hpp"

namespace scqsci::integrals {

struct HydrogenMonomer {
    Geometry geometry;
    AoIntegrals ao;
    RhfResult rhf;
    IntegralSet mo; // canonical RHF orbital basis
};

/// Hydrogen dimer in block-localized orbitals, together with both standalone
/// monomers whose orbital indexing matches the dimer's orbital partition.
struct HydrogenDimer {
    Geometry geometry;
    std::array<HydrogenMonomer, 2> monomers;
    AoIntegrals ao;
    LocalizedOrbitals orbitals;
    IntegralSet mo;
};

inline HydrogenMonomer build_hydrogen_monomer(const Geometry &geom,
                                              const RhfOptions &opt = {}) {
    HydrogenMonomer m;
    m.geometry = geom;
    m.ao = compute_sto3g_integrals(geom);
    RhfOptions o = opt;
    if (o.guess_blocks.empty() && geom.fragments().size() > 1)
        o.guess_blocks = fragment_guess_blocks(geom);
    m.rhf = run_rhf(m.ao.ints, m.ao.overlap, o);
    m.mo = transform_to_mo(m.ao.ints, m.rhf.coeffs);
    return m;
}

/// Geometry must carry exactly two fragment ids; the lower id becomes A.
inline HydrogenDimer build_hydrogen_dimer(const Geometry &geom,
                                          double overlap_threshold = 1e-6,
                                          const RhfOptions &opt = {}) {
    const auto ids = geom.fragments();
    if (ids.size() != 2)
        throw ContractViolation("hydrogen dimer: geometry must declare exactly "
                                "two fragments");
    HydrogenDimer d;
    d.geometry = geom;
    d.ao = compute_sto3g_integrals(geom);
    std::array<FragmentOrbitals, 2> frags;
    for (std::size_t f = 0; f < 2; ++f) {
        d.monomers[f] = build_hydrogen_monomer(geom.fragment(ids[f]), opt);
        for (std::size_t i = 0; i < geom.atoms.size(); ++i)
            if (geom.atoms[i].fragment == ids[f])
                frags[f].aos.push_back(static_cast<int>(i));
        frags[f].coeffs = d.monomers[f].rhf.coeffs;
        frags[f].n_occupied = d.monomers[f].rhf.n_occupied;
    }
    d.orbitals = localize_block_rhf(d.ao.overlap, frags, overlap_threshold);
    d.mo = transform_to_mo(d.ao.ints, d.orbitals.coeffs);
    return d;
}

} // namespace scqsci::integrals
