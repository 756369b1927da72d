#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/determinants/symmetry.hpp"
#include "scqsci/error.hpp"
#include "scqsci/hamsim/sampling.hpp"
#include "scqsci/integrals/partition.hpp"
#include "scqsci/subspace/split.hpp"

namespace scqsci::sub {

struct ScSubspaces {
    det::DeterminantSpace s_a; // fragment-local indexing
    det::DeterminantSpace s_b;
    det::DeterminantSpace ct;  // dimer indexing
    std::size_t intra_sampled = 0;
    std::size_t ct_sampled = 0;
};

inline void require_sector(const OrbitalPartition &part, int norb, int n_alpha, int n_beta) {
    const int na = part.ref_counts[0].n_alpha + part.ref_counts[1].n_alpha;
    const int nb = part.ref_counts[0].n_beta + part.ref_counts[1].n_beta;
    if (static_cast<int>(part.norb()) != norb || na != n_alpha || nb != n_beta)
        throw ContractViolation("sample sector (M=" + std::to_string(norb) + ", " +
                                std::to_string(n_alpha) + "a, " + std::to_string(n_beta) +
                                "b) does not match the orbital partition (M=" +
                                std::to_string(part.norb()) + ", " + std::to_string(na) +
                                "a, " + std::to_string(nb) + "b)");
}

/// Splits intra-monomer samples into the fragment subspaces and routes the
/// rest to the charge-transfer set. Counters count distinct samples.
inline ScSubspaces build_sc_subspaces(std::span<const det::Determinant> samples,
                                      const OrbitalPartition &part) {
    det::require_uniform_sector(samples, "build_sc_subspaces");
    const auto outside = ~det::low_bits(static_cast<int>(part.norb()));
    for (const auto &d : samples)
        if ((d.alpha | d.beta) & outside)
            throw ContractViolation("build_sc_subspaces: determinant occupies an orbital "
                                    "outside the partition");
    if (!samples.empty())
        require_sector(part, static_cast<int>(part.norb()), samples.front().n_alpha(),
                       samples.front().n_beta());
    std::vector<det::Determinant> unique(samples.begin(), samples.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

    std::vector<det::Determinant> a{fragment_reference(part, Fragment::A)};
    std::vector<det::Determinant> b{fragment_reference(part, Fragment::B)};
    std::vector<det::Determinant> ct;
    ScSubspaces out;
    for (const auto &d : unique) {
        if (classify(d, part).cls == SampleClass::IntraMonomer) {
            ++out.intra_sampled;
            const auto [da, db] = split(d, part);
            a.push_back(da);
            b.push_back(db);
        } else {
            ++out.ct_sampled;
            ct.push_back(d);
        }
    }
    out.s_a = det::symmetry_complete(det::DeterminantSpace(std::move(a)));
    out.s_b = det::symmetry_complete(det::DeterminantSpace(std::move(b)));
    out.ct = det::DeterminantSpace(std::move(ct));
    return out;
}

/// Uses the distinct samples of k = 1..K.
inline ScSubspaces build_sc_subspaces(const hamsim::SamplePool &pool, int k,
                                      const OrbitalPartition &part) {
    require_sector(part, pool.norb, pool.n_alpha, pool.n_beta);
    const auto samples = pool.distinct(k);
    return build_sc_subspaces(samples, part);
}

/// symmetry_complete of every product a x b plus the charge-transfer set.
inline det::DeterminantSpace assemble_dimer_space(const ScSubspaces &sc,
                                                  const OrbitalPartition &part) {
    std::vector<det::Determinant> all;
    all.reserve(sc.s_a.size() * sc.s_b.size() + sc.ct.size());
    for (const auto &a : sc.s_a)
        for (const auto &b : sc.s_b)
            all.push_back(join(a, b, part));
    all.insert(all.end(), sc.ct.begin(), sc.ct.end());
    return det::symmetry_complete(det::DeterminantSpace(std::move(all)));
}

/// symmetry_complete(samples u {reference}).
inline det::DeterminantSpace build_org_subspace(std::span<const det::Determinant> samples,
                                                const det::Determinant &reference) {
    std::vector<det::Determinant> all(samples.begin(), samples.end());
    all.push_back(reference);
    det::require_uniform_sector(all, "build_org_subspace");
    return det::symmetry_complete(det::DeterminantSpace(std::move(all)));
}

inline det::DeterminantSpace build_org_subspace(const hamsim::SamplePool &pool, int k) {
    const auto samples = pool.distinct(k);
    return build_org_subspace(samples, pool.reference());
}

} // namespace scqsci::sub
