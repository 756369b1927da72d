#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <utility>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/error.hpp"
#include "scqsci/integrals/partition.hpp"

namespace scqsci::sub {

using integrals::Fragment;
using integrals::OrbitalPartition;
using integrals::SpinCounts;

enum class SampleClass { IntraMonomer, ChargeTransfer };

inline const char *class_label(SampleClass c) noexcept {
    return c == SampleClass::IntraMonomer ? "intra" : "charge-transfer";
}

struct ClassifiedSample {
    det::Determinant det;
    SampleClass cls = SampleClass::IntraMonomer;
    std::array<SpinCounts, 2> counts{};
};

/// Dimer-orbital bitmask of each fragment.
inline std::array<std::uint64_t, 2> fragment_masks(const OrbitalPartition &part) {
    std::array<std::uint64_t, 2> m{0, 0};
    for (std::size_t p = 0; p < part.slots.size(); ++p)
        m[static_cast<std::size_t>(part.slots[p].fragment)] |= 1ULL << p;
    return m;
}

/// Per-spin, per-fragment populations decide the class: a determinant that
/// keeps each fragment's total charge but moves spin between fragments is
/// still charge-transfer, since it cannot be split into monomer
/// determinants of the reference sectors.
inline ClassifiedSample classify(const det::Determinant &d, const OrbitalPartition &part) {
    const auto masks = fragment_masks(part);
    ClassifiedSample s;
    s.det = d;
    bool intra = true;
    for (std::size_t f = 0; f < 2; ++f) {
        s.counts[f] = {std::popcount(d.alpha & masks[f]), std::popcount(d.beta & masks[f])};
        intra = intra && s.counts[f].n_alpha == part.ref_counts[f].n_alpha &&
                s.counts[f].n_beta == part.ref_counts[f].n_beta;
    }
    s.cls = intra ? SampleClass::IntraMonomer : SampleClass::ChargeTransfer;
    return s;
}

/// Fragment-local determinants (bit j = fragment orbital j).
inline std::pair<det::Determinant, det::Determinant> split(const det::Determinant &d,
                                                           const OrbitalPartition &part) {
    if (classify(d, part).cls != SampleClass::IntraMonomer)
        throw ContractViolation("split: charge-transfer determinant cannot be split");
    std::array<det::Determinant, 2> out{};
    for (std::size_t p = 0; p < part.slots.size(); ++p) {
        const auto &slot = part.slots[p];
        auto &t = out[static_cast<std::size_t>(slot.fragment)];
        t.alpha |= ((d.alpha >> p) & 1ULL) << slot.local;
        t.beta |= ((d.beta >> p) & 1ULL) << slot.local;
    }
    return {out[0], out[1]};
}

inline det::Determinant join(const det::Determinant &a, const det::Determinant &b,
                             const OrbitalPartition &part) {
    const std::array<det::Determinant, 2> in{a, b};
    det::Determinant d;
    for (std::size_t p = 0; p < part.slots.size(); ++p) {
        const auto &slot = part.slots[p];
        const auto &t = in[static_cast<std::size_t>(slot.fragment)];
        d.alpha |= ((t.alpha >> slot.local) & 1ULL) << p;
        d.beta |= ((t.beta >> slot.local) & 1ULL) << p;
    }
    return d;
}

/// Reference determinant of fragment f in its local indexing.
inline det::Determinant fragment_reference(const OrbitalPartition &part, Fragment f) {
    const auto &c = part.counts(f);
    return det::hf_reference(c.n_alpha, c.n_beta, part.fragment_norb(f));
}

} // namespace scqsci::sub
