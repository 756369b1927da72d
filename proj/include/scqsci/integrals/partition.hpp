#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scqsci/error.hpp"

namespace scqsci::integrals {

enum class Fragment : int { A = 0, B = 1 };

inline char fragment_label(Fragment f) { return f == Fragment::A ? 'A' : 'B'; }

struct OrbitalSlot {
    Fragment fragment = Fragment::A;
    int local = 0;
    friend bool operator==(const OrbitalSlot &, const OrbitalSlot &) = default;
};

struct SpinCounts {
    int n_alpha = 0;
    int n_beta = 0;
    friend bool operator==(const SpinCounts &, const SpinCounts &) = default;
};

/// Assignment of dimer localized orbitals to the two fragments, plus the
/// per-fragment electron counts of the Hartree-Fock reference.
struct OrbitalPartition {
    std::vector<OrbitalSlot> slots; // indexed by dimer orbital
    std::array<SpinCounts, 2> ref_counts{};

    std::size_t norb() const noexcept { return slots.size(); }

    int fragment_norb(Fragment f) const {
        int n = 0;
        for (const auto &s : slots)
            n += s.fragment == f;
        return n;
    }

    const SpinCounts &counts(Fragment f) const {
        return ref_counts[static_cast<std::size_t>(f)];
    }
};

/// Throws unless slots form a bijection onto {A: 0..nA-1} u {B: 0..nB-1}.
inline void validate(const OrbitalPartition &part) {
    for (Fragment f : {Fragment::A, Fragment::B}) {
        const int n = part.fragment_norb(f);
        std::vector<int> hits(static_cast<std::size_t>(n), 0);
        for (const auto &s : part.slots) {
            if (s.fragment != f)
                continue;
            if (s.local < 0 || s.local >= n)
                throw ContractViolation(
                    std::string("orbital map: fragment ") + fragment_label(f) +
                    " local index " + std::to_string(s.local) + " out of range");
            if (++hits[static_cast<std::size_t>(s.local)] > 1)
                throw ContractViolation(
                    std::string("orbital map: fragment ") + fragment_label(f) +
                    " local index " + std::to_string(s.local) + " used twice");
        }
        const auto &c = part.counts(f);
        if (c.n_alpha < 0 || c.n_beta < 0 || c.n_alpha > n || c.n_beta > n)
            throw ContractViolation(
                std::string("orbital map: impossible electron count for "
                            "fragment ") +
                fragment_label(f));
    }
    if (part.norb() > 64)
        throw ContractViolation("orbital map: more than 64 orbitals");
}

/// Reads `dimer_orbital fragment fragment_orbital` rows (0-based; fragment
/// given as A/B or 0/1). Reference counts are left zero for the caller.
inline OrbitalPartition parse_orbital_map(std::istream &in) {
    std::vector<std::pair<int, OrbitalSlot>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        int dimer = 0;
        std::string frag;
        int local = 0;
        if (!(ls >> dimer))
            continue;
        if (!(ls >> frag >> local))
            throw ParseError("orbital map line " + std::to_string(lineno) +
                             ": expected `dimer_orbital fragment "
                             "fragment_orbital`");
        OrbitalSlot slot;
        if (frag == "A" || frag == "a" || frag == "0")
            slot.fragment = Fragment::A;
        else if (frag == "B" || frag == "b" || frag == "1")
            slot.fragment = Fragment::B;
        else
            throw ParseError("orbital map line " + std::to_string(lineno) +
                             ": unknown fragment '" + frag + "'");
        slot.local = local;
        rows.emplace_back(dimer, slot);
    }
    OrbitalPartition part;
    part.slots.resize(rows.size());
    std::vector<int> seen(rows.size(), 0);
    for (const auto &[dimer, slot] : rows) {
        if (dimer < 0 || static_cast<std::size_t>(dimer) >= rows.size())
            throw ParseError("orbital map: dimer orbital " +
                             std::to_string(dimer) + " out of range");
        if (seen[static_cast<std::size_t>(dimer)]++)
            throw ParseError("orbital map: dimer orbital " +
                             std::to_string(dimer) + " listed twice");
        part.slots[static_cast<std::size_t>(dimer)] = slot;
    }
    return part;
}

inline OrbitalPartition read_orbital_map(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open orbital map '" + path + "'");
    return parse_orbital_map(in);
}

inline void write_orbital_map(const OrbitalPartition &part, std::ostream &out) {
    out << "# dimer_orbital fragment fragment_orbital\n";
    for (std::size_t p = 0; p < part.slots.size(); ++p)
        out << p << ' ' << fragment_label(part.slots[p].fragment) << ' '
            << part.slots[p].local << '\n';
}

} // namespace scqsci::integrals
