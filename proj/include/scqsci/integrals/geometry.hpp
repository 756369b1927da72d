#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scqsci/error.hpp"

namespace scqsci::integrals {

/// Bohr radius in Angstrom (CODATA 2010, the value most quantum-chemistry
/// packages bake in).
inline constexpr double kBohrInAngstrom = 0.52917721092;

struct Atom {
    std::string symbol;
    int charge = 0;
    Eigen::Vector3d position_angstrom = Eigen::Vector3d::Zero();
    int fragment = 0;

    Eigen::Vector3d position_bohr() const {
        return position_angstrom / kBohrInAngstrom;
    }
};

struct Geometry {
    std::vector<Atom> atoms;

    std::size_t size() const noexcept { return atoms.size(); }

    /// Sorted distinct fragment ids.
    std::vector<int> fragments() const {
        std::set<int> ids;
        for (const auto &a : atoms)
            ids.insert(a.fragment);
        return {ids.begin(), ids.end()};
    }

    /// Atoms of one fragment, in input order, as a standalone geometry.
    Geometry fragment(int id) const {
        Geometry out;
        for (const auto &a : atoms)
            if (a.fragment == id)
                out.atoms.push_back(a);
        if (out.atoms.empty())
            throw ContractViolation("Geometry: fragment " + std::to_string(id) +
                                    " has no atoms");
        return out;
    }

    int total_charge() const {
        int z = 0;
        for (const auto &a : atoms)
            z += a.charge;
        return z;
    }

    double nuclear_repulsion() const {
        double e = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                e += atoms[i].charge * atoms[j].charge /
                     (atoms[i].position_bohr() - atoms[j].position_bohr()).norm();
        return e;
    }
};

inline int nuclear_charge(const std::string &symbol) {
    static const std::array<const char *, 10> table = {
        "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"};
    for (std::size_t i = 0; i < table.size(); ++i)
        if (symbol == table[i])
            return static_cast<int>(i) + 1;
    throw ParseError("unknown element symbol '" + symbol + "'");
}

inline void validate(const Geometry &geom) {
    if (geom.atoms.empty())
        throw ContractViolation("Geometry: no atoms");
    for (const auto &a : geom.atoms) {
        if (!a.position_angstrom.allFinite())
            throw ContractViolation("Geometry: non-finite coordinate");
        if (a.charge <= 0)
            throw ContractViolation("Geometry: nuclear charge must be positive");
    }
}

/// Parses `element x y z [fragment]` lines (Angstrom). Blank lines and
/// `#` comments are skipped; a missing fragment column means fragment 0.
inline Geometry parse_geometry(std::istream &in) {
    Geometry geom;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        Atom atom;
        if (!(ls >> atom.symbol))
            continue;
        double x, y, z;
        if (!(ls >> x >> y >> z))
            throw ParseError("geometry line " + std::to_string(lineno) +
                             ": expected element x y z [fragment]");
        atom.position_angstrom = {x, y, z};
        if (!(ls >> atom.fragment))
            atom.fragment = 0;
        atom.charge = nuclear_charge(atom.symbol);
        geom.atoms.push_back(std::move(atom));
    }
    validate(geom);
    return geom;
}

inline Geometry read_geometry(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open geometry file '" + path + "'");
    return parse_geometry(in);
}

inline void write_geometry(const Geometry &geom, std::ostream &out) {
    out.precision(12);
    for (const auto &a : geom.atoms)
        out << a.symbol << ' ' << a.position_angstrom.x() << ' '
            << a.position_angstrom.y() << ' ' << a.position_angstrom.z() << ' '
            << a.fragment << '\n';
}

/// Square H4 in the xy plane with the given side (Bohr), lifted by z (Bohr).
inline Geometry hydrogen_square(double side_bohr, double z_bohr = 0.0,
                                int fragment = 0) {
    Geometry g;
    const double a = side_bohr * kBohrInAngstrom;
    const double z = z_bohr * kBohrInAngstrom;
    for (auto [x, y] : {std::pair{0.0, 0.0}, {a, 0.0}, {a, a}, {0.0, a}})
        g.atoms.push_back({"H", 1, {x, y, z}, fragment});
    return g;
}

/// Two parallel H4 squares stacked along z, separated by distance_angstrom.
inline Geometry hydrogen_square_dimer(double side_bohr,
                                      double distance_angstrom) {
    Geometry g = hydrogen_square(side_bohr, 0.0, 0);
    Geometry b =
        hydrogen_square(side_bohr, distance_angstrom / kBohrInAngstrom, 1);
    g.atoms.insert(g.atoms.end(), b.atoms.begin(), b.atoms.end());
    return g;
}

} // namespace scqsci::integrals
