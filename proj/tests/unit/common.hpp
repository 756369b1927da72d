#pragma once

#include <string>

#include "scqsci/scqsci.hpp"

namespace testing_support {

inline std::string data(const std::string &name) { return std::string(SCQSCI_TEST_DATA) + "/" + name; }

// 4H square (side 2 bohr) in canonical RHF orbitals, built once.
inline const scqsci::integrals::HydrogenMonomer &h4() {
    static const auto m =
        scqsci::integrals::build_hydrogen_monomer(scqsci::integrals::hydrogen_square(2.0));
    return m;
}

inline const scqsci::wf::SystemInputs &h8_far() {
    static const auto in = scqsci::wf::load_hydrogen_inputs(
        scqsci::integrals::hydrogen_square_dimer(2.0, 100.0), std::nullopt, "8H");
    return in;
}

inline scqsci::wf::SystemInputs fh(const std::string &system, bool far = false) {
    const std::string tag = far ? "_far" : "";
    return scqsci::wf::load_fcidump_inputs(data(system + tag + ".fcidump"),
                                           data(system + "_A.fcidump"),
                                           data(system + "_B.fcidump"),
                                           data(system + tag + ".orbmap"), std::nullopt,
                                           system + tag);
}

// Reference ground-state energies for 4H, computed once.
inline double h4_fci() {
    static const double e = scqsci::ci::full_ci(h4().mo).energy;
    return e;
}

} // namespace testing_support
