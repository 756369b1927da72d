#pragma once

#include <cmath>
#include <vector>

#include "scqsci/error.hpp"
#include "scqsci/hamsim/jordan_wigner.hpp"

namespace scqsci::hamsim {

/// exp(-i angle P)
struct Rotation {
    PauliString pauli;
    double angle = 0.0;
};

struct TrotterSchedule {
    int n_qubits = 0;
    double dt = 1.0;
    int order = 2;
    std::vector<Rotation> rotations; // application order

    bool is_palindromic() const {
        const auto n = rotations.size();
        for (std::size_t i = 0; i < n / 2; ++i) {
            const auto &a = rotations[i];
            const auto &b = rotations[n - 1 - i];
            if (a.pauli != b.pauli || a.angle != b.angle)
                return false;
        }
        return true;
    }
};

/// Order 2: half-angle sweep over the terms in their stored order, then the
/// same sweep reversed. Order 1: a single full-angle sweep.
inline TrotterSchedule build_trotter_schedule(const QubitHamiltonian &h,
                                              double dt = 1.0, int order = 2) {
    if (!std::isfinite(dt))
        throw ContractViolation("build_trotter_schedule: dt must be finite");
    if (order != 1 && order != 2)
        throw ContractViolation("build_trotter_schedule: order must be 1 or 2");
    TrotterSchedule s;
    s.n_qubits = h.n_qubits;
    s.dt = dt;
    s.order = order;
    const double f = order == 2 ? 0.5 * dt : dt;
    for (const auto &t : h.terms)
        s.rotations.push_back({t.pauli, t.coeff * f});
    if (order == 2)
        for (auto it = h.terms.rbegin(); it != h.terms.rend(); ++it)
            s.rotations.push_back({it->pauli, it->coeff * f});
    return s;
}

} // namespace scqsci::hamsim
