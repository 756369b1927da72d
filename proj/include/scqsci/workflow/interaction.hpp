#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "scqsci/error.hpp"

namespace scqsci::wf {

inline constexpr double kKcalPerHartree = 627.509474;

/// E_AB - E_A - E_B, in kcal/mol.
inline double supramolecular_interaction(double e_ab, double e_a, double e_b,
                                         double kcal_per_hartree = kKcalPerHartree) {
    return (e_ab - e_a - e_b) * kcal_per_hartree;
}

/// E_AB - E_{A...B}, in kcal/mol.
inline double dimer_approach_interaction(double e_ab, double e_far,
                                         double kcal_per_hartree = kKcalPerHartree) {
    return (e_ab - e_far) * kcal_per_hartree;
}

struct ShotScalingRow {
    std::size_t index = 0;
    double coefficient = 0.0;
    double monomer_shots = 0.0; // 1/|c|^2
    double dimer_shots = 0.0;   // 1/|c|^4
};

/// Expected repetitions to observe determinant j once: 1/|c_j|^2 for the
/// monomer and 1/|c_j|^4 for a product state of two such monomers. Zero
/// coefficients give infinity.
inline std::vector<ShotScalingRow> shot_scaling_estimate(const Eigen::VectorXd &c,
                                                         double norm_tol = 1e-6) {
    if (c.size() == 0 || std::abs(c.norm() - 1.0) > norm_tol)
        throw ContractViolation("shot_scaling_estimate: coefficients must be normalized");
    std::vector<ShotScalingRow> rows;
    rows.reserve(static_cast<std::size_t>(c.size()));
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        ShotScalingRow r;
        r.index = static_cast<std::size_t>(j);
        r.coefficient = c(j);
        if (c(j) == 0.0) {
            r.monomer_shots = r.dimer_shots = std::numeric_limits<double>::infinity();
        } else {
            const double inv = 1.0 / std::abs(c(j));
            r.monomer_shots = inv * inv;
            r.dimer_shots = r.monomer_shots * r.monomer_shots;
        }
        rows.push_back(r);
    }
    return rows;
}

} // namespace scqsci::wf
