#pragma once

#include <Eigen/Dense>

#include <span>
#include <sstream>
#include <vector>

#include "scqsci/error.hpp"
#include "scqsci/integrals/partition.hpp"
#include "scqsci/integrals/rhf.hpp"

namespace scqsci::integrals {

/// Canonical orbitals of one fragment, expressed over a subset of the dimer
/// AOs (aos[k] is the dimer AO index of fragment AO k).
struct FragmentOrbitals {
    std::vector<int> aos;
    Eigen::MatrixXd coeffs; // fragment AO x fragment MO
    int n_occupied = 0;
};

struct LocalizedOrbitals {
    Eigen::MatrixXd coeffs; // dimer AO x dimer MO
    OrbitalPartition partition;
    double max_interfragment_overlap = 0.0;
};

/// Dimer orbitals as the direct sum of fragment RHF orbitals, ordered
/// [A occupied, B occupied, A virtual, B virtual] so that the aufbau
/// determinant is the product of the fragment references, then Lowdin
/// re-orthonormalized against the dimer overlap.
inline LocalizedOrbitals
localize_block_rhf(const Eigen::MatrixXd &dimer_overlap,
                   std::span<const FragmentOrbitals> fragments,
                   double overlap_threshold = 1e-6) {
    if (fragments.empty() || fragments.size() > 2)
        throw ContractViolation("localize_block_rhf: one or two fragments");
    const auto nao = dimer_overlap.rows();

    LocalizedOrbitals out;
    for (std::size_t f = 0; f < fragments.size(); ++f)
        for (std::size_t g = 0; g < f; ++g)
            for (int mu : fragments[f].aos)
                for (int nu : fragments[g].aos)
                    out.max_interfragment_overlap =
                        std::max(out.max_interfragment_overlap,
                                 std::abs(dimer_overlap(mu, nu)));
    if (out.max_interfragment_overlap > overlap_threshold) {
        std::ostringstream msg;
        msg << "localize_block_rhf: inter-fragment AO overlap "
            << out.max_interfragment_overlap << " exceeds " << overlap_threshold
            << "; block localization is only valid for non-interacting "
               "fragments";
        throw ContractViolation(msg.str());
    }

    Eigen::Index nmo = 0;
    for (const auto &frag : fragments) {
        if (static_cast<Eigen::Index>(frag.aos.size()) != frag.coeffs.rows())
            throw ContractViolation("localize_block_rhf: AO list/coefficient "
                                    "mismatch");
        nmo += frag.coeffs.cols();
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(nao, nmo);
    out.partition.slots.resize(static_cast<std::size_t>(nmo));

    Eigen::Index col = 0;
    auto place = [&](std::size_t f, Eigen::Index first, Eigen::Index count) {
        const auto &frag = fragments[f];
        for (Eigen::Index j = first; j < first + count; ++j, ++col) {
            for (std::size_t k = 0; k < frag.aos.size(); ++k)
                c(frag.aos[k], col) = frag.coeffs(static_cast<Eigen::Index>(k), j);
            out.partition.slots[static_cast<std::size_t>(col)] = {
                static_cast<Fragment>(f), static_cast<int>(j)};
        }
    };
    for (std::size_t f = 0; f < fragments.size(); ++f)
        place(f, 0, fragments[f].n_occupied);
    for (std::size_t f = 0; f < fragments.size(); ++f)
        place(f, fragments[f].n_occupied,
              fragments[f].coeffs.cols() - fragments[f].n_occupied);
    for (std::size_t f = 0; f < fragments.size(); ++f)
        out.partition.ref_counts[f] = {fragments[f].n_occupied,
                                       fragments[f].n_occupied};

    const Eigen::MatrixXd metric = c.transpose() * dimer_overlap * c;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric);
    out.coeffs = c * (es.eigenvectors() *
                      es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose());
    return out;
}

/// Mulliken weight of every orbital on each fragment's AOs.
inline Eigen::MatrixXd fragment_weights(const Eigen::MatrixXd &coeffs,
                                        const Eigen::MatrixXd &overlap,
                                        std::span<const FragmentOrbitals> fragments) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(coeffs.cols(),
                                              static_cast<Eigen::Index>(fragments.size()));
    const Eigen::MatrixXd sc = overlap * coeffs;
    for (std::size_t f = 0; f < fragments.size(); ++f)
        for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
            for (int mu : fragments[f].aos)
                w(j, static_cast<Eigen::Index>(f)) += coeffs(mu, j) * sc(mu, j);
    return w;
}

} // namespace scqsci::integrals
