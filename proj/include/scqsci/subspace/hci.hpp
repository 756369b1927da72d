#pragma once

#include <cmath>
#include <unordered_set>
#include <vector>

#include "scqsci/cidiag/solver.hpp"
#include "scqsci/cidiag/sparse.hpp"
#include "scqsci/determinants/determinant.hpp"
#include "scqsci/determinants/slater_condon.hpp"
#include "scqsci/error.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::sub {

/// Calls f(a) for every single and double excitation a of d.
template <typename F>
inline void for_each_connected(const det::Determinant &d, int norb, F &&f) {
    const std::uint64_t full = det::low_bits(norb);
    const std::uint64_t va = full & ~d.alpha;
    const std::uint64_t vb = full & ~d.beta;
    auto singles = [&](std::uint64_t occ, std::uint64_t virt, auto make) {
        det::for_each_bit(occ, [&](int i) {
            det::for_each_bit(virt, [&](int a) { f(make((1ULL << i) | (1ULL << a))); });
        });
    };
    auto same_spin_doubles = [&](std::uint64_t occ, std::uint64_t virt, auto make) {
        det::for_each_bit(occ, [&](int i) {
            det::for_each_bit(occ & ~det::low_bits(i + 1), [&](int j) {
                det::for_each_bit(virt, [&](int a) {
                    det::for_each_bit(virt & ~det::low_bits(a + 1), [&](int b) {
                        f(make((1ULL << i) | (1ULL << j) | (1ULL << a) | (1ULL << b)));
                    });
                });
            });
        });
    };
    auto flip_a = [&](std::uint64_t m) { return det::Determinant{d.alpha ^ m, d.beta}; };
    auto flip_b = [&](std::uint64_t m) { return det::Determinant{d.alpha, d.beta ^ m}; };
    singles(d.alpha, va, flip_a);
    singles(d.beta, vb, flip_b);
    same_spin_doubles(d.alpha, va, flip_a);
    same_spin_doubles(d.beta, vb, flip_b);
    det::for_each_bit(d.alpha, [&](int i) {
        det::for_each_bit(va, [&](int a) {
            const std::uint64_t ma = (1ULL << i) | (1ULL << a);
            det::for_each_bit(d.beta, [&](int j) {
                det::for_each_bit(vb, [&](int b) {
                    f(det::Determinant{d.alpha ^ ma, d.beta ^ ((1ULL << j) | (1ULL << b))});
                });
            });
        });
    });
}

struct HciOptions {
    int max_iterations = 200;
    ci::SolverOptions solver;
};

struct HciResult {
    det::DeterminantSpace space;
    ci::SpectrumResult spectrum;
    int iterations = 0;
};

/// Variational heat-bath selection: starting from the reference, add every
/// connected determinant a with max_i |H_ai c_i| >= epsilon and rediagonalize
/// until nothing is added.
inline HciResult hci_select(const integrals::IntegralSet &ints, double epsilon,
                            const HciOptions &opt = {}) {
    if (!(epsilon > 0.0))
        throw ContractViolation("hci_select: epsilon must be positive");
    const int m = static_cast<int>(ints.norb);
    HciResult r;
    r.space = det::DeterminantSpace({det::hf_reference(ints.n_alpha, ints.n_beta, m)});
    r.spectrum = ci::ground_state(ci::build_subspace_hamiltonian(r.space, ints), 0, opt.solver);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        r.iterations = it;
        std::vector<det::Determinant> added;
        std::unordered_set<det::Determinant, det::DeterminantHash> chosen;
        for (std::size_t i = 0; i < r.space.size(); ++i) {
            const double ci = r.spectrum.vector(static_cast<Eigen::Index>(i));
            if (ci == 0.0)
                continue;
            const auto &di = r.space[i];
            for_each_connected(di, m, [&](const det::Determinant &a) {
                if (r.space.contains(a))
                    return;
                if (chosen.contains(a))
                    return;
                const double v = std::abs(det::slater_condon_element(a, di, ints) * ci);
                if (v >= epsilon && chosen.insert(a).second)
                    added.push_back(a);
            });
        }
        if (added.empty())
            return r;
        r.space = det::merge(r.space, det::DeterminantSpace(std::move(added)));
        r.spectrum =
            ci::ground_state(ci::build_subspace_hamiltonian(r.space, ints), 0, opt.solver);
    }
    throw ConvergenceError("hci_select: selection did not settle within " +
                               std::to_string(opt.max_iterations) + " iterations",
                           0.0);
}

} // namespace scqsci::sub
