#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/error.hpp"
#include "scqsci/hamsim/jordan_wigner.hpp"
#include "scqsci/hamsim/trotter.hpp"

namespace scqsci::hamsim {

/// Computational basis the amplitudes are stored over: either the whole
/// 2^n register or one (N_alpha, N_beta) particle sector.
class Basis {
  public:
    static std::shared_ptr<const Basis> full(int n_qubits) {
        if (n_qubits < 0 || n_qubits > 26)
            throw SizeLimitError("full register limited to 26 qubits");
        auto b = std::shared_ptr<Basis>(new Basis);
        b->n_qubits_ = n_qubits;
        b->full_ = true;
        b->size_ = std::size_t{1} << n_qubits;
        return b;
    }

    static std::shared_ptr<const Basis> sector(int norb, int n_alpha, int n_beta) {
        if (norb < 1 || norb > 16)
            throw SizeLimitError("particle-sector basis limited to 16 orbitals");
        if (n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb)
            throw ContractViolation("sector basis: electron count exceeds orbitals");
        auto b = std::shared_ptr<Basis>(new Basis);
        b->n_qubits_ = 2 * norb;
        b->n_alpha_ = n_alpha;
        b->n_beta_ = n_beta;
        b->alpha_ = det::strings_with_popcount(norb, n_alpha);
        b->beta_ = det::strings_with_popcount(norb, n_beta);
        b->rank_alpha_.assign(std::size_t{1} << norb, -1);
        b->rank_beta_.assign(std::size_t{1} << norb, -1);
        for (std::size_t i = 0; i < b->alpha_.size(); ++i)
            b->rank_alpha_[b->alpha_[i]] = static_cast<std::int32_t>(i);
        for (std::size_t i = 0; i < b->beta_.size(); ++i)
            b->rank_beta_[b->beta_[i]] = static_cast<std::int32_t>(i);
        b->size_ = b->alpha_.size() * b->beta_.size();
        b->states_.reserve(b->size_);
        for (auto a : b->alpha_)
            for (auto be : b->beta_)
                b->states_.push_back(to_bitstring({a, be}));
        return b;
    }

    int n_qubits() const noexcept { return n_qubits_; }
    bool is_full() const noexcept { return full_; }
    std::size_t size() const noexcept { return size_; }

    std::uint64_t state(std::size_t i) const noexcept {
        return full_ ? static_cast<std::uint64_t>(i) : states_[i];
    }

    /// Index of a bitstring, or -1 when it is not in this basis.
    std::int64_t index_of(std::uint64_t bits) const noexcept {
        if (n_qubits_ < 64 && (bits >> n_qubits_))
            return -1;
        if (full_)
            return static_cast<std::int64_t>(bits);
        const auto d = to_determinant(bits);
        const auto ra = rank_alpha_[d.alpha];
        const auto rb = rank_beta_[d.beta];
        if (ra < 0 || rb < 0)
            return -1;
        return static_cast<std::int64_t>(ra) *
                   static_cast<std::int64_t>(beta_.size()) + rb;
    }

  private:
    Basis() = default;
    int n_qubits_ = 0;
    bool full_ = false;
    int n_alpha_ = 0, n_beta_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> alpha_, beta_, states_;
    std::vector<std::int32_t> rank_alpha_, rank_beta_;
};

struct Statevector {
    std::shared_ptr<const Basis> basis;
    Eigen::VectorXcd amplitudes;

    static Statevector basis_state(std::shared_ptr<const Basis> basis,
                                   std::uint64_t bits) {
        const auto i = basis->index_of(bits);
        if (i < 0)
            throw ContractViolation("basis_state: bitstring outside the basis");
        Statevector s{std::move(basis), {}};
        s.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.basis->size()));
        s.amplitudes(i) = 1.0;
        return s;
    }

    double norm() const { return amplitudes.norm(); }

    cplx amplitude(std::uint64_t bits) const {
        const auto i = basis->index_of(bits);
        return i < 0 ? cplx{} : amplitudes(i);
    }
};

/// A schedule compiled against a basis. Consecutive rotations sharing a flip
/// mask x and commuting pairwise are fused into one generator G; G couples
/// each basis state b only to b ^ x, so exp(-iG) acts as independent 2x2
/// blocks (or as diagonal phases when x = 0).
class Evolver {
  public:
    /// With conserve_spin_sectors, couplings between different
    /// (N_alpha, N_beta) sectors are dropped; they vanish identically for
    /// any number-conserving Hamiltonian.
    Evolver(const TrotterSchedule &schedule, std::shared_ptr<const Basis> basis,
            bool conserve_spin_sectors = true)
        : basis_(std::move(basis)) {
        if (schedule.n_qubits != basis_->n_qubits())
            throw ContractViolation("Evolver: schedule and basis qubit counts differ");
        if (conserve_spin_sectors && (schedule.n_qubits % 2))
            throw ContractViolation("Evolver: spin sectors need an even qubit count");
        std::map<Key, std::size_t> seen;
        const auto &rot = schedule.rotations;
        std::size_t i = 0;
        while (i < rot.size()) {
            std::size_t j = i + 1;
            while (j < rot.size() && rot[j].pauli.x == rot[i].pauli.x) {
                bool ok = true;
                for (std::size_t t = i; t < j && ok; ++t)
                    ok = commute(rot[t].pauli, rot[j].pauli);
                if (!ok)
                    break;
                ++j;
            }
            Key key{rot[i].pauli.x, {}};
            for (std::size_t t = i; t < j; ++t)
                key.second.emplace_back(rot[t].pauli.z, rot[t].angle);
            auto [it, inserted] = seen.try_emplace(key, groups_.size());
            if (inserted)
                groups_.push_back(compile(rot.begin() + static_cast<std::ptrdiff_t>(i),
                                          rot.begin() + static_cast<std::ptrdiff_t>(j),
                                          conserve_spin_sectors));
            sequence_.push_back(it->second);
            i = j;
        }
    }

    const Basis &basis() const noexcept { return *basis_; }
    std::size_t n_groups() const noexcept { return sequence_.size(); }
    std::size_t n_unique_groups() const noexcept { return groups_.size(); }

    /// Applies the schedule `repetitions` times in place.
    void apply(Statevector &state, int repetitions = 1) const {
        if (state.basis.get() != basis_.get() &&
            (state.basis->size() != basis_->size() ||
             state.basis->n_qubits() != basis_->n_qubits()))
            throw ContractViolation("Evolver: state lives in a different basis");
        auto &psi = state.amplitudes;
        for (int r = 0; r < repetitions; ++r)
            for (auto g : sequence_) {
                const auto &grp = groups_[g];
                if (grp.diagonal) {
                    for (Eigen::Index k = 0; k < psi.size(); ++k)
                        psi(k) *= grp.phases[static_cast<std::size_t>(k)];
                    continue;
                }
                for (const auto &p : grp.pairs) {
                    const cplx a = psi(p.i);
                    const cplx b = psi(p.j);
                    psi(p.i) = p.c * a - std::conj(p.w) * b;
                    psi(p.j) = p.c * b + p.w * a;
                }
            }
    }

  private:
    using Key = std::pair<std::uint64_t, std::vector<std::pair<std::uint64_t, double>>>;

    struct PairOp {
        std::uint32_t i, j;
        double c;
        cplx w;
    };

    struct Group {
        bool diagonal = false;
        std::vector<cplx> phases;
        std::vector<PairOp> pairs;
    };

    template <typename It>
    Group compile(It first, It last, bool conserve) const {
        Group g;
        const std::uint64_t x = first->pauli.x;
        const auto n = basis_->size();
        if (x == 0) {
            g.diagonal = true;
            g.phases.resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                const auto b = basis_->state(k);
                double d = 0.0;
                for (auto it = first; it != last; ++it)
                    d += (std::popcount(it->pauli.z & b) & 1) ? -it->angle : it->angle;
                g.phases[k] = std::polar(1.0, -d);
            }
            return g;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const auto b = basis_->state(k);
            const auto b2 = b ^ x;
            if (b2 < b)
                continue;
            if (conserve &&
                (std::popcount(b & kAlphaQubits) != std::popcount(b2 & kAlphaQubits) ||
                 std::popcount(b & kBetaQubits) != std::popcount(b2 & kBetaQubits)))
                continue;
            const auto j = basis_->index_of(b2);
            if (j < 0)
                continue;
            cplx h = 0.0;
            for (auto it = first; it != last; ++it)
                h += it->angle * apply_phase(it->pauli, b);
            const double mag = std::abs(h);
            if (mag == 0.0)
                continue;
            g.pairs.push_back({static_cast<std::uint32_t>(k),
                               static_cast<std::uint32_t>(j), std::cos(mag),
                               cplx(0.0, -std::sin(mag) / mag) * h});
        }
        return g;
    }

    std::shared_ptr<const Basis> basis_;
    std::vector<Group> groups_;
    std::vector<std::size_t> sequence_;
};

inline Statevector evolve(Statevector state, const TrotterSchedule &schedule,
                          int repetitions, bool conserve_spin_sectors = true) {
    if (repetitions < 0)
        throw ContractViolation("evolve: negative repetition count");
    if (repetitions == 0)
        return state;
    Evolver(schedule, state.basis, conserve_spin_sectors).apply(state, repetitions);
    return state;
}

} // namespace scqsci::hamsim
