#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scqsci/error.hpp"

namespace scqsci::det {

/// Occupation bitmasks over M <= 64 spatial orbitals; bit p set means the
/// spin orbital (p, spin) is occupied.
struct Determinant {
    std::uint64_t alpha = 0;
    std::uint64_t beta = 0;

    int n_alpha() const noexcept { return std::popcount(alpha); }
    int n_beta() const noexcept { return std::popcount(beta); }

    friend constexpr auto operator<=>(const Determinant &,
                                      const Determinant &) = default;
};

struct DeterminantHash {
    std::size_t operator()(const Determinant &d) const noexcept {
        return std::hash<std::uint64_t>{}(d.alpha * 0x9E3779B97F4A7C15ULL ^
                                          d.beta);
    }
};

inline constexpr std::uint64_t low_bits(int n) noexcept {
    return n >= 64 ? ~0ULL : ((1ULL << n) - 1);
}

/// Aufbau determinant: the lowest n_alpha / n_beta orbitals occupied.
inline Determinant hf_reference(int n_alpha, int n_beta, int norb) {
    if (norb < 0 || norb > 64)
        throw ContractViolation("hf_reference: 0..64 orbitals supported");
    if (n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb)
        throw ContractViolation("hf_reference: electron count exceeds orbitals");
    return {low_bits(n_alpha), low_bits(n_beta)};
}

/// Number of spin orbitals by which two determinants differ (half the
/// symmetric-difference size).
inline int excitation_degree(const Determinant &a, const Determinant &b) noexcept {
    return (std::popcount(a.alpha ^ b.alpha) + std::popcount(a.beta ^ b.beta)) / 2;
}

/// Text form `|alpha,beta⟩`, orbital 0 leftmost.
inline std::string to_string(const Determinant &d, int norb) {
    std::string s = "|";
    for (int p = 0; p < norb; ++p)
        s.push_back((d.alpha >> p) & 1ULL ? '1' : '0');
    s.push_back(',');
    for (int p = 0; p < norb; ++p)
        s.push_back((d.beta >> p) & 1ULL ? '1' : '0');
    s += "⟩";
    return s;
}

/// Inverse of to_string; also accepts a plain `>` as the closing bracket.
inline Determinant parse_determinant(const std::string &text, int *norb_out = nullptr) {
    auto fail = [&] { throw ParseError("malformed determinant '" + text + "'"); };
    if (text.empty() || text.front() != '|')
        fail();
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        fail();
    std::string rest = text.substr(comma + 1);
    const std::string close = "⟩";
    if (rest.size() >= close.size() &&
        rest.compare(rest.size() - close.size(), close.size(), close) == 0)
        rest.resize(rest.size() - close.size());
    else if (!rest.empty() && rest.back() == '>')
        rest.pop_back();
    else
        fail();
    const std::string a = text.substr(1, comma - 1);
    if (a.size() != rest.size() || a.size() > 64)
        fail();
    Determinant d;
    for (std::size_t p = 0; p < a.size(); ++p) {
        if ((a[p] != '0' && a[p] != '1') || (rest[p] != '0' && rest[p] != '1'))
            fail();
        d.alpha |= static_cast<std::uint64_t>(a[p] == '1') << p;
        d.beta |= static_cast<std::uint64_t>(rest[p] == '1') << p;
    }
    if (norb_out)
        *norb_out = static_cast<int>(a.size());
    return d;
}

/// Canonically ordered set of unique determinants.
class DeterminantSpace {
  public:
    DeterminantSpace() = default;

    explicit DeterminantSpace(std::vector<Determinant> dets) : dets_(std::move(dets)) {
        std::sort(dets_.begin(), dets_.end());
        dets_.erase(std::unique(dets_.begin(), dets_.end()), dets_.end());
    }

    std::size_t size() const noexcept { return dets_.size(); }
    bool empty() const noexcept { return dets_.empty(); }
    const Determinant &operator[](std::size_t i) const noexcept { return dets_[i]; }
    auto begin() const noexcept { return dets_.begin(); }
    auto end() const noexcept { return dets_.end(); }
    std::span<const Determinant> dets() const noexcept { return dets_; }

    std::optional<std::size_t> index_of(const Determinant &d) const noexcept {
        auto it = std::lower_bound(dets_.begin(), dets_.end(), d);
        if (it == dets_.end() || *it != d)
            return std::nullopt;
        return static_cast<std::size_t>(it - dets_.begin());
    }

    bool contains(const Determinant &d) const noexcept { return index_of(d).has_value(); }

    /// True if every element of this space is in other.
    bool is_subset_of(const DeterminantSpace &other) const {
        return std::includes(other.begin(), other.end(), begin(), end());
    }

    friend bool operator==(const DeterminantSpace &, const DeterminantSpace &) = default;

  private:
    std::vector<Determinant> dets_;
};

inline DeterminantSpace merge(const DeterminantSpace &a, const DeterminantSpace &b) {
    std::vector<Determinant> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    return DeterminantSpace(std::move(all));
}

/// Throws unless every determinant carries the same (n_alpha, n_beta).
inline void require_uniform_sector(std::span<const Determinant> dets,
                                   const char *who) {
    if (dets.empty())
        return;
    const int na = dets.front().n_alpha();
    const int nb = dets.front().n_beta();
    for (const auto &d : dets)
        if (d.n_alpha() != na || d.n_beta() != nb)
            throw ContractViolation(std::string(who) +
                                    ": determinants from different particle "
                                    "sectors");
}

/// All determinants of the (n_alpha, n_beta) sector over norb orbitals in
/// canonical order.
inline std::vector<std::uint64_t> strings_with_popcount(int norb, int n) {
    std::vector<std::uint64_t> out;
    if (n < 0 || n > norb)
        return out;
    if (n == 0)
        return {0ULL};
    std::uint64_t s = low_bits(n);
    const std::uint64_t limit = norb >= 64 ? ~0ULL : (1ULL << norb);
    while (true) {
        out.push_back(s);
        // Gosper's hack: next larger integer with the same popcount.
        const std::uint64_t c = s & (~s + 1);
        const std::uint64_t r = s + c;
        if (r == 0 || r >= limit)
            break;
        s = (((r ^ s) >> 2) / c) | r;
        if (s >= limit)
            break;
    }
    return out;
}

inline DeterminantSpace full_sector(int norb, int n_alpha, int n_beta) {
    const auto as = strings_with_popcount(norb, n_alpha);
    const auto bs = strings_with_popcount(norb, n_beta);
    std::vector<Determinant> dets;
    dets.reserve(as.size() * bs.size());
    for (auto a : as)
        for (auto b : bs)
            dets.push_back({a, b});
    return DeterminantSpace(std::move(dets));
}

} // namespace scqsci::det
