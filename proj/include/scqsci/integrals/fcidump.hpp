#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scqsci/error.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::integrals {

// FCIDUMP: chemist-notation (pq|rs), 1-based indices. ORBSYM/ISYM are
// accepted and ignored.

namespace detail {

inline std::string upper(std::string s) {
    for (auto &ch : s)
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

/// Splits the namelist body into KEY -> list of values.
inline std::map<std::string, std::vector<std::string>>
parse_namelist(const std::string &body) {
    std::map<std::string, std::vector<std::string>> out;
    std::string key;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            return;
        if (auto eq = token.find('='); eq != std::string::npos) {
            key = upper(token.substr(0, eq));
            out[key];
            const auto rest = token.substr(eq + 1);
            if (!rest.empty())
                out[key].push_back(rest);
        } else if (!key.empty()) {
            out[key].push_back(token);
        } else {
            throw FcidumpError("FCIDUMP header: value '" + token +
                               "' without a key");
        }
        token.clear();
    };
    for (char ch : body) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else if (ch == '=') {
            // Allow `NORB = 4` as well as `NORB=4`.
            if (token.empty()) {
                if (key.empty() || !out[key].empty())
                    throw FcidumpError("FCIDUMP header: stray '='");
                token = key + "=";
                out.erase(key);
            } else {
                token.push_back(ch);
            }
        } else {
            token.push_back(ch);
        }
    }
    flush();
    return out;
}

inline int header_int(const std::map<std::string, std::vector<std::string>> &nl,
                      const std::string &key, bool required, int fallback = 0) {
    auto it = nl.find(key);
    if (it == nl.end() || it->second.empty()) {
        if (required)
            throw FcidumpError("FCIDUMP header: missing " + key);
        return fallback;
    }
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second.front(), &used);
        if (used != it->second.front().size())
            throw std::invalid_argument(key);
        return v;
    } catch (const std::exception &) {
        throw FcidumpError("FCIDUMP header: malformed " + key + " value '" +
                           it->second.front() + "'");
    }
}

} // namespace detail

inline IntegralSet parse_fcidump(std::istream &in, double duplicate_tol = 1e-10) {
    std::string header;
    std::string line;
    bool started = false;
    bool ended = false;
    while (std::getline(in, line)) {
        const auto up = detail::upper(line);
        if (!started) {
            const auto pos = up.find("&FCI");
            if (pos == std::string::npos) {
                if (up.find_first_not_of(" \t\r") == std::string::npos)
                    continue;
                throw FcidumpError("FCIDUMP: expected &FCI header");
            }
            started = true;
            line = line.substr(pos + 4);
        }
        const auto up2 = detail::upper(line);
        auto end = up2.find("&END");
        auto slash = up2.find('/');
        if (end == std::string::npos && slash != std::string::npos)
            end = slash;
        if (end != std::string::npos) {
            header += ' ' + line.substr(0, end);
            ended = true;
            break;
        }
        header += ' ' + line;
    }
    if (!started || !ended)
        throw FcidumpError("FCIDUMP: unterminated header (missing &END)");

    const auto nl = detail::parse_namelist(header);
    const int norb = detail::header_int(nl, "NORB", true);
    const int nelec = detail::header_int(nl, "NELEC", true);
    const int ms2 = detail::header_int(nl, "MS2", false, 0);
    if (norb < 1 || norb > 64)
        throw FcidumpError("FCIDUMP: NORB must be in 1..64");
    if (nelec < 0 || nelec > 2 * norb || (nelec + ms2) % 2 != 0 ||
        std::abs(ms2) > nelec)
        throw FcidumpError("FCIDUMP: inconsistent NELEC/MS2");

    const auto m = static_cast<std::size_t>(norb);
    IntegralSet ints = IntegralSet::zeros(m, (nelec + ms2) / 2, (nelec - ms2) / 2);
    std::vector<char> seen_g(m * m * m * m, 0);
    std::vector<char> seen_h(m * m, 0);
    bool seen_core = false;

    auto check = [&](char &flag, double old, double v, const std::string &what) {
        if (flag && std::abs(old - v) > duplicate_tol)
            throw FcidumpError("FCIDUMP: conflicting duplicate values for " + what);
        flag = 1;
    };

    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        double v = 0.0;
        long long i = 0, j = 0, k = 0, l = 0;
        if (!(ls >> v >> i >> j >> k >> l))
            throw FcidumpError("FCIDUMP: malformed data line " +
                               std::to_string(lineno) + ": '" + line + "'");
        for (auto idx : {i, j, k, l})
            if (idx < 0 || idx > norb)
                throw FcidumpError("FCIDUMP: index " + std::to_string(idx) +
                                   " out of range on data line " +
                                   std::to_string(lineno));
        std::ostringstream tag;
        tag << '(' << i << ' ' << j << '|' << k << ' ' << l << ')';
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            char flag = seen_core;
            check(flag, ints.e_core, v, "E_core");
            seen_core = true;
            ints.e_core = v;
        } else if (k == 0 && l == 0) {
            if (i == 0 || j == 0)
                throw FcidumpError("FCIDUMP: malformed one-electron index on "
                                   "line " + std::to_string(lineno));
            const auto p = static_cast<std::size_t>(i - 1);
            const auto q = static_cast<std::size_t>(j - 1);
            check(seen_h[std::max(p, q) * m + std::min(p, q)], ints.h(p, q), v,
                  tag.str());
            ints.h(p, q) = ints.h(q, p) = v;
        } else {
            if (i == 0 || j == 0 || k == 0 || l == 0)
                throw FcidumpError("FCIDUMP: malformed two-electron index on "
                                   "line " + std::to_string(lineno));
            const std::size_t p = static_cast<std::size_t>(i - 1),
                              q = static_cast<std::size_t>(j - 1),
                              r = static_cast<std::size_t>(k - 1),
                              s = static_cast<std::size_t>(l - 1);
            auto a = std::max(p, q), b = std::min(p, q);
            auto c = std::max(r, s), d = std::min(r, s);
            if (a * (a + 1) / 2 + b < c * (c + 1) / 2 + d) {
                std::swap(a, c);
                std::swap(b, d);
            }
            check(seen_g[((a * m + b) * m + c) * m + d], ints.g(a, b, c, d), v,
                  tag.str());
            ints.g.set_symmetric(p, q, r, s, v);
        }
    }
    return ints;
}

inline IntegralSet read_fcidump(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw FcidumpError("cannot open FCIDUMP '" + path + "'");
    return parse_fcidump(in);
}

/// Writes the symmetry-unique integrals with 17 significant digits, enough
/// for an exact binary round trip. Exact zeros are omitted.
inline void write_fcidump(const IntegralSet &ints, std::ostream &out) {
    const auto m = ints.norb;
    out << "&FCI NORB=" << m << ",NELEC=" << ints.n_alpha + ints.n_beta
        << ",MS2=" << ints.n_alpha - ints.n_beta << ",\n ORBSYM=";
    for (std::size_t p = 0; p < m; ++p)
        out << "1,";
    out << "\n ISYM=1,\n&END\n";
    out << std::scientific << std::setprecision(16);
    auto row = [&](double v, std::size_t i, std::size_t j, std::size_t k,
                   std::size_t l) {
        out << std::setw(24) << v << ' ' << std::setw(3) << i << ' '
            << std::setw(3) << j << ' ' << std::setw(3) << k << ' '
            << std::setw(3) << l << '\n';
    };
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q <= p; ++q)
            for (std::size_t r = 0; r <= p; ++r)
                for (std::size_t s = 0; s <= (r == p ? q : r); ++s)
                    if (const double v = ints.g(p, q, r, s); v != 0.0)
                        row(v, p + 1, q + 1, r + 1, s + 1);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q <= p; ++q)
            if (const double v = ints.h(static_cast<Eigen::Index>(p),
                                        static_cast<Eigen::Index>(q));
                v != 0.0)
                row(v, p + 1, q + 1, 0, 0);
    row(ints.e_core, 0, 0, 0, 0);
}

inline void write_fcidump(const IntegralSet &ints, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw FcidumpError("cannot write FCIDUMP '" + path + "'");
    write_fcidump(ints, out);
}

} // namespace scqsci::integrals
