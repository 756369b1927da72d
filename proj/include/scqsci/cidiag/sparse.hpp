#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "scqsci/determinants/determinant.hpp"
#include "scqsci/determinants/slater_condon.hpp"
#include "scqsci/error.hpp"
#include "scqsci/integrals/integral_set.hpp"

namespace scqsci::ci {

/// Symmetric matrix kept as its diagonal plus strictly-lower entries.
struct SparseSymmetricMatrix {
    struct Entry {
        std::uint32_t row, col; // row > col
        double value;
    };

    std::size_t dim = 0;
    Eigen::VectorXd diagonal;
    std::vector<Entry> lower;

    std::size_t nnz() const noexcept { return dim + 2 * lower.size(); }

    void multiply(const Eigen::VectorXd &x, Eigen::VectorXd &y) const {
        y = diagonal.cwiseProduct(x);
        for (const auto &e : lower) {
            y(e.row) += e.value * x(e.col);
            y(e.col) += e.value * x(e.row);
        }
    }

    Eigen::MatrixXd to_dense() const {
        const auto n = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        m.diagonal() = diagonal;
        for (const auto &e : lower)
            m(e.row, e.col) = m(e.col, e.row) = e.value;
        return m;
    }
};

/// H[i][j] = <d_i|H|d_j>; pairs beyond double excitations are not stored.
inline SparseSymmetricMatrix build_subspace_hamiltonian(const det::DeterminantSpace &space,
                                                        const integrals::IntegralSet &ints) {
    det::require_uniform_sector(space.dets(), "build_subspace_hamiltonian");
    if (space.size() > 0xFFFFFFFFULL)
        throw SizeLimitError("build_subspace_hamiltonian: dimension too large");
    SparseSymmetricMatrix m;
    m.dim = space.size();
    m.diagonal.resize(static_cast<Eigen::Index>(m.dim));
    for (std::size_t i = 0; i < m.dim; ++i) {
        const auto &di = space[i];
        m.diagonal(static_cast<Eigen::Index>(i)) = det::diagonal_energy(di, ints);
        for (std::size_t j = 0; j < i; ++j) {
            const auto &dj = space[j];
            if (std::popcount(di.alpha ^ dj.alpha) + std::popcount(di.beta ^ dj.beta) > 4)
                continue;
            const double v = det::slater_condon_element(di, dj, ints);
            if (v != 0.0)
                m.lower.push_back({static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(j), v});
        }
    }
    return m;
}

/// `dim` on the first line, then `i j value` (0-based, i >= j).
inline void write_matrix(const SparseSymmetricMatrix &m, std::ostream &out) {
    out << m.dim << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < m.dim; ++i)
        out << i << ' ' << i << ' ' << m.diagonal(static_cast<Eigen::Index>(i)) << '\n';
    for (const auto &e : m.lower)
        out << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

inline void write_matrix(const SparseSymmetricMatrix &m, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write matrix dump '" + path + "'");
    write_matrix(m, out);
}

} // namespace scqsci::ci
