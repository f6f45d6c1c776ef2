// Shared helpers for the test binaries: compact constructors for local
// elements and matrices, plus independent oracles.
#ifndef PARSTACK_TESTS_SUPPORT_HPP
#define PARSTACK_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <optional>
#include <vector>

#include "parstack/errors.hpp"
#include "parstack/lattice.hpp"

namespace parstack::testing {

/// t^order * (c0 + c1 t + ...).
inline LocalElement el(int order, std::initializer_list<long> coeffs) {
    std::vector<Scalar> c;
    for (long x : coeffs) c.emplace_back(x);
    return LocalElement(order, std::move(c));
}
inline LocalElement tp(int k) { return LocalElement::t_power(k); }

/// Matrix from a list of columns.
inline Matrix cols(std::initializer_list<std::initializer_list<LocalElement>> columns) {
    std::vector<Vec> vs;
    for (const auto& c : columns) vs.emplace_back(c);
    return Matrix::from_columns(vs.empty() ? 0 : vs.front().size(), vs);
}

inline Lattice span(std::initializer_list<std::initializer_list<LocalElement>> columns) {
    return Lattice::from_basis(cols(columns));
}

/// Determinant valuation, or nullopt when the determinant vanishes.
inline std::optional<int> det_val_or_zero(const Matrix& m) {
    try {
        return det_valuation(m);
    } catch (const Error& e) {
        if (e.code() == Errc::SingularBasis) return std::nullopt;
        throw;
    }
}

/// Membership of v in the R-span of the square basis g by Cramer's rule:
/// every coordinate det(g_i)/det(g) must have non-negative valuation. This
/// never touches the canonical-form code.
inline bool cramer_member(const Matrix& g, const Vec& v) {
    const int d = det_valuation(g);
    for (std::size_t i = 0; i < g.cols(); ++i) {
        Matrix gi = g;
        gi.set_column(i, v);
        auto di = det_val_or_zero(gi);
        if (di && *di < d) return false;
    }
    return true;
}

/// R-spans of two square bases coincide (mutual membership).
inline bool same_span(const Matrix& a, const Matrix& b) {
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (!cramer_member(a, b.column(j))) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!cramer_member(b, a.column(j))) return false;
    return true;
}

}  // namespace parstack::testing

#endif
