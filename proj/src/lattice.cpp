/*
   Copyright 2026 The parstack Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "parstack/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "parstack/errors.hpp"

namespace parstack {

namespace {

constexpr int kNoTruncation = kInfiniteValuation;

// v[0..rows) -= q * w[0..rows), dropping exponents >= prec.
void sub_multiple(Vec& v, const LocalElement& q, const Vec& w, std::size_t rows, int prec) {
    if (q.is_zero()) return;
    for (std::size_t i = 0; i < rows; ++i) {
        if (w[i].is_zero()) continue;
        v[i] -= q * w[i];
        if (prec != kNoTruncation) v[i] = v[i].truncated(prec);
    }
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const LocalElement& x) { return x.is_zero(); });
}

// Reduce the entries above each pivot of a triangular basis with monomial
// pivots t^{a_i}; see Lattice's class comment for the target shape.
void reduce_above_pivots(std::vector<Vec>& cols, const std::vector<int>& piv, int prec) {
    const std::size_t n = cols.size();
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = j; i-- > 0;) {
            auto [low, high] = cols[j][i].split(piv[i]);
            if (high.is_zero()) continue;
            sub_multiple(cols[j], high.shifted(-piv[i]), cols[i], i + 1, prec);
            cols[j][i] = low;
        }
    }
}

// Howell-style elimination over R / t^prec. Generators are shifted to lie in
// R^n; t^prec R^n lies in their span, so all work happens modulo t^prec.
Matrix hermite_mod(std::vector<Vec> active, std::size_t n, int prec, std::vector<int>& piv) {
    std::vector<Vec> h(n);
    piv.assign(n, prec);
    for (auto& c : active)
        for (auto& x : c) x = x.truncated(prec);
    std::erase_if(active, is_zero_vec);

    for (std::size_t i = n; i-- > 0;) {
        std::size_t best = active.size();
        int best_val = prec;
        for (std::size_t c = 0; c < active.size(); ++c) {
            const int v = active[c][i].valuation();
            if (v < best_val) {
                best_val = v;
                best = c;
            }
        }
        if (best == active.size()) {
            h[i] = Vec(n);
            h[i][i] = LocalElement::t_power(prec);
            continue;
        }
        Vec piv_col = std::move(active[best]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        const int a = best_val;
        const LocalElement unit_inv = piv_col[i].shifted(-a).series_inverse(prec);
        for (std::size_t r = 0; r <= i; ++r)
            if (!piv_col[r].is_zero()) piv_col[r] = (unit_inv * piv_col[r]).truncated(prec);
        piv_col[i] = LocalElement::t_power(a);

        for (auto& col : active) {
            if (col[i].is_zero()) continue;
            const LocalElement q = col[i].shifted(-a);
            sub_multiple(col, q, piv_col, i, prec);
            col[i] = LocalElement();
        }
        // t^{prec-a} * pivot column vanishes in row i but may survive above it
        Vec extra(n);
        for (std::size_t r = 0; r < i; ++r) extra[r] = piv_col[r].shifted(prec - a).truncated(prec);
        active.push_back(std::move(extra));
        std::erase_if(active, is_zero_vec);

        h[i] = std::move(piv_col);
        piv[i] = a;
    }
    reduce_above_pivots(h, piv, prec);
    return Matrix::from_columns(n, h);
}

}  // namespace

Lattice::Lattice(std::size_t n, Matrix basis) : n_(n), basis_(std::move(basis)), pivots_(n) {
    for (std::size_t i = 0; i < n_; ++i) pivots_[i] = basis_(i, i).t_order();
}

Lattice Lattice::standard(std::size_t n) { return Lattice(n, Matrix::identity(n)); }

long Lattice::det_exponent() const noexcept { return std::accumulate(pivots_.begin(), pivots_.end(), 0L); }

Lattice Lattice::from_generators(const std::vector<Vec>& gens, std::size_t n, int saturation) {
    for (const auto& g : gens)
        if (g.size() != n) throw Error(Errc::AmbientMismatch, "generator length differs from ambient rank");
    if (n == 0) return {};
    int lo = saturation;
    for (const auto& g : gens)
        for (const auto& x : g) lo = std::min(lo, x.valuation());
    std::vector<Vec> shifted = gens;
    for (auto& g : shifted)
        for (auto& x : g) x = x.shifted(-lo);
    std::vector<int> piv;
    Matrix h = hermite_mod(std::move(shifted), n, saturation - lo, piv);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) h(i, j) = h(i, j).shifted(lo);
    return Lattice(n, std::move(h));
}

Lattice Lattice::from_basis(const Matrix& basis) {
    if (!basis.is_square()) throw Error(Errc::ShapeMismatch, "a lattice basis must be square");
    const std::size_t n = basis.rows();
    if (n == 0) return {};
    const int v = det_valuation(basis);
    const int lo = basis.min_valuation();
    // t^lo R^n / L has length v - n*lo, so t^{lo + length} kills it
    const long sat = static_cast<long>(lo) + v - static_cast<long>(n) * lo;
    return from_generators(basis.columns(), n, static_cast<int>(sat));
}

Lattice Lattice::reduce_triangular(Matrix h) {
    const std::size_t n = h.rows();
    std::vector<Vec> cols = h.columns();
    std::vector<int> piv(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& d = cols[j][j];
        if (d.is_zero() || !d.is_monomial())
            throw Error(Errc::SingularBasis, "triangular basis needs nonzero monomial pivots");
        piv[j] = d.t_order();
        const Scalar inv = d.lowest_coeff().inverse();
        if (!inv.is_one())
            for (auto& x : cols[j]) x = inv * x;
    }
    reduce_above_pivots(cols, piv, kNoTruncation);
    return Lattice(n, Matrix::from_columns(n, cols));
}

Lattice Lattice::from_triangular(const Matrix& upper) {
    if (!upper.is_square() || !upper.is_upper_triangular())
        throw Error(Errc::ShapeMismatch, "from_triangular needs a square upper triangular basis");
    return reduce_triangular(upper);
}

int Lattice::saturation() const {
    if (n_ == 0) return 0;
    return -triangular_inverse(basis_).min_valuation();
}

Vec Lattice::coordinates(const Vec& v) const {
    if (v.size() != n_) throw Error(Errc::AmbientMismatch, "vector length differs from lattice rank");
    Vec rest = v, coords(n_);
    for (std::size_t i = n_; i-- > 0;) {
        if (rest[i].is_zero()) continue;
        coords[i] = rest[i].shifted(-pivots_[i]);
        for (std::size_t r = 0; r < i; ++r)
            if (!basis_(r, i).is_zero()) rest[r] -= coords[i] * basis_(r, i);
        rest[i] = LocalElement();
    }
    return coords;
}

bool Lattice::contains(const Vec& v) const {
    const Vec c = coordinates(v);
    return std::all_of(c.begin(), c.end(), [](const LocalElement& x) { return x.valuation() >= 0; });
}

bool Lattice::contains(const std::vector<Vec>& vs) const {
    return std::all_of(vs.begin(), vs.end(), [this](const Vec& v) { return contains(v); });
}

bool Lattice::contains(const Lattice& other) const {
    if (other.n_ != n_) throw Error(Errc::AmbientMismatch, "lattices live in different ambient spaces");
    // pivot exponents of a sublattice dominate coordinatewise
    for (std::size_t i = 0; i < n_; ++i)
        if (other.pivots_[i] < pivots_[i]) return false;
    return contains(other.basis_.columns());
}

Lattice Lattice::scaled(int d) const {
    Matrix b = basis_;
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i <= j; ++i) b(i, j) = b(i, j).shifted(d);
    return Lattice(n_, std::move(b));
}

Lattice Lattice::dual() const {
    if (n_ == 0) return {};
    const Matrix inv = triangular_inverse(basis_);
    // rows of H^{-1} generate the dual; L inside t^lo R^n puts t^{-lo} R^n inside it
    return from_generators(inv.transpose().columns(), n_, -min_valuation());
}

std::string Lattice::to_string() const {
    std::ostringstream os;
    os << "Lattice(rank " << n_ << ", pivots [";
    for (std::size_t i = 0; i < n_; ++i) os << (i ? " " : "") << pivots_[i];
    os << "])\n" << basis_.to_string();
    return os.str();
}

Lattice canonicalize(const Matrix& basis) { return Lattice::from_basis(basis); }

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) throw Error(Errc::AmbientMismatch, "lattice_sum of different ambient ranks");
    if (a.rank() == 0) return {};
    auto gens = a.basis().columns();
    auto more = b.basis().columns();
    gens.insert(gens.end(), more.begin(), more.end());
    return Lattice::from_generators(gens, a.rank(), std::min(a.saturation(), b.saturation()));
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) throw Error(Errc::AmbientMismatch, "lattice_intersect of different ambient ranks");
    if (a.contains(b)) return b;
    if (b.contains(a)) return a;
    return lattice_sum(a.dual(), b.dual()).dual();
}

Lattice scale(const Lattice& l, int d) { return l.scaled(d); }

bool contains(const Lattice& a, const Lattice& b) { return a.contains(b); }

long quotient_dim(const Lattice& a, const Lattice& b) {
    if (!a.contains(b)) throw Error(Errc::NotContained, "quotient_dim needs the second lattice inside the first");
    return b.det_exponent() - a.det_exponent();
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
    std::vector<Matrix> blocks;
    blocks.reserve(parts.size());
    for (const auto& p : parts) blocks.push_back(p.basis());
    // block diagonal of canonical bases is canonical
    return Lattice::from_triangular(block_diagonal(blocks));
}

std::vector<Vec> image_generators(const Matrix& a, const Lattice& l) {
    if (a.cols() != l.rank()) throw Error(Errc::ShapeMismatch, "matrix columns differ from lattice rank");
    std::vector<Vec> out;
    out.reserve(l.rank());
    for (std::size_t j = 0; j < l.rank(); ++j) out.push_back(a * l.basis().column(j));
    return out;
}

}  // namespace parstack
