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

#ifndef PARSTACK_LATTICE_HPP
#define PARSTACK_LATTICE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "parstack/matrix.hpp"

namespace parstack {

/// A full-rank R-submodule of K^n, R = k[t]_(t), stored in canonical form.
///
/// The canonical basis is upper triangular; column j has pivot t^{a_j} in row j
/// and every entry above a pivot in row i is a Laurent polynomial with all
/// exponents < a_i. Two lattices are equal iff their canonical bases agree.
class Lattice {
   public:
    /// The rank-0 lattice.
    Lattice() = default;

    static Lattice standard(std::size_t n);
    /// Canonical form of the R-span of the columns of a square basis.
    /// Throws Error(SingularBasis) if the columns are dependent over K.
    static Lattice from_basis(const Matrix& basis);
    /// Canonical form of the R-span of `gens`. The caller guarantees
    /// t^{saturation} R^n is contained in that span.
    static Lattice from_generators(const std::vector<Vec>& gens, std::size_t n, int saturation);
    /// Fast path for an upper triangular basis whose diagonal entries are
    /// nonzero monomials c * t^a.
    static Lattice from_triangular(const Matrix& upper);

    std::size_t rank() const noexcept { return n_; }
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }
    /// Valuation of the determinant; quotient lengths are differences of these.
    long det_exponent() const noexcept;
    /// Largest a with L contained in t^a R^n.
    int min_valuation() const { return basis_.min_valuation(); }
    /// Smallest h with t^h R^n contained in L.
    int saturation() const;

    bool contains(const Vec& v) const;
    bool contains(const std::vector<Vec>& vs) const;
    bool contains(const Lattice& other) const;
    /// Coordinates of v in the canonical basis (entries of K).
    Vec coordinates(const Vec& v) const;

    Lattice scaled(int d) const;
    /// {y : y^T x in R for all x in L}.
    Lattice dual() const;

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }
    std::string to_string() const;

   private:
    Lattice(std::size_t n, Matrix basis);
    static Lattice reduce_triangular(Matrix h);

    std::size_t n_ = 0;
    Matrix basis_;
    std::vector<int> pivots_;
};

Lattice canonicalize(const Matrix& basis);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
Lattice scale(const Lattice& l, int d);
/// True iff b is contained in a.
bool contains(const Lattice& a, const Lattice& b);
/// Length of a / b as a k-vector space; Error(NotContained) unless b is inside a.
long quotient_dim(const Lattice& a, const Lattice& b);
Lattice direct_sum(const std::vector<Lattice>& parts);
/// Columns of A times the canonical basis of L (generators of A(L)).
std::vector<Vec> image_generators(const Matrix& a, const Lattice& l);

}  // namespace parstack

#endif
