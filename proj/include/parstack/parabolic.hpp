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


#ifndef PARSTACK_PARABOLIC_HPP
#define PARSTACK_PARABOLIC_HPP

#include <map>
#include <string>
#include <vector>

#include "parstack/lattice.hpp"
#include "parstack/random.hpp"
#include "parstack/weight.hpp"

namespace parstack {

/// A lattice chain E^0 ⊇ E^1 ⊇ ... ⊇ E^r = t E^0 at one marked point.
class ParabolicPoint {
   public:
    ParabolicPoint() = default;
    /// Validates the chain; throws Error(InvalidChain).
    explicit ParabolicPoint(std::vector<Lattice> chain);
    /// r = 1: E^0 ⊇ t E^0.
    static ParabolicPoint trivial(const Lattice& e0);
    /// Rank one: E^j = t^base R for j <= depth and t^{base+1} R above, so the weight is depth/r.
    static ParabolicPoint line(int r, int depth, int base = 0);

    int order() const noexcept { return static_cast<int>(chain_.size()) - 1; }
    std::size_t rank() const { return chain_.front().rank(); }
    const std::vector<Lattice>& chain() const noexcept { return chain_; }
    const Lattice& operator[](int j) const { return chain_.at(static_cast<std::size_t>(j)); }
    /// E^a for any integer a, extended by E^{a+r} = t E^a.
    Lattice level(long a) const;
    /// E_alpha = E^{ceil(alpha r)} for rational alpha.
    Lattice at(const mpq_class& alpha) const;
    /// The same filtration re-indexed over a multiple N of the order.
    ParabolicPoint refined_to(int n) const;

    friend bool operator==(const ParabolicPoint&, const ParabolicPoint&) = default;
    std::string to_string() const;

   private:
    std::vector<Lattice> chain_;
};

struct ParabolicBundle {
    std::size_t rank = 0;
    long underlying_degree = 0;
    std::map<std::string, ParabolicPoint> points;

    /// Throws Error(ShapeMismatch) if a point has the wrong ambient rank.
    void validate() const;
};

WeightMultiset weights_of(const ParabolicPoint& p);
/// Checks the chain and then computes weights; used on unvalidated input.
WeightMultiset weights_of(const std::vector<Lattice>& chain);

/// A E_alpha ⊆ F_alpha for every alpha; orders may differ.
bool is_morphism(const Matrix& a, const ParabolicPoint& e, const ParabolicPoint& f);
/// Point-wise check over shared labels; Error(ProfileMismatch) if the label sets differ.
bool is_morphism(const Matrix& a, const ParabolicBundle& e, const ParabolicBundle& f);

/// A invertible with A E_alpha = F_alpha for every alpha.
bool is_isomorphism(const Matrix& a, const ParabolicPoint& e, const ParabolicPoint& f);

mpq_class parabolic_degree(const ParabolicBundle& e);

/// Block-diagonal sum; orders are raised to their lcm.
ParabolicPoint direct_sum(const std::vector<ParabolicPoint>& parts);
ParabolicBundle direct_sum(const ParabolicBundle& a, const ParabolicBundle& b);

struct LineSplitting {
    /// Rank-one chains of the same order with E^0 = R.
    std::vector<ParabolicPoint> lines;
    /// depth[i] / r is the weight of line i.
    std::vector<int> depths;
    /// Columns form an adapted basis: G maps the sum of the lines onto P.
    Matrix basis;
};

/// Deterministic adapted basis: echelon vectors of the fiber flag, ordered by pivot row.
LineSplitting split_into_lines(const ParabolicPoint& p);
/// Another adapted basis with the same lines, perturbed by random triangular
/// changes that respect the flag. Random scalars are drawn from f.
LineSplitting split_into_lines(const ParabolicPoint& p, Rng& rng, Field f);

/// A random chain of order r: a random E^0 with a random basis b, and
/// E^j = span{t^{[d_i < j]} b_i} for random depths d_i in [0, r).
ParabolicPoint random_point(std::size_t n, int r, Field f, Rng& rng, int max_exponent = 2);

}  // namespace parstack

#endif
