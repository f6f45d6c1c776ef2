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

#ifndef PARSTACK_LOCAL_ELEMENT_HPP
#define PARSTACK_LOCAL_ELEMENT_HPP

#include <climits>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "parstack/scalar.hpp"

namespace parstack {

inline constexpr int kInfiniteValuation = INT_MAX / 4;

/// A Laurent polynomial t^order * (c_0 + c_1 t + ...), c_0 != 0.
///
/// Elements with order >= 0 lie in the local ring R = k[t]_(t); arbitrary ones
/// model the part of the fraction field K that every lattice here is spanned
/// by. The zero element has order 0 and no coefficients.
class LocalElement {
   public:
    LocalElement() = default;
    LocalElement(const Scalar& c) : LocalElement(0, {c}) {}
    LocalElement(long c) : LocalElement(Scalar(c)) {}
    LocalElement(int c) : LocalElement(Scalar(c)) {}
    LocalElement(int order, std::vector<Scalar> coeffs);

    static LocalElement monomial(const Scalar& c, int exponent) { return LocalElement(exponent, {c}); }
    static LocalElement t_power(int exponent) { return monomial(Scalar(1), exponent); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// kInfiniteValuation for zero.
    int valuation() const noexcept { return is_zero() ? kInfiniteValuation : order_; }
    int t_order() const noexcept { return order_; }
    /// Highest exponent present; -kInfiniteValuation for zero.
    int top_exponent() const noexcept {
        return is_zero() ? -kInfiniteValuation : order_ + static_cast<int>(coeffs_.size()) - 1;
    }
    const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }
    Scalar coeff(int exponent) const;
    Scalar lowest_coeff() const { return coeffs_.at(0); }
    bool is_monomial() const noexcept { return coeffs_.size() == 1; }
    Field field() const;

    LocalElement shifted(int d) const;
    /// Drops every term of exponent >= prec.
    LocalElement truncated(int prec) const;
    /// (terms with exponent < a, terms with exponent >= a).
    std::pair<LocalElement, LocalElement> split(int a) const;
    /// Inverse of a unit of R modulo t^width.
    LocalElement series_inverse(int width) const;
    /// Image under the ring map t -> u * s^e (s becoming the new variable).
    LocalElement substitute(int e, const Scalar& u) const;

    LocalElement operator-() const;
    LocalElement& operator+=(const LocalElement& o);
    LocalElement& operator-=(const LocalElement& o);
    friend LocalElement operator+(LocalElement a, const LocalElement& b) { return a += b; }
    friend LocalElement operator-(LocalElement a, const LocalElement& b) { return a -= b; }
    friend LocalElement operator*(const LocalElement& a, const LocalElement& b);
    friend LocalElement operator*(const Scalar& a, const LocalElement& b);
    friend bool operator==(const LocalElement& a, const LocalElement& b);

    /// Quotient of an exact division; throws std::domain_error if `b` does not divide `a`.
    friend LocalElement exact_divide(const LocalElement& a, const LocalElement& b);

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const LocalElement& x);

   private:
    void normalize();

    int order_ = 0;
    std::vector<Scalar> coeffs_;
};

using Vec = std::vector<LocalElement>;

}  // namespace parstack

#endif
