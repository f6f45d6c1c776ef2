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


#ifndef PARSTACK_WEIGHT_HPP
#define PARSTACK_WEIGHT_HPP

#include <compare>
#include <map>
#include <string>

#include <gmpxx.h>

namespace parstack {

/// A parabolic weight a/s in [0, 1), kept in lowest terms.
class Weight {
   public:
    Weight() = default;
    /// Throws Error(InadmissibleWeight) unless s > 0 and 0 <= a < s.
    Weight(long a, long s);
    /// Fractional part of an arbitrary rational.
    static Weight fractional_part(const mpq_class& q);

    long numerator() const noexcept { return a_; }
    long denominator() const noexcept { return s_; }
    mpq_class value() const { return mpq_class(a_, s_); }
    /// Numerator over the denominator `r`, which must be a multiple of denominator().
    long over(long r) const;

    friend bool operator==(const Weight&, const Weight&) = default;
    friend std::strong_ordering operator<=>(const Weight& x, const Weight& y) {
        return x.a_ * y.s_ <=> y.a_ * x.s_;
    }
    std::string to_string() const;

   private:
    long a_ = 0, s_ = 1;
};

/// Weight -> multiplicity; zero multiplicities are never stored.
using WeightMultiset = std::map<Weight, long>;

std::string to_string(const WeightMultiset& w);

}  // namespace parstack

#endif
