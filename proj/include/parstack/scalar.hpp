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

#ifndef PARSTACK_SCALAR_HPP
#define PARSTACK_SCALAR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace parstack {

/// Ground field descriptor. `p == 0` is the rationals, otherwise the prime
/// field of characteristic p.
struct Field {
    std::uint32_t p = 0;

    static Field rational() { return {}; }
    static Field prime(std::uint32_t p);
    bool is_rational() const noexcept { return p == 0; }
    std::string name() const;
    static Field parse(std::string_view text);
    friend bool operator==(const Field&, const Field&) = default;
};

/// An element of Q or F_p. A rational-field value is a universal constant:
/// combining it with an F_p value reduces it mod p first.
class Scalar {
   public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(int v) : q_(v) {}
    explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    Scalar(Field f, long v);
    Scalar(Field f, const mpq_class& q);

    static Scalar parse(std::string_view text, Field f);

    std::uint32_t modulus() const noexcept { return p_; }
    Field field() const noexcept { return Field{p_}; }
    bool is_zero() const noexcept { return p_ ? r_ == 0 : sgn(q_) == 0; }
    bool is_one() const noexcept { return p_ ? r_ == 1 : q_ == 1; }

    Scalar inverse() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// "a/b" or "a"; residues print as their least non-negative representative.
    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

    /// Re-expresses this value in field `f` (identity when already there).
    Scalar in(Field f) const;

   private:
    void unify(Scalar& other);
    static std::int64_t reduce(const mpq_class& q, std::uint32_t p);

    std::uint32_t p_ = 0;
    std::int64_t r_ = 0;  // residue, used when p_ != 0
    mpq_class q_;         // value, used when p_ == 0
};

}  // namespace parstack

#endif
