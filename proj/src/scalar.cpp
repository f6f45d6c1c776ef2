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

#include "parstack/scalar.hpp"

#include <ostream>
#include <sstream>

#include "parstack/errors.hpp"

namespace parstack {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::SingularBasis: return "SingularBasis";
        case Errc::AmbientMismatch: return "AmbientMismatch";
        case Errc::NotContained: return "NotContained";
        case Errc::InvalidChain: return "InvalidChain";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::InvalidGrading: return "InvalidGrading";
        case Errc::ProfileMismatch: return "ProfileMismatch";
        case Errc::InadmissibleProfile: return "InadmissibleProfile";
        case Errc::InadmissibleWeight: return "InadmissibleWeight";
        case Errc::NotAPairing: return "NotAPairing";
        case Errc::ValueLineMismatch: return "ValueLineMismatch";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    // residues are multiplied in 64-bit, so p must stay below 2^31
    if (!is_prime(p) || p >= (1u << 31))
        throw Error(Errc::FieldMismatch, "characteristic " + std::to_string(p) + " is not a supported prime");
    return Field{p};
}

std::string Field::name() const { return p == 0 ? "rational" : "prime:" + std::to_string(p); }

Field Field::parse(std::string_view text) {
    if (text == "rational" || text == "Q") return rational();
    if (text == "prime") return prime(101);
    if (text.substr(0, 6) == "prime:") {
        try {
            return prime(static_cast<std::uint32_t>(std::stoul(std::string(text.substr(6)))));
        } catch (const std::logic_error&) {
        }
    }
    throw Error(Errc::ParseError, "unknown field '" + std::string(text) + "' (expected rational or prime:p)");
}

std::int64_t Scalar::reduce(const mpq_class& q, std::uint32_t p) {
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw Error(Errc::FieldMismatch, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
    std::int64_t n = num.get_si(), d = den.get_si();
    return n * pow_mod(d, p - 2, p) % p;
}

Scalar::Scalar(Field f, long v) : p_(f.p) {
    if (p_) {
        r_ = v % static_cast<long>(p_);
        if (r_ < 0) r_ += p_;
    } else {
        q_ = v;
    }
}

Scalar::Scalar(Field f, const mpq_class& q) : p_(f.p) {
    if (p_)
        r_ = reduce(q, p_);
    else {
        q_ = q;
        q_.canonicalize();
    }
}

Scalar Scalar::parse(std::string_view text, Field f) {
    mpq_class q;
    std::string s(text);
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw Error(Errc::ParseError, "not an exact number: '" + s + "'");
    q.canonicalize();
    return Scalar(f, q);
}

Scalar Scalar::in(Field f) const {
    if (f.p == p_) return *this;
    if (p_ != 0) throw Error(Errc::FieldMismatch, "cannot move an F_" + std::to_string(p_) + " value to " + f.name());
    return Scalar(f, q_);
}

void Scalar::unify(Scalar& o) {
    if (p_ == o.p_) return;
    if (p_ == 0) {
        r_ = reduce(q_, o.p_);
        p_ = o.p_;
        q_ = 0;
    } else if (o.p_ == 0) {
        o = o.in(Field{p_});
    } else {
        throw Error(Errc::FieldMismatch, "mixing F_" + std::to_string(p_) + " and F_" + std::to_string(o.p_));
    }
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    Scalar r = *this;
    if (p_)
        r.r_ = pow_mod(r_, p_ - 2, p_);
    else
        r.q_ = 1 / q_;
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (p_)
        r.r_ = r_ == 0 ? 0 : p_ - r_;
    else
        r.q_ = -q_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (p_ == o.p_) {
        if (p_) {
            r_ += o.r_;
            if (r_ >= p_) r_ -= p_;
        } else {
            q_ += o.q_;
        }
        return *this;
    }
    Scalar b = o;
    unify(b);
    return *this += b;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (p_ == o.p_) {
        if (p_)
            r_ = r_ * o.r_ % p_;
        else
            q_ *= o.q_;
        return *this;
    }
    Scalar b = o;
    unify(b);
    return *this *= b;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
    Scalar x = a, y = b;
    x.unify(y);
    return x == y;
}

std::string Scalar::to_string() const { return p_ ? std::to_string(r_) : q_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace parstack
