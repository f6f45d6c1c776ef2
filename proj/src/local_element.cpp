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

#include "parstack/local_element.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace parstack {

LocalElement::LocalElement(int order, std::vector<Scalar> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    normalize();
}

void LocalElement::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        order_ += static_cast<int>(lead);
    }
    if (coeffs_.empty()) order_ = 0;
}

Scalar LocalElement::coeff(int exponent) const {
    const long i = static_cast<long>(exponent) - order_;
    if (i < 0 || i >= static_cast<long>(coeffs_.size())) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

Field LocalElement::field() const {
    for (const auto& c : coeffs_)
        if (c.modulus()) return c.field();
    return Field::rational();
}

LocalElement LocalElement::shifted(int d) const {
    LocalElement r = *this;
    if (!r.is_zero()) r.order_ += d;
    return r;
}

LocalElement LocalElement::truncated(int prec) const {
    if (is_zero() || top_exponent() < prec) return *this;
    if (order_ >= prec) return {};
    return LocalElement(order_, std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + (prec - order_)));
}

std::pair<LocalElement, LocalElement> LocalElement::split(int a) const {
    if (is_zero()) return {};
    if (top_exponent() < a) return {*this, {}};
    if (order_ >= a) return {{}, *this};
    const auto cut = coeffs_.begin() + (a - order_);
    return {LocalElement(order_, std::vector<Scalar>(coeffs_.begin(), cut)),
            LocalElement(a, std::vector<Scalar>(cut, coeffs_.end()))};
}

LocalElement LocalElement::series_inverse(int width) const {
    if (is_zero() || order_ != 0) throw std::domain_error("series_inverse of a non-unit " + to_string());
    if (width <= 0) return {};
    const Scalar c0inv = coeffs_[0].inverse();
    std::vector<Scalar> inv(static_cast<std::size_t>(width));
    inv[0] = c0inv;
    for (int k = 1; k < width; ++k) {
        Scalar acc(0);
        const int lim = std::min<int>(k, static_cast<int>(coeffs_.size()) - 1);
        for (int i = 1; i <= lim; ++i) acc += coeffs_[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
        inv[static_cast<std::size_t>(k)] = -(acc * c0inv);
    }
    return LocalElement(0, std::move(inv));
}

LocalElement LocalElement::substitute(int e, const Scalar& u) const {
    if (is_zero()) return {};
    const int lo = order_ * e;
    std::vector<Scalar> out(static_cast<std::size_t>((static_cast<int>(coeffs_.size()) - 1) * e + 1), Scalar(0));
    // u^order_ may be a negative power
    Scalar upow(1);
    const Scalar ubase = order_ >= 0 ? u : u.inverse();
    for (int k = 0; k < std::abs(order_); ++k) upow *= ubase;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i * static_cast<std::size_t>(e)] = coeffs_[i] * upow;
        upow *= u;
    }
    return LocalElement(lo, std::move(out));
}

LocalElement LocalElement::operator-() const {
    LocalElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LocalElement& LocalElement::operator+=(const LocalElement& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(order_, o.order_);
    const int hi = std::max(top_exponent(), o.top_exponent());
    std::vector<Scalar> out(static_cast<std::size_t>(hi - lo + 1), Scalar(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[static_cast<std::size_t>(order_ - lo) + i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[static_cast<std::size_t>(o.order_ - lo) + i] += o.coeffs_[i];
    order_ = lo;
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

LocalElement& LocalElement::operator-=(const LocalElement& o) { return *this += -o; }

LocalElement operator*(const LocalElement& a, const LocalElement& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return LocalElement(a.order_ + b.order_, std::move(out));
}

LocalElement operator*(const Scalar& a, const LocalElement& b) {
    if (a.is_zero()) return {};
    LocalElement r = b;
    for (auto& c : r.coeffs_) c = a * c;
    r.normalize();
    return r;
}

bool operator==(const LocalElement& a, const LocalElement& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

LocalElement exact_divide(const LocalElement& a, const LocalElement& b) {
    if (b.is_zero()) throw std::domain_error("division by zero local element");
    if (a.is_zero()) return {};
    std::vector<Scalar> rem = a.coeffs_;
    const auto& den = b.coeffs_;
    if (rem.size() < den.size()) throw std::domain_error("inexact division " + a.to_string() + " / " + b.to_string());
    const std::size_t qdeg = rem.size() - den.size();
    std::vector<Scalar> quot(qdeg + 1, Scalar(0));
    const Scalar lead_inv = den.back().inverse();
    for (std::size_t k = qdeg + 1; k-- > 0;) {
        const Scalar q = rem[k + den.size() - 1] * lead_inv;
        quot[k] = q;
        if (q.is_zero()) continue;
        for (std::size_t i = 0; i < den.size(); ++i) rem[k + i] -= q * den[i];
    }
    for (const auto& r : rem)
        if (!r.is_zero()) throw std::domain_error("inexact division " + a.to_string() + " / " + b.to_string());
    return LocalElement(a.order_ - b.order_, std::move(quot));
}

std::string LocalElement::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        const int exp = order_ + static_cast<int>(i);
        std::string c = coeffs_[i].to_string();
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c.erase(0, 1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << '-';
        first = false;
        if (exp == 0) {
            os << c;
            continue;
        }
        if (c != "1") os << c << '*';
        os << 't';
        if (exp != 1) os << '^' << exp;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LocalElement& x) { return os << x.to_string(); }

}  // namespace parstack
