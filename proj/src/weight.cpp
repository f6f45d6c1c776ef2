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


#include "parstack/weight.hpp"

#include <numeric>
#include <sstream>

#include "parstack/errors.hpp"

namespace parstack {

Weight::Weight(long a, long s) {
    if (s <= 0 || a < 0 || a >= s)
        throw Error(Errc::InadmissibleWeight, std::to_string(a) + "/" + std::to_string(s) + " is not in [0,1)");
    const long g = std::gcd(a, s);
    a_ = a / g;
    s_ = s / g;
}

Weight Weight::fractional_part(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    const mpq_class frac = q - mpq_class(fl);
    return Weight(frac.get_num().get_si(), frac.get_den().get_si());
}

long Weight::over(long r) const {
    if (r <= 0 || r % s_ != 0)
        throw Error(Errc::InadmissibleWeight, to_string() + " has no numerator over " + std::to_string(r));
    return a_ * (r / s_);
}

std::string Weight::to_string() const { return a_ == 0 ? "0" : std::to_string(a_) + "/" + std::to_string(s_); }

std::string to_string(const WeightMultiset& w) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, m] : w) {
        os << (first ? "" : ", ") << k.to_string() << "^" << m;
        first = false;
    }
    os << "}";
    return os.str();
}

}  // namespace parstack
