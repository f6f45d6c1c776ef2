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

#ifndef PARSTACK_RANDOM_HPP
#define PARSTACK_RANDOM_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "parstack/lattice.hpp"

namespace parstack {

/// Seeded generator with a platform-independent bounded draw.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    bool coin() { return uniform(0, 1) == 1; }
    /// Nonzero scalar with small numerator (and denominator for Q).
    Scalar nonzero_scalar(Field f);
    Scalar small_scalar(Field f);
    std::uint64_t next() { return engine_(); }

   private:
    std::mt19937_64 engine_;
};

/// A random g in SL_n(k[t]) together with its inverse, built from elementary
/// column operations with polynomial multipliers of degree <= 1.
std::pair<Matrix, Matrix> random_unimodular(std::size_t n, Field f, Rng& rng, int ops = -1);

/// g * diag(t^{a_i}) R^n with |a_i| <= max_exponent.
Lattice random_lattice(std::size_t n, Field f, Rng& rng, int max_exponent = 2);

/// A random n x m matrix with small Laurent entries of t-order in [lo, hi].
Matrix random_matrix(std::size_t rows, std::size_t cols, Field f, Rng& rng, int lo, int hi);

}  // namespace parstack

#endif
