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

#include "parstack/random.hpp"

namespace parstack {

long Rng::uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

Scalar Rng::small_scalar(Field f) {
    const long num = uniform(-3, 3);
    if (f.is_rational() && uniform(0, 3) == 0) return Scalar(f, mpq_class(num, uniform(1, 3)));
    return Scalar(f, num);
}

Scalar Rng::nonzero_scalar(Field f) {
    for (;;) {
        Scalar s = small_scalar(f);
        if (!s.is_zero()) return s;
    }
}

std::pair<Matrix, Matrix> random_unimodular(std::size_t n, Field f, Rng& rng, int ops) {
    Matrix g = Matrix::identity(n), inv = Matrix::identity(n);
    if (n == 0) return {g, inv};
    if (ops < 0) ops = static_cast<int>(n) + 2;
    for (int k = 0; k < ops; ++k) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        const long kind = rng.uniform(0, 4);
        if (kind == 0 || n == 1) {
            // scale column i by a nonzero constant
            const Scalar c = rng.nonzero_scalar(f);
            for (std::size_t r = 0; r < n; ++r) {
                g(r, i) = c * g(r, i);
                inv(i, r) = c.inverse() * inv(i, r);
            }
            continue;
        }
        if (j == i) j = (i + 1) % n;
        // col_i += m * col_j on g; row_j -= m * row_i on the inverse
        const LocalElement m(0, {rng.small_scalar(f), rng.small_scalar(f)});
        for (std::size_t r = 0; r < n; ++r) {
            if (!g(r, j).is_zero()) g(r, i) += m * g(r, j);
            if (!inv(i, r).is_zero()) inv(j, r) -= m * inv(i, r);
        }
    }
    return {g, inv};
}

Lattice random_lattice(std::size_t n, Field f, Rng& rng, int max_exponent) {
    auto [g, ginv] = random_unimodular(n, f, rng);
    (void)ginv;
    Vec d(n);
    int lo = max_exponent, hi = -max_exponent;
    for (auto& x : d) {
        const int a = static_cast<int>(rng.uniform(-max_exponent, max_exponent));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        x = LocalElement::t_power(a);
    }
    // g is unimodular over R, so g R^n = R^n and the span sits between t^hi R^n and t^lo R^n
    return Lattice::from_generators((g * Matrix::diagonal(d)).columns(), n, hi);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Field f, Rng& rng, int lo, int hi) {
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) {
            const int o = static_cast<int>(rng.uniform(lo, hi));
            m(i, j) = LocalElement(o, {rng.small_scalar(f), rng.small_scalar(f)});
        }
    return m;
}

}  // namespace parstack
