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

#include "parstack/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "parstack/errors.hpp"

namespace parstack {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LocalElement(1);
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    return m;
}

Matrix Matrix::diagonal(const Vec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Vec Matrix::column(std::size_t j) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(j * rows_),
               data_.begin() + static_cast<std::ptrdiff_t>((j + 1) * rows_));
}

std::vector<Vec> Matrix::columns() const {
    std::vector<Vec> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw Error(Errc::ShapeMismatch, "column length does not match matrix rows");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(j * rows_));
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::ShapeMismatch, "matrix product dimensions");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& bkj = b(k, j);
            if (bkj.is_zero()) continue;
            for (std::size_t i = 0; i < a.rows_; ++i)
                if (!a(i, k).is_zero()) c(i, j) += a(i, k) * bkj;
        }
    return c;
}

Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) throw Error(Errc::ShapeMismatch, "matrix-vector dimensions");
    Vec out(a.rows_);
    for (std::size_t k = 0; k < a.cols_; ++k) {
        if (v[k].is_zero()) continue;
        for (std::size_t i = 0; i < a.rows_; ++i)
            if (!a(i, k).is_zero()) out[i] += a(i, k) * v[k];
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::ShapeMismatch, "matrix sum dimensions");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

Matrix Matrix::substitute(int e, const Scalar& u) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x.substitute(e, u);
    return r;
}

int Matrix::min_valuation() const {
    int v = kInfiniteValuation;
    for (const auto& x : data_) v = std::min(v, x.valuation());
    return v;
}

bool Matrix::is_upper_triangular() const {
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = j + 1; i < rows_; ++i)
            if (!(*this)(i, j).is_zero()) return false;
    return true;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]\n";
    }
    return os.str();
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t i = 0; i < b.rows(); ++i) m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

int det_valuation(const Matrix& m) {
    if (!m.is_square()) throw Error(Errc::ShapeMismatch, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 0;
    // Bareiss over k[t] after clearing the common t-power of each column.
    int shift = 0;
    Matrix a = m;
    for (std::size_t j = 0; j < n; ++j) {
        int v = kInfiniteValuation;
        for (std::size_t i = 0; i < n; ++i) v = std::min(v, a(i, j).valuation());
        if (v == kInfiniteValuation) throw Error(Errc::SingularBasis, "zero column in basis");
        shift += v;
        for (std::size_t i = 0; i < n; ++i) a(i, j) = a(i, j).shifted(-v);
    }
    LocalElement prev(1);
    int sign_swaps = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a(p, k).is_zero()) ++p;
            if (p == n) throw Error(Errc::SingularBasis, "columns are linearly dependent over K");
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            ++sign_swaps;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = exact_divide(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    const auto& det = a(n - 1, n - 1);
    if (det.is_zero()) throw Error(Errc::SingularBasis, "columns are linearly dependent over K");
    return shift + det.valuation();
}

Matrix triangular_inverse(const Matrix& u) {
    const std::size_t n = u.rows();
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!u(i, i).is_monomial()) throw std::domain_error("triangular_inverse needs monomial diagonal");
    }
    // Solve U X = I column by column, bottom-up.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t ii = j + 1; ii-- > 0;) {
            LocalElement acc = ii == j ? LocalElement(1) : LocalElement();
            for (std::size_t k = ii + 1; k <= j; ++k)
                if (!u(ii, k).is_zero() && !inv(k, j).is_zero()) acc -= u(ii, k) * inv(k, j);
            const auto& d = u(ii, ii);
            inv(ii, j) = acc.is_zero() ? LocalElement()
                                       : d.lowest_coeff().inverse() * acc.shifted(-d.t_order());
        }
    }
    return inv;
}

}  // namespace parstack
