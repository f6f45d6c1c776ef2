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

#ifndef PARSTACK_MATRIX_HPP
#define PARSTACK_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "parstack/local_element.hpp"

namespace parstack {

/// Dense column-major matrix over K. Columns are the natural unit: a lattice
/// basis is the list of its columns.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& columns);
    static Matrix diagonal(const Vec& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    LocalElement& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const LocalElement& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    Vec column(std::size_t j) const;
    std::vector<Vec> columns() const;
    void set_column(std::size_t j, const Vec& v);

    Matrix transpose() const;
    Matrix operator-() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vec operator*(const Matrix& a, const Vec& v);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    /// Entrywise image under t -> u s^e.
    Matrix substitute(int e, const Scalar& u) const;
    /// Minimum valuation over all entries (kInfiniteValuation if all vanish).
    int min_valuation() const;
    bool is_upper_triangular() const;

    std::string to_string() const;

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<LocalElement> data_;
};

/// Block diagonal assembly.
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Valuation of the determinant of a square matrix, computed by fraction-free
/// elimination over k[t]. Throws Error(SingularBasis) when the determinant vanishes.
int det_valuation(const Matrix& m);

/// Inverse of an upper triangular matrix whose diagonal entries are monomials.
Matrix triangular_inverse(const Matrix& upper);

}  // namespace parstack

#endif
