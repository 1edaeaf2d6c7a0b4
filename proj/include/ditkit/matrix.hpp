// Copyright 2026 The ditkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DITKIT_MATRIX_HPP
#define DITKIT_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace ditkit {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for gate algebra (a few thousand
/// rows at most), not for large-scale linear algebra.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    const std::vector<Complex>& data() const { return data_; }

    Matrix operator*(const Matrix& other) const;
    Matrix adjoint() const;

    /// max |(U†U - I)_{jk}|; zero for a perfectly unitary matrix.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-10) const {
        return rows_ == cols_ && unitarity_defect() <= tol;
    }

    bool operator==(const Matrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);

/// max_{jk} |a_{jk} - b_{jk}|. Requires equal shapes.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Global-phase-insensitive distance: both matrices are normalized by the
/// phase of their largest-magnitude entry (first such entry in row-major
/// order), then compared entrywise.
double phase_aligned_distance(const Matrix& a, const Matrix& b);

} // namespace ditkit

#endif
