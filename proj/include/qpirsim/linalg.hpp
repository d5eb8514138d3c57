// Copyright 2026 The qpirsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense exact matrices over a gf::Field. Values are immutable: every
// operation returns a new matrix.

#ifndef QPIRSIM_LINALG_HPP
#define QPIRSIM_LINALG_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpirsim/gf.hpp"

namespace qpirsim::linalg {

using gf::Field;
using gf::FieldElem;
using gf::Vec;

class Mat {
  public:
    Mat() = default;
    Mat(Field f, size_t rows, size_t cols);

    static Mat identity(Field f, size_t n);
    static Mat from_codes(Field f, size_t rows, size_t cols, std::vector<uint32_t> codes);
    // Integers are mapped through Z -> F_p; convenient for prime-field fixtures.
    static Mat from_ints(Field f, size_t rows, size_t cols, const std::vector<long>& values);
    static Mat from_rows(Field f, const std::vector<Vec>& rows, size_t cols);
    static Mat from_rows(const std::vector<Vec>& rows);
    template <class Fn>
    static Mat generate(Field f, size_t rows, size_t cols, Fn fn) {
        std::vector<uint32_t> codes(rows * cols);
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) codes[i * cols + j] = FieldElem(fn(i, j)).code();
        }
        return from_codes(f, rows, cols, std::move(codes));
    }

    Field field() const { return f_; }
    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    FieldElem at(size_t i, size_t j) const { return FieldElem(f_, d_[i * c_ + j]); }
    uint32_t code(size_t i, size_t j) const { return d_[i * c_ + j]; }
    const std::vector<uint32_t>& codes() const { return d_; }
    Vec row(size_t i) const;
    Vec col(size_t j) const;

    Mat transpose() const;
    Mat select_rows(const std::vector<size_t>& idx) const;
    Mat select_cols(const std::vector<size_t>& idx) const;
    Mat row_range(size_t begin, size_t end) const;
    Mat col_range(size_t begin, size_t end) const;
    Mat scaled(const FieldElem& s) const;
    Mat with_entry(size_t i, size_t j, const FieldElem& v) const;

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    bool is_zero() const;
    bool is_identity() const;
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.f_ == b.f_ && a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }

    // "rows cols fieldspec" then one line per row of space-separated entries.
    std::string to_text() const;
    static Mat from_text(std::string_view text);

  private:
    Field f_;
    size_t r_ = 0, c_ = 0;
    std::vector<uint32_t> d_;
};

std::ostream& operator<<(std::ostream& os, const Mat& m);

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);
Mat diag(Field f, const Vec& v);

// Row vector times matrix, and matrix times column vector.
Vec mul(const Vec& x, const Mat& m);
Vec mul(const Mat& m, const Vec& x);
FieldElem dot(const Vec& a, const Vec& b);
Vec hadamard(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const FieldElem& s);
Vec zeros(Field f, size_t n);
Vec ones(Field f, size_t n);
Vec unit(Field f, size_t n, size_t i);
size_t weight(const Vec& a);

struct Rref {
    Mat reduced;
    std::vector<size_t> pivots;
};

Rref rref(const Mat& m);
size_t rank(const Mat& m);
// Throws Singular unless m is square of full rank.
Mat inverse(const Mat& m);
// Rows span {x : m x^T = 0}.
Mat right_kernel(const Mat& m);
// Nonzero rows of rref(m).
Mat row_basis(const Mat& m);
bool row_space_equal(const Mat& a, const Mat& b);
bool row_space_contains(const Mat& big, const Mat& small);
// Some x with x * m = b, or nullopt.
std::optional<Vec> solve_left(const Mat& m, const Vec& b);

// Entry (i,j) = points[j]^i for i < k.
Mat vandermonde(const Vec& points, size_t k);
// |F| Cauchy rows 1/(f_i - a_j) over k Vandermonde rows.
Mat cauchy_vandermonde(const Vec& a, const Vec& f, size_t k);

}  // namespace qpirsim::linalg

#endif  // QPIRSIM_LINALG_HPP
