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

#include "qpirsim/symplectic.hpp"

namespace qpirsim::symplectic {

using namespace linalg;

Mat j_matrix(size_t n, Field f) {
    const uint32_t minus_one = f.neg(1);
    return Mat::generate(f, 2 * n, 2 * n, [&](size_t i, size_t j) {
        if (i < n && j == i + n) return FieldElem(f, minus_one);
        if (i >= n && j == i - n) return f.one();
        return f.zero();
    });
}

FieldElem symplectic_form(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() % 2) fail(Errc::DimensionMismatch, "symplectic vectors need equal even length");
    if (x.empty()) fail(Errc::DimensionMismatch, "empty symplectic vectors");
    const size_t n = x.size() / 2;
    FieldElem acc = x[0].field().zero();
    for (size_t i = 0; i < n; ++i) acc += x[i] * y[n + i] - x[n + i] * y[i];
    return acc;
}

FieldElem symplectic_inner(const Vec& x, const Vec& y) {
    FieldElem v = symplectic_form(x, y);
    return Field::make(v.field().p()).from_int(v.trace_value());
}

bool is_self_orthogonal(const Mat& g) {
    if (g.cols() % 2 || g.rows() > g.cols() / 2 || rank(g) != g.rows()) return false;
    return (g * j_matrix(g.cols() / 2, g.field()) * g.transpose()).is_zero();
}

bool is_symplectic(const Mat& f) {
    if (f.rows() != f.cols() || f.rows() % 2) return false;
    Mat j = j_matrix(f.rows() / 2, f.field());
    return f.transpose() * j * f == j;
}

Mat symplectic_inverse(const Mat& f) {
    if (!is_symplectic(f)) fail(Errc::NotSymplectic, "matrix is not symplectic");
    Mat j = j_matrix(f.rows() / 2, f.field());
    return j.transpose() * f.transpose() * j;
}

SelfOrthMat::SelfOrthMat(Mat g) : g_(std::move(g)) {
    if (!is_self_orthogonal(g_)) fail(Errc::NotSelfOrthogonal, "G J G^T != 0 or G not of full rank <= N");
}

Completion symplectic_complete(const SelfOrthMat& so) {
    const Mat& g = so.matrix();
    const Field f = so.field();
    const size_t n = so.half(), kappa = so.kappa();
    const Mat jt = j_matrix(n, f).transpose();

    // Gperp: G plus kernel vectors of G J until the rank reaches 2N - kappa.
    Mat gperp = g;
    Mat ker = right_kernel(g * j_matrix(n, f));
    for (size_t i = 0; i < ker.rows() && gperp.rows() < 2 * n - kappa; ++i) {
        Mat trial = vstack(gperp, ker.row_range(i, i + 1));
        if (rank(trial) == trial.rows()) gperp = trial;
    }
    const Mat extra = gperp.row_range(kappa, gperp.rows());

    // Each h solves C J^T h^T = rhs, i.e. h (C J^T)^T = rhs^T.
    Mat h(f, 0, 2 * n);
    for (size_t j = 0; j < kappa; ++j) {
        Mat constraints = vstack(vstack(g, extra), h);
        Vec rhs = zeros(f, constraints.rows());
        rhs[j] = f.one();
        auto sol = solve_left((constraints * jt).transpose(), rhs);
        if (!sol) fail(Errc::NotSelfOrthogonal, "completion system is inconsistent");
        h = vstack(h, Mat::from_rows(f, {*sol}, 2 * n));
    }
    return {gperp, h};
}

}  // namespace qpirsim::symplectic
