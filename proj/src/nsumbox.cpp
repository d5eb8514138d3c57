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

#include "qpirsim/nsumbox.hpp"

#include "qpirsim/codes.hpp"

namespace qpirsim::nsumbox {

using namespace linalg;
using symplectic::j_matrix;

namespace {

Mat bottom_rows_of_inverse(const Mat& stacked, size_t kappa) {
    if (rank(stacked) != stacked.rows()) fail(Errc::NotCompleting, "(Gperp; H) is singular");
    Mat inv = inverse(stacked.transpose());
    return inv.row_range(inv.rows() - kappa, inv.rows());
}

// x-part and z-part placement of an N-column block.
Mat as_x(const Mat& a) { return hstack(a, Mat(a.field(), a.rows(), a.cols())); }
Mat as_z(const Mat& a) { return hstack(Mat(a.field(), a.rows(), a.cols()), a); }

struct QcsaBlocks {
    Mat cauchy_u, vand_u, cauchy_v, vand_v;
};

QcsaBlocks qcsa_blocks(const Vec& points, const Vec& poles, const Vec& u) {
    const size_t n = points.size(), l = poles.size();
    if (l >= n) fail(Errc::BadParameters, "need fewer poles than points");
    Vec v = qcsa_partner_multipliers(points, u);
    Mat qu = codes::qcsa(points, poles, u, n - l).generator();
    Mat qv = codes::qcsa(points, poles, v, n - l).generator();
    return {qu.row_range(0, l), qu.row_range(l, n), qv.row_range(0, l), qv.row_range(l, n)};
}

}  // namespace

SumBox build_maximal(const Mat& g, const Mat& h) {
    if (g.cols() % 2 || g.rows() != g.cols() / 2 || !symplectic::is_self_orthogonal(g))
        fail(Errc::NotStronglySelfOrthogonal, "G must be N x 2N with G J G^T = 0 and full rank");
    if (h.rows() != g.rows() || h.cols() != g.cols()) fail(Errc::NotCompleting, "H must have the shape of G");
    const size_t n = g.rows();
    return {g.field(), n, n, bottom_rows_of_inverse(vstack(g, h), n), g, g, h};
}

SumBox build_kappa(const Mat& g, const Mat& gperp, const Mat& h) {
    if (!symplectic::is_self_orthogonal(g)) fail(Errc::NotSelfOrthogonal, "G J G^T != 0");
    const size_t n = g.cols() / 2, kappa = g.rows();
    if (gperp.rows() != 2 * n - kappa || gperp.cols() != 2 * n || h.rows() != kappa || h.cols() != 2 * n)
        fail(Errc::NotCompleting, "Gperp or H has the wrong shape");
    if (!(gperp.row_range(0, kappa) == g)) fail(Errc::NotCompleting, "Gperp must start with G");
    if (!(g * j_matrix(n, g.field()) * gperp.transpose()).is_zero())
        fail(Errc::NotCompleting, "Gperp is not symplectically orthogonal to G");
    return {g.field(), n, kappa, bottom_rows_of_inverse(vstack(gperp, h), kappa), g, gperp, h};
}

SumBox build_completed(const Mat& g) {
    auto c = symplectic::symplectic_complete(symplectic::SelfOrthMat(g));
    if (g.rows() == g.cols() / 2) return build_maximal(g, c.h);
    return build_kappa(g, c.gperp, c.h);
}

Vec apply(const SumBox& box, const Vec& x) {
    if (x.size() != 2 * box.n) fail(Errc::DimensionMismatch, "sum box input must have length 2N");
    return mul(box.m, x);
}

SumBox two_sum_box() {
    Field f2 = Field::make(2);
    return build_maximal(Mat::from_ints(f2, 2, 4, {1, 1, 0, 0, 0, 0, 1, 1}),
                         Mat::from_ints(f2, 2, 4, {1, 0, 0, 0, 0, 0, 0, 1}));
}

Vec qcsa_partner_multipliers(const Vec& points, const Vec& u) {
    if (u.size() != points.size()) fail(Errc::LengthMismatch, "one multiplier per point");
    for (const auto& x : u)
        if (x.is_zero()) fail(Errc::DegenerateMultipliers, "zero multiplier");
    return codes::grs_dual_multipliers(points, u);
}

SumBox qcsa_box(const Vec& points, const Vec& poles, const Vec& u) {
    const size_t n = points.size(), l = poles.size();
    if (l > n / 2) fail(Errc::BadParameters, "maximal QCSA box needs L <= floor(N/2)");
    QcsaBlocks b = qcsa_blocks(points, poles, u);
    const size_t up = (n + 1) / 2, down = n / 2;
    Mat g = vstack(as_x(b.vand_u.row_range(0, up)), as_z(b.vand_v.row_range(0, down)));
    Mat h = vstack(vstack(as_x(b.cauchy_u), as_x(b.vand_u.row_range(up, n - l))),
                   vstack(as_z(b.cauchy_v), as_z(b.vand_v.row_range(down, n - l))));
    return build_maximal(g, h);
}

SumBox qcsa_symmetric_box(const Vec& points, const Vec& poles, const Vec& u) {
    const size_t n = points.size(), l = poles.size();
    if (2 * l > n) fail(Errc::BadParameters, "symmetric QCSA box needs 2L <= N");
    QcsaBlocks b = qcsa_blocks(points, poles, u);
    Mat g = vstack(as_x(b.vand_u.row_range(0, l)), as_z(b.vand_v.row_range(0, l)));
    Mat gperp = vstack(g, vstack(as_x(b.vand_u.row_range(l, n - l)), as_z(b.vand_v.row_range(l, n - l))));
    Mat h = vstack(as_x(b.cauchy_u), as_z(b.cauchy_v));
    return build_kappa(g, gperp, h);
}

SumBox brm_box(int m) {
    if (m < 1) fail(Errc::BadParameters, "brm_box needs m >= 1");
    Mat full = codes::brm_full(m);
    const size_t half = full.rows() / 2;
    Mat top = full.row_range(0, half), bottom = full.row_range(half, full.rows());
    return build_maximal(block_diag(top, top), block_diag(bottom, bottom));
}

}  // namespace qpirsim::nsumbox
