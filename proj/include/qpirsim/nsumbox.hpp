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

// Sum boxes: N transmitters each hold (x_n, x_{N+n}) and one qudit of a
// stabilizer state; the receiver gets y = M x. Algebraically, writing
// x = Gperp^T a + H^T b, the box returns b: anything in the row space of
// Gperp (just G for a maximal box) is invisible at the output.

#ifndef QPIRSIM_NSUMBOX_HPP
#define QPIRSIM_NSUMBOX_HPP

#include "qpirsim/symplectic.hpp"

namespace qpirsim::nsumbox {

using gf::Field;
using gf::Vec;
using linalg::Mat;

struct SumBox {
    Field field;
    size_t n = 0;      // transmitters
    size_t kappa = 0;  // output digits
    Mat m;             // kappa x 2N transfer matrix
    Mat g;             // kappa x 2N self-orthogonal generator
    Mat gperp;         // (2N - kappa) x 2N; equals g when kappa = N
    Mat h;             // kappa x 2N
};

// M = bottom N rows of (G^T H^T)^{-1}. Throws NotStronglySelfOrthogonal or
// NotCompleting.
SumBox build_maximal(const Mat& g, const Mat& h);
// M = bottom kappa rows of ((Gperp; H)^T)^{-1}. Throws NotSelfOrthogonal or
// NotCompleting if Gperp does not start with G, is not orthogonal to G, or
// the stack is singular.
SumBox build_kappa(const Mat& g, const Mat& gperp, const Mat& h);
// Completes G with symplectic::symplectic_complete.
SumBox build_completed(const Mat& g);

Vec apply(const SumBox& box, const Vec& x);

// Example-13 box: G = ((1,1,0,0),(0,0,1,1)), outputs (x1+x2, x3+x4).
SumBox two_sum_box();

// v_j = (u_j prod_{i != j} (a_j - a_i))^{-1}.
Vec qcsa_partner_multipliers(const Vec& points, const Vec& u);
// Maximal box on two QCSA blocks. For desired symbols d1, d2 (length L) and
// interference n1, n2 (length N - L) the input
//   x = ((d1; n1) Q_u | (d2; n2) Q_v)
// yields (d1, n1[ceil(N/2):], d2, n2[floor(N/2):]). Needs L <= floor(N/2).
SumBox qcsa_box(const Vec& points, const Vec& poles, const Vec& u);
// (2L, N) box on the same inputs returning only (d1, d2). Needs 2L <= N.
SumBox qcsa_symmetric_box(const Vec& points, const Vec& poles, const Vec& u);

// 2^m-transmitter box over F_2 from G_BRM(m,m) = (top; bottom):
// G = diag(top, top), H = diag(bottom, bottom). For x = (c1 G_BRM | c2 G_BRM)
// the output is (c1[N/2:], c2[N/2:]).
SumBox brm_box(int m);

}  // namespace qpirsim::nsumbox

#endif  // QPIRSIM_NSUMBOX_HPP
