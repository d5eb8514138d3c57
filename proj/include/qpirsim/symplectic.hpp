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

// Symplectic geometry on F_q^{2N}. A vector is (x-part | z-part), each of
// length N, matching the Weyl operator W(x_1, z_1) (x) ... (x) W(x_N, z_N).
//
// Generators are kept as ROWS. A symplectic matrix in the column sense
// (F^T J F = J) is the transpose of a row stack S with S J S^T = J.

#ifndef QPIRSIM_SYMPLECTIC_HPP
#define QPIRSIM_SYMPLECTIC_HPP

#include "qpirsim/linalg.hpp"

namespace qpirsim::symplectic {

using gf::Field;
using gf::FieldElem;
using gf::Vec;
using linalg::Mat;

// [[0, -I], [I, 0]].
Mat j_matrix(size_t n, Field f);

// x J^T y^T = x_x . y_z - x_z . y_x, in the field itself.
FieldElem symplectic_form(const Vec& x, const Vec& y);
// Trace of symplectic_form, as an element of the prime field.
FieldElem symplectic_inner(const Vec& x, const Vec& y);

// Full row rank, at most N rows, and G J G^T = 0.
bool is_self_orthogonal(const Mat& g);
bool is_symplectic(const Mat& f);
// J^T F^T J; throws NotSymplectic.
Mat symplectic_inverse(const Mat& f);

class SelfOrthMat {
  public:
    // Throws NotSelfOrthogonal.
    explicit SelfOrthMat(Mat g);

    const Mat& matrix() const { return g_; }
    Field field() const { return g_.field(); }
    size_t half() const { return g_.cols() / 2; }
    size_t kappa() const { return g_.rows(); }
    bool strongly() const { return kappa() == half(); }

  private:
    Mat g_;
};

struct Completion {
    Mat gperp;  // (2N - kappa) x 2N, top kappa rows are G
    Mat h;      // kappa x 2N
};

// Gperp extends G by the first kernel vectors of G J (in rref order) that
// raise the rank. Row h_j pairs with g_j (g_j J h_j^T = -1), is orthogonal to
// the other rows of Gperp, and to the earlier h rows.
Completion symplectic_complete(const SelfOrthMat& g);

}  // namespace qpirsim::symplectic

#endif  // QPIRSIM_SYMPLECTIC_HPP
