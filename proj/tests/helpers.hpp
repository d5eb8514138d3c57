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

// Random generators for property tests.

#ifndef QPIRSIM_TESTS_HELPERS_HPP
#define QPIRSIM_TESTS_HELPERS_HPP

#include <functional>

#include "qpirsim/nsumbox.hpp"
#include "qpirsim/rng.hpp"

namespace helpers {

using qpirsim::Rng;
using qpirsim::gf::Field;
using qpirsim::gf::Vec;
using qpirsim::linalg::Mat;

// Random self-orthogonal kappa x 2N matrix, grown one vector at a time from
// the symplectic complement of the rows chosen so far.
inline Mat random_self_orthogonal(Rng& rng, Field f, size_t n, size_t kappa) {
    using namespace qpirsim::linalg;
    Mat g(f, 0, 2 * n);
    while (g.rows() < kappa) {
        Vec v = rng.vec(f, 2 * n);
        if (g.rows()) {
            Mat ker = right_kernel(g * qpirsim::symplectic::j_matrix(n, f));
            v = mul(rng.vec(f, ker.rows()), ker);
        }
        Mat trial = vstack(g, Mat::from_rows(f, {v}, 2 * n));
        if (rank(trial) == trial.rows()) g = trial;
    }
    return g;
}

// A box on a random generator with a random (not completion-derived) H.
inline qpirsim::nsumbox::SumBox random_box(Rng& rng, Field f, size_t n, size_t kappa) {
    using namespace qpirsim::linalg;
    Mat g = random_self_orthogonal(rng, f, n, kappa);
    Mat gperp = qpirsim::symplectic::symplectic_complete(qpirsim::symplectic::SelfOrthMat(g)).gperp;
    for (;;) {
        Mat h = rng.mat(f, kappa, 2 * n);
        if (rank(vstack(gperp, h)) != 2 * n) continue;
        return kappa == n ? qpirsim::nsumbox::build_maximal(g, h) : qpirsim::nsumbox::build_kappa(g, gperp, h);
    }
}

// Calls fn on every vector of the row space of m (q^rows of them).
inline void for_each_in_row_space(const Mat& m, const std::function<void(const Vec&)>& fn) {
    using namespace qpirsim::linalg;
    const Field f = m.field();
    Vec coeffs = zeros(f, m.rows());
    for (;;) {
        fn(mul(coeffs, m));
        size_t i = 0;
        while (i < coeffs.size()) {
            uint32_t c = coeffs[i].code() + 1;
            if (c < f.q()) {
                coeffs[i] = f.elem(c);
                break;
            }
            coeffs[i] = f.zero();
            ++i;
        }
        if (i == coeffs.size()) return;
    }
}

}  // namespace helpers

#endif  // QPIRSIM_TESTS_HELPERS_HPP
