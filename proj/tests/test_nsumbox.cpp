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

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "helpers.hpp"
#include "qpirsim/codes.hpp"

using namespace qpirsim;
using namespace qpirsim::linalg;
using namespace qpirsim::nsumbox;

namespace {

Errc error_of(auto fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::OutOfRange;
}

Vec ints(const Field& f, std::vector<long> v) {
    Vec out;
    for (long x : v) out.push_back(f.from_int(x));
    return out;
}

void check_invariants(const SumBox& box) {
    EXPECT_EQ(rank(box.m), box.kappa);
    EXPECT_LE(box.kappa, box.n);
    EXPECT_TRUE((box.m * box.gperp.transpose()).is_zero());
    EXPECT_TRUE((box.m * box.h.transpose()).is_identity());
}

}  // namespace

TEST(nsumbox, two_sum_box) {
    SumBox b = two_sum_box();
    Field f2 = Field::make(2);
    EXPECT_EQ(b.m, Mat::from_ints(f2, 2, 4, {1, 1, 0, 0, 0, 0, 1, 1}));
    EXPECT_EQ(nsumbox::apply(b, ints(f2, {1, 0, 1, 1})), ints(f2, {1, 0}));
    EXPECT_EQ(nsumbox::apply(b, zeros(f2, 4)), zeros(f2, 2));
    for (size_t i = 0; i < 2; ++i) EXPECT_EQ(nsumbox::apply(b, b.h.row(i)), unit(f2, 2, i));
    check_invariants(b);
    EXPECT_EQ(error_of([&] { nsumbox::apply(b, zeros(f2, 3)); }), Errc::DimensionMismatch);
}

TEST(nsumbox, single_transmitter) {
    Field f2 = Field::make(2);
    SumBox b = build_maximal(Mat::from_ints(f2, 1, 2, {1, 0}), Mat::from_ints(f2, 1, 2, {0, 1}));
    EXPECT_EQ(b.m, Mat::from_ints(f2, 1, 2, {0, 1}));
}

TEST(nsumbox, example14_kappa_box) {
    Field f2 = Field::make(2);
    Mat g = Mat::from_ints(f2, 1, 4, {1, 1, 0, 0});
    Mat gperp = Mat::from_ints(f2, 3, 4, {1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0});
    Mat h = Mat::from_ints(f2, 1, 4, {0, 0, 0, 1});
    SumBox b = build_kappa(g, gperp, h);
    for (auto x : f2.elements())
        for (auto y : f2.elements())
            for (auto z : f2.elements())
                for (auto w : f2.elements()) EXPECT_EQ(nsumbox::apply(b, Vec{x, y, z, w}), Vec{z + w});
    check_invariants(b);
    // kappa = N through build_kappa agrees with build_maximal.
    SumBox two = two_sum_box();
    EXPECT_EQ(build_kappa(two.g, two.g, two.h).m, two.m);
}

TEST(nsumbox, construction_errors) {
    Field f2 = Field::make(2);
    Mat g = Mat::from_ints(f2, 2, 4, {1, 1, 0, 0, 0, 0, 1, 1});
    EXPECT_EQ(error_of([&] { build_maximal(Mat::from_ints(f2, 2, 4, {1, 0, 0, 0, 0, 0, 1, 0}), g); }),
              Errc::NotStronglySelfOrthogonal);
    EXPECT_EQ(error_of([&] { build_maximal(g, g); }), Errc::NotCompleting);
    EXPECT_EQ(error_of([] { qcsa_partner_multipliers(Vec{Field::make(7).one()}, Vec{Field::make(7).zero()}); }),
              Errc::DegenerateMultipliers);
}

TEST(nsumbox, random_boxes_and_shift_invariance) {
    Rng rng(2024);
    for (Field f : {Field::make(2), Field::make(3), Field::make(7)}) {
        for (int trial = 0; trial < 60; ++trial) {
            size_t n = 1 + rng.below(3), kappa = 1 + rng.below(n);
            SumBox b = helpers::random_box(rng, f, n, kappa);
            check_invariants(b);
            Vec x = rng.vec(f, 2 * n), y = nsumbox::apply(b, x);
            if (f.q() <= 3) {
                helpers::for_each_in_row_space(b.gperp, [&](const Vec& s) { EXPECT_EQ(nsumbox::apply(b, add(x, s)), y); });
            } else {
                for (int i = 0; i < 20; ++i)
                    EXPECT_EQ(nsumbox::apply(b, add(x, mul(rng.vec(f, b.gperp.rows()), b.gperp))), y);
            }
        }
    }
}

TEST(nsumbox, completed_boxes) {
    Rng rng(9);
    Field f3 = Field::make(3);
    // kappa = 2, N = 3 over F_3: every shift by Gperp (3^4 of them) is invisible.
    for (int trial = 0; trial < 10; ++trial) {
        SumBox b = build_completed(helpers::random_self_orthogonal(rng, f3, 3, 2));
        check_invariants(b);
        Vec x = rng.vec(f3, 6), y = nsumbox::apply(b, x);
        int count = 0;
        helpers::for_each_in_row_space(b.gperp, [&](const Vec& s) {
            EXPECT_EQ(nsumbox::apply(b, add(x, s)), y);
            ++count;
        });
        EXPECT_EQ(count, 81);
    }
}

TEST(nsumbox, qcsa_box_matches_formula) {
    Field f7 = Field::make(7);
    Vec a = ints(f7, {1, 2, 3, 4}), poles = ints(f7, {5}), u = ones(f7, 4);
    Vec v = qcsa_partner_multipliers(a, u);
    Mat gu = codes::grs(a, u, 2).generator(), gv = codes::grs(a, v, 2).generator();
    EXPECT_TRUE((gu * gv.transpose()).is_zero());
    SumBox b = qcsa_box(a, poles, u);
    check_invariants(b);
    EXPECT_TRUE((b.m * b.g.transpose()).is_zero());

    // Literal form: selector times inverse of diag(Q_u^T, Q_v^T).
    Mat qu = codes::qcsa(a, poles, u, 3).generator(), qv = codes::qcsa(a, poles, v, 3).generator();
    Mat blocks = inverse(block_diag(qu.transpose(), qv.transpose()));
    // Kept coordinates of (s_u | s_v): Cauchy (0), the tail past ceil(N/2) Vandermonde rows (3), and the same for v.
    EXPECT_EQ(b.m, blocks.select_rows({0, 3, 4, 7}));

    // Desired and interference symbols come out as documented.
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        Vec s1 = rng.vec(f7, 4), s2 = rng.vec(f7, 4);
        Vec x = mul(s1, qu);
        Vec xz = mul(s2, qv);
        x.insert(x.end(), xz.begin(), xz.end());
        EXPECT_EQ(nsumbox::apply(b, x), (Vec{s1[0], s1[3], s2[0], s2[3]}));
    }
}

TEST(nsumbox, qcsa_symmetric_and_odd) {
    Field f11 = Field::make(11);
    Vec a = ints(f11, {1, 2, 3, 4, 5, 6}), poles = ints(f11, {7, 8, 9}), u = ints(f11, {1, 2, 3, 4, 5, 6});
    SumBox sym = qcsa_symmetric_box(a, poles, u);
    check_invariants(sym);
    EXPECT_EQ(sym.kappa, 6u);
    Mat qu = codes::qcsa(a, poles, u, 3).generator();
    Mat qv = codes::qcsa(a, poles, qcsa_partner_multipliers(a, u), 3).generator();
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        Vec s1 = rng.vec(f11, 6), s2 = rng.vec(f11, 6);
        Vec x = mul(s1, qu), xz = mul(s2, qv);
        x.insert(x.end(), xz.begin(), xz.end());
        EXPECT_EQ(nsumbox::apply(sym, x), (Vec{s1[0], s1[1], s1[2], s2[0], s2[1], s2[2]}));
    }
    // Odd N: rows split ceil/floor; only the invariants are pinned.
    SumBox odd = qcsa_box(ints(f11, {1, 2, 3, 4, 5}), ints(f11, {6, 7}), ones(f11, 5));
    check_invariants(odd);
    EXPECT_EQ(odd.n, 5u);
    EXPECT_EQ(error_of([&] { qcsa_box(a, ints(f11, {7, 8, 9, 10}), u); }), Errc::BadParameters);
}

TEST(nsumbox, brm_boxes) {
    Field f2 = Field::make(2);
    for (int m = 1; m <= 4; ++m) {
        SumBox b = brm_box(m);
        EXPECT_EQ(b.n, size_t{1} << m);
        check_invariants(b);
        Mat top = codes::brm_full(m).row_range(0, b.n / 2);
        EXPECT_TRUE((top * top.transpose()).is_zero());
    }
    // m = 1 is the two-sum box.
    SumBox b1 = brm_box(1);
    EXPECT_EQ(b1.m, two_sum_box().m);
    // Q_4 is the printed matrix transposed, and outputs are the bottom halves.
    Mat full = codes::brm_full(4);
    std::vector<long> flat;
    for (const auto& r : fixtures::brm44_distinct_rows()) flat.insert(flat.end(), r.begin(), r.end());
    EXPECT_EQ(full.transpose(), Mat::from_ints(f2, 16, 16, flat).transpose());
    SumBox b4 = brm_box(4);
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        Vec c1 = rng.vec(f2, 16), c2 = rng.vec(f2, 16);
        Vec x = mul(c1, full), xz = mul(c2, full);
        x.insert(x.end(), xz.begin(), xz.end());
        Vec want(c1.begin() + 8, c1.end());
        want.insert(want.end(), c2.begin() + 8, c2.end());
        EXPECT_EQ(nsumbox::apply(b4, x), want);
    }
}
