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

#include "qpirsim/gf.hpp"

#include <set>

#include "gtest/gtest.h"

using namespace qpirsim;
using namespace qpirsim::gf;

namespace {

std::vector<Field> small_fields() {
    return {Field::make(2, 1), Field::make(2, 2), Field::make(2, 3), Field::make(2, 4), Field::make(2, 5),
            Field::make(2, 6), Field::make(3, 1), Field::make(3, 2), Field::make(3, 3), Field::make(5, 1),
            Field::make(5, 2), Field::make(7, 1), Field::make(7, 2), Field::make(11, 1), Field::make(13, 1)};
}

}  // namespace

TEST(gf, f4_uses_alpha_squared_plus_alpha_plus_one) {
    Field f4 = Field::make(2, 2, std::vector<int>{1, 1, 1});
    EXPECT_EQ(f4.q(), 4u);
    EXPECT_EQ(Field::make(2, 2), f4);
    FieldElem a = f4.from_coeffs({0, 1});
    EXPECT_EQ(a * a, a + f4.one());
    EXPECT_EQ(a * (a * a), f4.one());
    EXPECT_EQ(f4.spec(), "2^2/1,1,1");
}

TEST(gf, prime_field_arithmetic) {
    Field f7 = Field::make(7);
    EXPECT_EQ(f7.from_int(3) * f7.from_int(5), f7.one());
    EXPECT_EQ(f7.from_int(5).trace(), f7.from_int(5));
    EXPECT_EQ(f7.from_int(-1), f7.from_int(6));
}

TEST(gf, f16_has_sixteen_elements_and_a_closed_product) {
    Field f16 = Field::make(2, 4);
    auto els = f16.elements();
    ASSERT_EQ(els.size(), 16u);
    std::set<uint32_t> nonzero_products;
    for (const auto& a : els) {
        for (const auto& b : els) {
            if (!a.is_zero() && !b.is_zero()) {
                EXPECT_FALSE((a * b).is_zero());
                nonzero_products.insert((a * b).code());
            }
        }
    }
    EXPECT_EQ(nonzero_products.size(), 15u);
}

TEST(gf, construction_errors) {
    try {
        Field::make(4, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPrime);
    }
    try {
        Field::make(2, 2, std::vector<int>{1, 0, 1});  // (x+1)^2
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ReducibleModulus);
    }
}

TEST(gf, division_by_zero_and_field_mismatch) {
    Field f5 = Field::make(5), f7 = Field::make(7);
    try {
        (void)(f5.one() / f5.zero());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DivisionByZero);
    }
    try {
        (void)(f5.one() + f7.one());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::FieldMismatch);
    }
}

TEST(gf, trace_in_f4) {
    Field f4 = Field::make(2, 2);
    EXPECT_EQ(f4.zero().trace_value(), 0);
    EXPECT_EQ(f4.from_coeffs({0, 1}).trace_value(), 1);
    EXPECT_EQ(f4.one().trace_value(), 0);
}

TEST(gf, trace_matches_frobenius_sum) {
    // Independent check: tr(x) = x + x^p + ... + x^{p^{mu-1}}.
    for (const Field& f : small_fields()) {
        for (const auto& x : f.elements()) {
            FieldElem s = f.zero(), y = x;
            for (int i = 0; i < f.mu(); ++i) {
                s += y;
                y = y.pow(f.p());
            }
            EXPECT_EQ(s, x.trace()) << f.spec() << " x=" << x.str();
        }
    }
}

TEST(gf, field_axioms_exhaustive_up_to_64) {
    for (const Field& f : small_fields()) {
        if (f.q() > 64) continue;
        auto els = f.elements();
        for (const auto& a : els) {
            if (!a.is_zero()) {
                int inverses = 0;
                for (const auto& b : els) inverses += (a * b).is_one() ? 1 : 0;
                EXPECT_EQ(inverses, 1);
            }
            for (const auto& b : els) {
                EXPECT_EQ(a + b, b + a);
                EXPECT_EQ(a * b, b * a);
                for (const auto& c : els) {
                    ASSERT_EQ((a + b) + c, a + (b + c));
                    ASSERT_EQ((a * b) * c, a * (b * c));
                    ASSERT_EQ(a * (b + c), a * b + a * c);
                }
            }
        }
    }
}

TEST(gf, trace_linear_and_surjective) {
    for (const Field& f : small_fields()) {
        if (f.q() > 64) continue;
        std::set<int> image;
        for (const auto& x : f.elements()) {
            image.insert(x.trace_value());
            for (const auto& y : f.elements()) {
                EXPECT_EQ((x + y).trace_value(), (x.trace_value() + y.trace_value()) % f.p());
            }
            for (int c = 0; c < f.p(); ++c) {
                EXPECT_EQ((f.from_int(c) * x).trace_value(), (c * x.trace_value()) % f.p());
            }
        }
        EXPECT_EQ(image.size(), static_cast<size_t>(f.p())) << f.spec();
    }
}

TEST(gf, phi_examples_and_bijection) {
    Field f4 = Field::make(2, 2), f2 = Field::make(2);
    FieldElem a = f4.from_coeffs({0, 1});
    EXPECT_EQ(phi(a, f2), (Vec{f2.zero(), f2.one()}));
    for (const auto& x : f4.elements()) {
        EXPECT_EQ(phi_inv(phi(x, f2), f4), x);
        for (const auto& y : f4.elements()) {
            Vec px = phi(x, f2), py = phi(y, f2), pxy = phi(x + y, f2);
            for (size_t i = 0; i < 2; ++i) EXPECT_EQ(pxy[i], px[i] + py[i]);
        }
    }
    for (const Field& f : small_fields()) {
        if (f.q() > 64) continue;
        Field base = Field::make(f.p());
        std::set<std::vector<uint32_t>> images;
        for (const auto& x : f.elements()) {
            std::vector<uint32_t> img;
            for (const auto& c : phi(x, base)) img.push_back(c.code());
            images.insert(img);
            EXPECT_EQ(phi_inv(phi(x, base), f), x);
        }
        EXPECT_EQ(images.size(), f.q());
    }
}

TEST(gf, phi_rejects_foreign_subfield) {
    Field f16 = Field::make(2, 4), f4 = Field::make(2, 2);
    try {
        phi(f16.one(), f4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotASubfieldTower);
    }
}

TEST(gf, spec_round_trip_and_canonical_moduli_are_irreducible) {
    for (int p : {2, 3, 5, 7}) {
        for (int mu = 1; mu <= 4; ++mu) {
            Field f = Field::make(p, mu);
            EXPECT_EQ(Field::parse(f.spec()), f);
            // Order of the primitive element is q-1.
            FieldElem g = f.primitive();
            EXPECT_TRUE(g.pow(f.q() - 1).is_one());
        }
    }
    EXPECT_EQ(Field::parse("7"), Field::make(7));
    EXPECT_EQ(Field::parse("2^2"), Field::make(2, 2));
}
