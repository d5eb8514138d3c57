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

#include "qpirsim/pir.hpp"

#include "gtest/gtest.h"

using namespace qpirsim;
using namespace qpirsim::pir;
using namespace qpirsim::linalg;

namespace {

Errc error_of(auto fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::OutOfRange;
}

BrmParams example15() { return brm_params(1, 1, 1, 1, 0); }

}  // namespace

TEST(Storage, IdentityCodeStoresFilesVerbatim) {
    Field f5 = Field::make(5);
    Rng rng(3);
    Mat x = rng.mat(f5, 6, 3);
    StorageSystem s = store(x, codes::LinearCode(Mat::identity(f5, 3)), 0, rng, 2);
    EXPECT_EQ(s.y, x);
    EXPECT_EQ(s.m_files, 3u);
    EXPECT_EQ(s.at(2, 1, 0, 2), x.at(5, 2));
}

TEST(Storage, MdsLayoutOverF4) {
    Field f4 = Field::make(2, 2);
    FieldElem a = f4.from_coeffs({0, 1}), a2 = a * a;
    codes::LinearCode c(Mat::from_rows({{f4.one(), f4.zero(), a2, a}, {f4.zero(), f4.one(), a, a2}}));
    Rng rng(5);
    Mat x = rng.mat(f4, 2, 2);
    StorageSystem s = store(x, c, 0, rng);
    for (size_t i = 0; i < 2; ++i) {
        FieldElem x1 = x.at(i, 0), x2 = x.at(i, 1);
        EXPECT_EQ(s.y.row(i), (Vec{x1, x2, a2 * x1 + a * x2, a * x1 + a2 * x2}));
    }
}

TEST(Storage, PairedInstancesAndSecurityBlocks) {
    Field f7 = Field::make(7);
    Rng rng(9);
    Mat gp = Mat::from_ints(f7, 2, 4, {1, 1, 1, 1, 1, 2, 3, 4});
    codes::LinearCode c(block_diag(gp, gp));
    Mat x = rng.mat(f7, 3, 2);
    StorageSystem s = store(x, c, 1, rng, 1, 2);
    EXPECT_EQ(s.n, 4u);
    EXPECT_EQ(s.z.cols(), 2u);
    // Instance p stores X_p + Z_p * point.
    for (size_t srv = 0; srv < 4; ++srv) {
        FieldElem pt = f7.from_int(static_cast<long>(srv) + 1);
        EXPECT_EQ(s.at(1, 0, 1, srv), x.at(1, 1) + s.z.at(1, 1) * pt);
    }
    EXPECT_EQ(error_of([&] { store(x, c, 0, rng, 1, 2); }), Errc::DimensionMismatch);
}

TEST(Query, DifferenceLiesInQueryCode) {
    Field f7 = Field::make(7);
    Rng rng(11);
    Vec pts;
    for (long v : {1, 3, 2, 6, 4, 5}) pts.push_back(f7.from_int(v));
    codes::LinearCode d = codes::grs(pts, linalg::ones(f7, 6), 2);
    Mat e(f7, 4, 6);
    e = e.with_entry(1, 0, f7.one());
    for (int trial = 0; trial < 20; ++trial) {
        QueryRound qr = star_query(0, d, e, rng);
        Mat diff = qr.q - qr.e;
        for (size_t r = 0; r < diff.rows(); ++r) EXPECT_TRUE(d.contains(diff.row(r)));
    }
    EXPECT_EQ(error_of([&] { star_query(0, d, Mat(f7, 4, 5), rng); }), Errc::DimensionMismatch);
}

TEST(Query, ZeroRetrievalGivesPureCodeNoise) {
    Field f4 = Field::make(2, 2);
    FieldElem a = f4.from_coeffs({0, 1}), a2 = a * a;
    codes::LinearCode c(Mat::from_rows({{f4.one(), f4.zero(), a2, a}, {f4.zero(), f4.one(), a, a2}}));
    Rng rng(2);
    StorageSystem s = store(rng.mat(f4, 2, 2), c, 0, rng);
    // The code is self-dual, so without a retrieval term the answers cancel.
    QueryRound qr = star_query(0, c, Mat(f4, 2, 4), rng);
    FieldElem sum = f4.zero();
    for (const auto& a_n : answers(s.y, qr.q)) sum += a_n;
    EXPECT_TRUE(sum.is_zero());
}

TEST(Toy, PrintedQueryRecoversFirstFile) {
    Field f2 = Field::make(2);
    Vec x = {f2.one(), f2.zero(), f2.one()};
    Vec q = {f2.one(), f2.zero(), f2.one()};
    Vec q2 = add(q, unit(f2, 3, 0));
    EXPECT_EQ(q2, (Vec{f2.zero(), f2.zero(), f2.one()}));
    EXPECT_TRUE((answer(x, q) + answer(x, q2)).is_one());
}

TEST(Toy, RunIsCorrectForEveryFileAndSeed) {
    Field f2 = Field::make(2);
    for (uint64_t seed = 0; seed < 16; ++seed) {
        for (size_t theta = 0; theta < 3; ++theta) {
            Rng rng(seed);
            ProtocolReport r = toy_run(theta, rng, Vec{f2.one(), f2.zero(), f2.one()});
            EXPECT_TRUE(r.correct);
            EXPECT_EQ(r.rate, Rational(1, 2));
        }
    }
    Rng rng(1);
    EXPECT_TRUE(toy_run(0, rng).retrieved.at(0, 0).is_one());
}

TEST(Toy, EachServerAloneSeesUniformQueries) {
    QueryModel m = toy_query_model();
    for (size_t s = 0; s < 2; ++s) EXPECT_TRUE(privacy_audit(m, {s}, {0, 2}, AuditMode::Exhaustive).passed);
    EXPECT_FALSE(privacy_audit(m, {0, 1}, {0, 2}, AuditMode::Exhaustive).passed);
    EXPECT_TRUE(privacy_audit(m, {1}, {0, 1}, AuditMode::Sampled).passed);
    EXPECT_FALSE(privacy_audit(m, {0, 1}, {0, 1}, AuditMode::Sampled).passed);
}

TEST(Audit, RefusesOversizedEnumeration) {
    QueryModel m = toy_query_model();
    m.randomness = [](size_t) { return size_t{23}; };
    EXPECT_EQ(error_of([&] { privacy_audit(m, {0}, {0, 1}, AuditMode::Exhaustive); }), Errc::EnumerationTooLarge);
}

TEST(Audit, SubsetsEnumeratesCombinations) {
    EXPECT_EQ(subsets(6, 2).size(), 15u);
    EXPECT_EQ(subsets(16, 1).size(), 16u);
    EXPECT_EQ(subsets(3, 0).size(), 1u);
    EXPECT_TRUE(subsets(2, 3).empty());
}

TEST(Security, ShamirShareOverF5) {
    Field f5 = Field::make(5);
    // Rows: secret coefficient, then the random coefficient times the point.
    codes::LinearCode c(Mat::from_ints(f5, 2, 3, {1, 1, 1, 1, 2, 3}));
    Rng rng(4);
    Mat x = Mat::from_ints(f5, 2, 1, {3, 1});
    StorageSystem s = store(x, c, 1, rng);
    for (size_t srv = 0; srv < 3; ++srv) EXPECT_TRUE(security_audit(s, {srv}).passed);
    EXPECT_TRUE(security_audit_all(s, 1).passed);
    EXPECT_FALSE(security_audit(s, {0, 1}).passed);
    EXPECT_FALSE(security_audit_all(s, 2).passed);
}

TEST(Security, NoRandomnessOnlyPassesTheEmptySet) {
    Field f5 = Field::make(5);
    Rng rng(4);
    StorageSystem s = store(Mat::from_ints(f5, 1, 2, {1, 2}), codes::LinearCode(Mat::identity(f5, 2)), 0, rng);
    EXPECT_TRUE(security_audit(s, {}).passed);
    EXPECT_FALSE(security_audit(s, {0}).passed);
}

TEST(BrmParams, RobustExample) {
    BrmParams p = example15();
    EXPECT_EQ(p.m, 4);
    EXPECT_EQ(p.r_e, 1);
    EXPECT_EQ(p.c, 6);
    EXPECT_EQ(p.k, 5);
    EXPECT_EQ(p.n, 16);
    EXPECT_EQ(p.beta, 6);
    EXPECT_EQ(p.rounds, 5);
    EXPECT_EQ(Rational(p.c, p.n), Rational(3, 8));
}

TEST(BrmParams, FormulaArithmetic) {
    BrmParams p = brm_params(1, 0, 0, 1, 0);
    EXPECT_EQ(p.m, 2);
    EXPECT_EQ(p.r_e, 1);
    EXPECT_EQ(p.c, 1);  // C(2,2)
    EXPECT_EQ(error_of([] { brm_params(3, 0, 0, 1, 0); }), Errc::InfeasibleParameters);
    EXPECT_EQ(error_of([] { brm_params(1, 1, 1, 1, 1); }), Errc::InfeasibleParameters);
}

TEST(BrmRobust, CleanRunRecoversTheFile) {
    for (size_t theta = 0; theta < 2; ++theta) {
        Rng rng(100 + theta);
        ProtocolReport r = brm_robust_run(example15(), theta, {}, rng);
        EXPECT_TRUE(r.correct);
        EXPECT_EQ(r.retrieved.rows(), 6u);
        EXPECT_EQ(r.rate, Rational(3, 8));
        EXPECT_EQ(r.f_units, 30);
        EXPECT_EQ(r.d_units, 80);
    }
}

TEST(BrmRobust, OneErrorAndOneErasure) {
    for (size_t byz = 0; byz < 16; byz += 5) {
        for (size_t lost = 0; lost < 16; lost += 3) {
            Rng rng(byz * 16 + lost);
            ProtocolReport r = brm_robust_run(example15(), 1, {{byz}, {lost}, {(byz + 7) % 16}}, rng);
            EXPECT_TRUE(r.correct) << byz << " " << lost;
            ASSERT_EQ(r.audits.size(), 1u);
            EXPECT_TRUE(r.audits[0].passed);
        }
    }
}

TEST(BrmRobust, OverBudgetIsFlagged) {
    int flagged = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        try {
            if (!brm_robust_run(example15(), 0, {{2, 9, 13}, {}, {}}, rng).correct) ++flagged;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::DecodingAmbiguous);
            ++flagged;
        }
    }
    EXPECT_GT(flagged, 0);
}

TEST(BrmRobust, OnlyTheExampleScheduleIsKnown) {
    Rng rng(1);
    EXPECT_EQ(error_of([&] { brm_robust_run(brm_params(1, 0, 0, 1, 0), 0, {}, rng); }), Errc::InfeasibleParameters);
}

TEST(BrmRobust, PrivacyAgainstOneButNotTwo) {
    QueryModel m = brm_query_model(example15());
    EXPECT_TRUE(collusion_audit(m, 1, {0, 1}, AuditMode::Exhaustive).passed);
    EXPECT_FALSE(collusion_audit(m, 2, {0, 1}, AuditMode::Exhaustive).passed);
}

TEST(Report, JsonIsDeterministic) {
    auto dump = [] {
        Rng rng(42);
        return brm_robust_run(example15(), 0, {{3}, {4}, {5}}, rng).to_json().dump();
    };
    const std::string a = dump();
    EXPECT_EQ(a, dump());
    Json j = Json::parse(a);
    EXPECT_EQ(j["rate"], "3/8");
    EXPECT_EQ(j["F_bits"], 30.0);
    EXPECT_EQ(j["D_bits"], 80.0);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_TRUE(j["correct"].get<bool>());
    EXPECT_FALSE(j.contains("qudit_dimension"));
}
