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

#include "qpirsim/qpir.hpp"

#include "fixtures.hpp"
#include "gtest/gtest.h"

using namespace qpirsim;
using namespace qpirsim::qpir;
using namespace qpirsim::linalg;
using pir::AuditMode;

namespace {

Errc error_of(auto fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::OutOfRange;
}

// 1 / (1 + r + ... + r^(M-1)) with r = a/N, summed term by term.
Rational geometric_capacity(long n, long a, long m) {
    Rational sum(0), term(1);
    for (long i = 0; i < m; ++i, term *= Rational(a, n)) sum += term;
    return Rational(1) / sum;
}

}  // namespace

TEST(Capacity, TableValues) {
    EXPECT_EQ(capacity(Setting::Qpir, Layout::Mds, 6, 3, 2), Rational(2, 3));
    EXPECT_EQ(capacity(Setting::Qpir, Layout::Replicated, 4, 1, 1), Rational(1));
    EXPECT_EQ(capacity(Setting::Qpir, Layout::Replicated, 5, 1, 3), Rational(4, 5));
    EXPECT_EQ(capacity(Setting::Spir, Layout::Replicated, 4, 1, 1), Rational(3, 4));
    EXPECT_EQ(capacity(Setting::Spir, Layout::Mds, 6, 2, 2), Rational(1, 2));
    EXPECT_EQ(capacity(Setting::Pir, Layout::Mds, 6, 3, 2), Rational(1, 3));
    // Replicated storage ignores K.
    EXPECT_EQ(capacity(Setting::Pir, Layout::Replicated, 6, 4, 2), Rational(2, 3));
}

TEST(Capacity, FiniteFilesMatchesGeometricSum) {
    for (long n = 2; n <= 7; ++n)
        for (long k = 1; k < n; ++k)
            for (long m = 1; m <= 5; ++m)
                EXPECT_EQ(capacity(Setting::Pir, Layout::Mds, n, k, 1, m), geometric_capacity(n, k, m)) << n << k << m;
}

TEST(Capacity, RejectsOutOfRange) {
    EXPECT_EQ(error_of([] { capacity(Setting::Qpir, Layout::Mds, 4, 3, 2); }), Errc::OutOfRange);
    EXPECT_EQ(error_of([] { capacity(Setting::Pir, Layout::Mds, 4, 1, 0); }), Errc::OutOfRange);
    EXPECT_EQ(error_of([] { capacity(Setting::Pir, Layout::Mds, 1000, 1, 1, 40); }), Errc::OutOfRange);
}

TEST(Rates, ClosedForms) {
    EXPECT_EQ(mds_qubit_rate(2, 2), Rational(1, 2));
    EXPECT_EQ(mds_qubit_rate(3, 2), Rational(1, 3));
    EXPECT_EQ(lrc_rate(2, 2), Rational(1, 2));
    EXPECT_EQ(lrc_rate(2, 3), Rational(1, 2));
    EXPECT_EQ(grs_rate(6, 3, 2), Rational(2, 3));
    EXPECT_EQ(grs_rate(8, 1, 1), Rational(1));
    EXPECT_EQ(csa_rate(4, 1, 1), Rational(1));
    EXPECT_EQ(csa_rate(6, 2, 1), Rational(1));
    EXPECT_EQ(csa_rate(6, 2, 2), Rational(2, 3));
    EXPECT_EQ(quantum_ceiling(Rational(1, 3)), Rational(2, 3));
    EXPECT_EQ(quantum_ceiling(Rational(3, 4)), Rational(1));
}

TEST(MdsQubit, ChainCircuitAlwaysYieldsTheSum) {
    Field f4 = Field::make(2, 2);
    const auto el = f4.elements();
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Vec a;
        FieldElem sum = f4.zero();
        for (int i = 0; i < 4; ++i) {
            a.push_back(el[rng.below(4)]);
            sum += a.back();
        }
        const auto branches = example11_round(a);
        double total = 0;
        for (const auto& b : branches) {
            total += b.prob;
            EXPECT_EQ(b.value, sum);
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(MdsQubit, StorageMatchesPrintedEncoding) {
    const auto c = example11_code();
    Field f4 = c.field();
    FieldElem a = f4.from_coeffs({0, 1}), x1 = f4.from_coeffs({1, 1}), x2 = a;
    EXPECT_EQ(c.encode({x1, x2}), (Vec{x1, x2, a * a * x1 + a * x2, a * x1 + a * a * x2}));
    EXPECT_TRUE(codes::same_code(c, codes::dual(c)));
}

TEST(MdsQubit, OracleAndBoxPathsRetrieveTheFile) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        for (size_t theta = 0; theta < 2; ++theta) {
            Rng r1(seed), r2(seed);
            const auto oracle = mds_qubit_run(theta, r1, std::nullopt, true);
            const auto boxed = mds_qubit_run(theta, r2, std::nullopt, false);
            EXPECT_TRUE(oracle.correct);
            EXPECT_TRUE(boxed.correct);
            EXPECT_EQ(oracle.retrieved, boxed.retrieved);
            EXPECT_EQ(oracle.rate, Rational(1, 2));
            EXPECT_EQ(oracle.qudits_downloaded, 8);
        }
    }
}

TEST(MdsQubit, GeneralSizesPadOddServerCounts) {
    Rng rng(5);
    const auto even = mds_qubit_sumbox_run(6, 3, 1, rng, 3);
    EXPECT_TRUE(even.correct);
    EXPECT_EQ(even.rate, Rational(1, 3));
    const auto odd = mds_qubit_sumbox_run(5, 2, 0, rng);
    EXPECT_TRUE(odd.correct);
    EXPECT_EQ(odd.rate, Rational(1, 3));
    EXPECT_EQ(odd.rate, mds_qubit_rate(2, 3));
}

TEST(MdsQubit, AnyTwoServersArePrivate) {
    const auto qm = mds_qubit_query_model(example11_code(), 2);
    EXPECT_TRUE(pir::collusion_audit(qm, 2, {0, 1}, AuditMode::Exhaustive, 1).passed);
    EXPECT_FALSE(pir::collusion_audit(qm, 3, {0, 1}, AuditMode::Exhaustive, 1).passed);
}

TEST(Lrc, RatesFollowLocalLength) {
    Field f4 = Field::make(2, 2);
    Rng rng(8);
    const auto odd = lrc_qpir_run(codes::lrc_optimal(6, 4, 2, 2, f4), 1, rng);
    EXPECT_TRUE(odd.correct);
    EXPECT_EQ(odd.rate, Rational(1, 2));
    const auto even = lrc_qpir_run(codes::lrc_optimal(8, 4, 2, 3, f4), 0, rng, 3);
    EXPECT_TRUE(even.correct);
    EXPECT_EQ(even.rate, Rational(1, 2));
}

TEST(Lrc, CollusionInsideOneGroup) {
    const auto lrc = codes::lrc_optimal(8, 4, 2, 3, Field::make(2, 2));
    const auto qm = lrc_query_model(lrc, 2);
    const auto& g0 = lrc.repair_sets[0];
    EXPECT_TRUE(pir::privacy_audit(qm, {g0[0], g0[1]}, {0, 1}, AuditMode::Exhaustive).passed);
    EXPECT_FALSE(pir::privacy_audit(qm, {g0[0], g0[1], g0[2]}, {0, 1}, AuditMode::Exhaustive).passed);
    // Two colluders per group, in different groups, still learn nothing.
    const auto& g1 = lrc.repair_sets[1];
    EXPECT_TRUE(pir::privacy_audit(qm, {g0[0], g0[1], g1[0], g1[1]}, {0, 1}, AuditMode::Exhaustive).passed);
}

TEST(Lrc, OddCharacteristicRejected) {
    const auto lrc = codes::lrc_optimal(6, 4, 2, 2, Field::make(5));
    Rng rng(1);
    EXPECT_EQ(error_of([&] { lrc_qpir_run(lrc, 0, rng); }), Errc::BadParameters);
}

TEST(Grs, ExampleTwelveStructure) {
    const GrsScheme s = grs_scheme(6, 3, 2, 7);
    EXPECT_EQ(s.c, 2u);
    EXPECT_EQ(s.beta, 2u);
    EXPECT_EQ(s.rounds, 3u);
    std::vector<uint32_t> pts;
    for (const auto& a : s.points) pts.push_back(a.code());
    EXPECT_EQ(pts, (std::vector<uint32_t>{1, 3, 2, 6, 4, 5}));
    // C' * D' is a GRS code of dimension K + T - 1 that contains its dual.
    const auto cp = codes::grs(s.points, ones(s.field, 6), 3), dp = codes::grs(s.points, s.query_multipliers, 2);
    const auto sp = codes::star_product(cp, dp);
    EXPECT_EQ(sp.k(), 4u);
    const auto spd = codes::dual(sp);
    for (size_t r = 0; r < spd.k(); ++r) EXPECT_TRUE(sp.contains(spd.generator().row(r)));
    EXPECT_NO_THROW(symplectic::SelfOrthMat(s.g_s.row_range(0, 2 * s.c)));
    // Round 1 serves stripe 1 from server 1 and stripe 2 from server 2.
    EXPECT_EQ(s.schedule[0], (std::pair<size_t, size_t>{0, 0}));
    EXPECT_EQ(s.schedule[1], (std::pair<size_t, size_t>{1, 1}));
}

TEST(Grs, ExampleTwelveRun) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const auto rep = grs_qpir_run(6, 3, 2, 7, seed % 2, rng);
        EXPECT_TRUE(rep.correct);
        EXPECT_EQ(rep.qudits_downloaded, 18);
        EXPECT_EQ(rep.f_units, 12);
        EXPECT_EQ(rep.rate, Rational(2, 3));
    }
}

TEST(Grs, RoundOneOutputIsStoredSymbolsAndIgnoresRandomness) {
    const GrsScheme s = grs_scheme(6, 3, 2, 7);
    Rng rng(3);
    const size_t theta = 1, m = 2;
    const Mat x = rng.mat(s.field, m * s.beta, 6);
    const auto sys = pir::store(x, s.storage, 0, rng, s.beta, 2);
    const Mat e = s.retrieval(0, theta, m);
    const auto q1 = pir::star_query(theta, s.query, e, rng), q2 = pir::star_query(theta, s.query, e, rng);
    const Vec a1 = pir::answers(sys.y, q1.q), a2 = pir::answers(sys.y, q2.q);
    EXPECT_NE(a1, a2);
    const auto box = s.box(0);
    const Vec out = nsumbox::apply(box, a1);
    EXPECT_EQ(out, nsumbox::apply(box, a2));
    // (Y^{theta,1}_{1,1}, Y^{theta,2}_{1,2}, Y^{theta,1}_{2,1}, Y^{theta,2}_{2,2})
    const Vec want = {sys.at(theta, 0, 0, 0), sys.at(theta, 1, 0, 1), sys.at(theta, 0, 1, 0), sys.at(theta, 1, 1, 1)};
    EXPECT_EQ(out, want);
}

TEST(Grs, HalfDimensionReachesRateOne) {
    Rng rng(2);
    const auto rep = grs_qpir_run(6, 2, 2, 17, 0, rng);
    EXPECT_TRUE(rep.correct);
    EXPECT_EQ(rep.rate, Rational(1));
}

TEST(Grs, CollusionAuditAtAndAboveDesign) {
    const auto qm = grs_query_model(grs_scheme(6, 3, 2, 7), 2);
    EXPECT_TRUE(pir::collusion_audit(qm, 2, {0, 1}, AuditMode::Exhaustive, 1).passed);
    EXPECT_FALSE(pir::collusion_audit(qm, 3, {0, 1}, AuditMode::Exhaustive, 1).passed);
}

TEST(Grs, NoSelfDualMultipliersOverSevenAtHalfDimension) {
    // Points cover F_7^*, so every u_j^2 would be -a_j / g: squares and non-squares at once.
    EXPECT_EQ(error_of([] { grs_scheme(6, 2, 2, 7); }), Errc::NoWeaklySelfDualStarCode);
}

TEST(Grs, RejectsParametersOutsideWindow) {
    EXPECT_EQ(error_of([] { grs_scheme(6, 1, 1, 7); }), Errc::BadParameters);
    EXPECT_EQ(error_of([] { grs_scheme(6, 4, 3, 7); }), Errc::BadParameters);
}

TEST(Csa, RatesAndRecovery) {
    struct Case {
        size_t n, x, t, l;
        long q;
        Rational rate;
    };
    for (const Case& c : {Case{4, 1, 1, 2, 7, Rational(1)}, Case{6, 2, 1, 3, 11, Rational(1)},
                          Case{6, 2, 2, 2, 11, Rational(2, 3)}}) {
        for (bool symmetric : {false, true}) {
            Rng rng(c.n + c.t);
            const auto rep = csa_qpir_run(c.n, c.x, c.t, c.l, c.q, 1, symmetric, rng, 3);
            EXPECT_TRUE(rep.correct) << c.n << c.x << c.t << symmetric;
            EXPECT_EQ(rep.rate, c.rate);
            EXPECT_EQ(rep.rate, csa_rate(c.n, c.x, c.t));
        }
    }
}

TEST(Csa, SymmetricOutputDependsOnlyOnTheRequestedFile) {
    const CsaScheme s = csa_scheme(4, 1, 1, 2, 7, true);
    Rng r0(9);
    Mat files = r0.mat(s.field, 3, 4);
    Rng r1(1), r2(2);
    const auto a = csa_qpir_execute(s, 1, r1, 3, files);
    for (size_t j = 0; j < 4; ++j) {
        files = files.with_entry(0, j, files.at(0, j) + s.field.one());
        files = files.with_entry(2, j, files.at(2, j) * files.at(2, j));
    }
    const auto b = csa_qpir_execute(s, 1, r2, 3, files);
    EXPECT_EQ(a.box_output.size(), 4u);
    EXPECT_EQ(a.box_output, b.box_output);
}

TEST(Csa, PrivacyAndSecurityThresholds) {
    const CsaScheme s = csa_scheme(6, 2, 2, 2, 11, false);
    const auto qm = csa_query_model(s, 2);
    EXPECT_TRUE(pir::collusion_audit(qm, 2, {0, 1}, AuditMode::Exhaustive, 1).passed);
    EXPECT_FALSE(pir::collusion_audit(qm, 3, {0, 1}, AuditMode::Exhaustive, 1).passed);
    Rng rng(4);
    const auto run = csa_qpir_execute(s, 0, rng, 2);
    for (const auto& st : run.storage) {
        EXPECT_TRUE(pir::security_audit_all(st, 2).passed);
        EXPECT_FALSE(pir::security_audit_all(st, 3).passed);
    }
}

TEST(Csa, Infeasible) {
    EXPECT_EQ(error_of([] { csa_scheme(4, 1, 1, 2, 8, false); }), Errc::ParameterInfeasible);
    EXPECT_EQ(error_of([] { csa_scheme(6, 2, 2, 2, 7, false); }), Errc::ParameterInfeasible);
    EXPECT_EQ(error_of([] { csa_scheme(6, 2, 2, 3, 13, false); }), Errc::ParameterInfeasible);
}

TEST(BrmQpir, TransferMatrixMatchesFixture) {
    const Mat t = brm_t_matrix();
    const Field f2 = Field::make(2);
    std::vector<long> flat;
    for (const auto& row : fixtures::kBrmT) flat.insert(flat.end(), row.begin(), row.end());
    EXPECT_EQ(t, Mat::from_ints(f2, 5, 5, flat));
    EXPECT_EQ(rank(t), 5u);
}

TEST(BrmQpir, RetrievesBothInstances) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const auto rep = brm_qpir_run(seed % 3, rng);
        EXPECT_TRUE(rep.correct);
        EXPECT_EQ(rep.rate, Rational(5, 8));
        EXPECT_EQ(rep.qudits_downloaded, 16);
    }
}

TEST(BrmQpir, ThreeColludersLearnNothing) {
    const auto qm = brm_qpir_query_model(2);
    EXPECT_TRUE(pir::collusion_audit(qm, 3, {0, 1}, AuditMode::Exhaustive, 1).passed);
    EXPECT_FALSE(pir::collusion_audit(qm, 4, {0, 1}, AuditMode::Exhaustive, 1).passed);
}

TEST(Report, QuantumFieldsSerialized) {
    Rng rng(7);
    const pir::Json j = brm_qpir_run(0, rng).to_json();
    EXPECT_EQ(j["rate"], "5/8");
    EXPECT_EQ(j["qudit_dimension"], 2);
    EXPECT_EQ(j["realization"], "sumbox");
}
