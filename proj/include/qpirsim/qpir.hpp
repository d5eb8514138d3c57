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

// Quantum PIR protocol simulations. The quantum download is realized either
// by the dense oracle (the four-server qubit example) or by N-sum box
// semantics; every report records which one ran. Closed-form rates and
// capacities live here as exact rationals.
//
// File indices (theta) are zero-based; reports record them one-based.

#ifndef QPIRSIM_QPIR_HPP
#define QPIRSIM_QPIR_HPP

#include <optional>

#include "qpirsim/nsumbox.hpp"
#include "qpirsim/pir.hpp"

namespace qpirsim::qpir {

using gf::Field;
using gf::FieldElem;
using gf::Vec;
using linalg::Mat;
using pir::ProtocolReport;
using pir::QueryModel;
using pir::Rational;

// ---------------------------------------------------------------- capacity

enum class Setting { Pir, Spir, Qpir };
enum class Layout { Replicated, Mds };

Setting parse_setting(const std::string& s);
Layout parse_layout(const std::string& s);
const char* setting_name(Setting s);
const char* layout_name(Layout l);

// Replicated storage ignores k. Without m_files the asymptotic value is
// returned; symmetric and quantum capacities do not depend on M. Throws
// OutOfRange unless 1 <= t, 1 <= k and k + t - 1 < n.
Rational capacity(Setting s, Layout l, long n, long k, long t, std::optional<long> m_files = std::nullopt);

// Achieved rates of the schemes below, as closed forms.
Rational mds_qubit_rate(long k, long t);
Rational lrc_rate(long lambda, long delta);
Rational grs_rate(long n, long k, long t);
Rational csa_rate(long n, long x, long t, long k = 1);
// min{1, 2 c}: the ceiling on any QPIR scheme induced by a classical scheme of capacity c.
Rational quantum_ceiling(const Rational& classical);

// One line of the capacity table: a (N, K, T) point under one storage layout.
// Replicated rows evaluate with K = 1.
struct CapacityRow {
    long n = 0, k = 0, t = 0;
    Layout layout = Layout::Replicated;
    Rational pir, spir, qpir, ceiling;
    std::optional<Rational> pir_finite;  // with a finite file count
};

// Every valid point of the grid, both layouts. Points with K + T - 1 >= N are skipped.
std::vector<CapacityRow> capacity_table(const std::vector<long>& ns, const std::vector<long>& ks,
                                        const std::vector<long>& ts, std::optional<long> m_files = std::nullopt);
std::string capacity_table_text(const std::vector<CapacityRow>& rows);
std::string capacity_table_csv(const std::vector<CapacityRow>& rows);

// ---------------------------------------------------------------- qubit MDS

// The [4,2] self-dual code over F_4 with generator (1 0 a^2 a; 0 1 a a^2).
codes::LinearCode example11_code();

struct OracleBranch {
    double prob = 0;
    FieldElem value;  // decoded sum of the four answers
};

// One round of the four-server teleportation chain on eight qubits, every
// measurement branch enumerated.
std::vector<OracleBranch> example11_round(const Vec& answers);

// Four servers, [4,2] code over F_4; oracle or sum-box realization.
ProtocolReport mds_qubit_run(size_t theta, Rng& rng, std::optional<Mat> files = std::nullopt, bool oracle = true);
// [N,K] GRS code over F_{4^L}, 4^L >= N, on successive powers of the primitive element.
codes::LinearCode mds_qubit_code(size_t n, size_t k);
// Any such code with T = N - K, sum-box path.
ProtocolReport mds_qubit_sumbox_run(size_t n, size_t k, size_t theta, Rng& rng, size_t m_files = 2);
QueryModel mds_qubit_query_model(const codes::LinearCode& storage, size_t m_files);

// (2, N')-sum box over F_2 that outputs the sums of the x- and z-inputs;
// N' must be even.
nsumbox::SumBox parity_sum_box(size_t n);

// ---------------------------------------------------------------- LRC

ProtocolReport lrc_qpir_run(const codes::LrcCode& lrc, size_t theta, Rng& rng, size_t m_files = 2);
QueryModel lrc_query_model(const codes::LrcCode& lrc, size_t m_files);

// ---------------------------------------------------------------- GRS

struct GrsScheme {
    Field field;
    size_t n = 0, k = 0, t = 0;
    size_t c = 0, beta = 0, rounds = 0;
    Vec points;
    Vec query_multipliers;
    codes::LinearCode storage;  // C' x C'
    codes::LinearCode query;    // D' x D'
    Mat g_s;                    // basis of S' x S', top 2c rows self-orthogonal
    // Symbol s of the stripe-by-server grid: (stripe, server).
    std::vector<std::pair<size_t, size_t>> schedule;

    Mat round_selector(size_t round) const;  // M^(r), 2c x 2N
    Mat retrieval(size_t round, size_t theta, size_t m_files) const;  // E M^(r), (M beta) x 2N
    nsumbox::SumBox box(size_t round) const;
};

// Throws BadParameters unless N/2 <= K+T-1 < N, and NoWeaklySelfDualStarCode
// when no query multipliers make C' * D' contain its dual.
GrsScheme grs_scheme(size_t n, size_t k, size_t t, long q);
ProtocolReport grs_qpir_run(size_t n, size_t k, size_t t, long q, size_t theta, Rng& rng, size_t m_files = 2);
ProtocolReport grs_qpir_run(const GrsScheme& s, size_t theta, Rng& rng, size_t m_files = 2);
QueryModel grs_query_model(const GrsScheme& s, size_t m_files);

// ---------------------------------------------------------------- CSA

struct CsaScheme {
    Field field;
    size_t n = 0, x_sec = 0, t = 0, l = 0;
    bool symmetric = false;
    Vec points, poles, u;
    nsumbox::SumBox box;

    // Storage generator of stripe l: the all-ones row, then (f_l - a_n)^j.
    codes::LinearCode storage_code(size_t stripe) const;
    // Query code of stripe l: rows (f_l - a_n)^j, j < T.
    codes::LinearCode query_code(size_t stripe) const;
    Vec cauchy(size_t stripe) const;
};

// K = 1. Throws ParameterInfeasible unless q is odd, the points and poles
// fit (N + L <= q), 1 <= L <= N - X - T, and L <= N/2 (2L <= N when
// symmetric).
CsaScheme csa_scheme(size_t n, size_t x_sec, size_t t, size_t l, long q, bool symmetric);
ProtocolReport csa_qpir_run(size_t n, size_t x_sec, size_t t, size_t l, long q, size_t theta, bool symmetric, Rng& rng,
                            size_t m_files = 2);

struct CsaRun {
    ProtocolReport report;
    std::vector<pir::StorageSystem> storage;  // instance-major, one per stripe
    Vec box_output;
};
CsaRun csa_qpir_execute(const CsaScheme& s, size_t theta, Rng& rng, size_t m_files = 2,
                        std::optional<Mat> files = std::nullopt);
QueryModel csa_query_model(const CsaScheme& s, size_t m_files);

// ---------------------------------------------------------------- BRM

// T with (X G_C) * (1 G_E) = X T G_E for C = BRM(1,4) and G_E the last five
// rows of G_BRM(4,4).
Mat brm_t_matrix();
ProtocolReport brm_qpir_run(size_t theta, Rng& rng, size_t m_files = 3);
QueryModel brm_qpir_query_model(size_t m_files);

}  // namespace qpirsim::qpir

#endif  // QPIRSIM_QPIR_HPP
