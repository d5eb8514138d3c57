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

// Classical PIR engine: the striped storage layout, star-product queries,
// server answers, the robust binary Reed-Muller scheme, and exhaustive or
// sampled audits for user privacy and storage security.
//
// Indexing follows the usual block layout: a storage matrix has M*beta rows
// (file i, stripe b at row i*beta + b) and either N or 2N columns (instance p,
// server n at column p*N + n). All indices in this API are zero-based.

#ifndef QPIRSIM_PIR_HPP
#define QPIRSIM_PIR_HPP

#include <boost/rational.hpp>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpirsim/codes.hpp"
#include "qpirsim/rng.hpp"

namespace qpirsim::pir {

using gf::Field;
using gf::FieldElem;
using gf::Vec;
using linalg::Mat;
using Rational = boost::rational<long long>;
using Json = nlohmann::ordered_json;

std::string to_string(const Rational& r);

struct StorageSystem {
    Field field;
    size_t n = 0;  // servers
    size_t instances = 1;
    size_t k = 0;  // file symbols per row and instance
    size_t x_sec = 0;
    size_t m_files = 0;
    size_t beta = 1;
    codes::LinearCode code;
    Mat x;  // (M beta) x (instances k)
    Mat z;  // (M beta) x (instances x_sec), empty without security
    Mat y;  // (M beta) x (instances n)

    size_t row(size_t i, size_t b) const { return i * beta + b; }
    size_t col(size_t p, size_t server) const { return p * n + server; }
    FieldElem at(size_t i, size_t b, size_t p, size_t server) const { return y.at(row(i, b), col(p, server)); }
    // Both instance columns of one server.
    Mat server_columns(size_t server) const;
};

// Y = (X_1 | Z_1 | ... | X_P | Z_P) G, one block of k + x_sec message symbols
// per instance, with Z uniform. The code has length instances * N.
StorageSystem store(const Mat& x, const codes::LinearCode& code, size_t x_sec, Rng& rng, size_t beta = 1,
                    size_t instances = 1);

struct QueryRound {
    size_t theta = 0;
    Mat z;  // rows x dim(D)
    Mat e;
    Mat q;  // z G_D + e
};

QueryRound star_query(size_t theta, const codes::LinearCode& d, const Mat& e, Rng& rng);
FieldElem answer(const Vec& y_col, const Vec& q_col);
// One answer per column: sum over rows of Y .* Q.
Vec answers(const Mat& y, const Mat& q);

enum class AuditMode { Exhaustive, Sampled };
const char* mode_name(AuditMode m);
AuditMode parse_mode(const std::string& s);

struct AuditResult {
    std::string name;
    AuditMode mode = AuditMode::Exhaustive;
    bool passed = false;
    size_t subsets = 0;   // server sets examined
    size_t blocks = 0;    // independent randomness blocks per set
    std::string detail;   // first failing set, or empty
    Json to_json() const;
};

// What a set of servers observes about the query, split into blocks that use
// disjoint, independent randomness. The joint view is the product of the
// per-block views, so comparing block by block is exact.
struct QueryModel {
    Field field;
    size_t servers = 0;
    size_t blocks = 0;
    std::function<size_t(size_t block)> randomness;
    std::function<std::vector<uint32_t>(size_t theta, size_t block, const Vec& rand, const std::vector<size_t>& set)>
        view;
};

constexpr double kEnumerationLimit = 4194304.0;  // 2^22 randomness values per block
constexpr size_t kSamples = 100000;
constexpr double kSignificance = 1e-3;

AuditResult privacy_audit(const QueryModel& model, const std::vector<size_t>& set, std::pair<size_t, size_t> thetas,
                          AuditMode mode, uint64_t seed = 1);
// Every server set of size t.
AuditResult collusion_audit(const QueryModel& model, size_t t, std::pair<size_t, size_t> thetas, AuditMode mode,
                            uint64_t seed = 1);

// Stored symbols at `set` for the system's files versus all-zero files.
AuditResult security_audit(const StorageSystem& system, const std::vector<size_t>& set);
AuditResult security_audit_all(const StorageSystem& system, size_t x);

std::vector<std::vector<size_t>> subsets(size_t n, size_t t);

struct ProtocolReport {
    std::string scheme;
    Json params = Json::object();
    // File size and download in a common unit of unit_bits bits.
    long f_units = 0;
    long d_units = 0;
    double unit_bits = 1.0;
    Rational rate{0};
    bool correct = false;
    Mat retrieved;
    std::vector<AuditResult> audits;
    uint64_t seed = 0;
    int qudit_dimension = 0;  // 0 for classical schemes
    long qudits_downloaded = 0;
    std::string box_kind;
    std::string realization;

    bool audits_pass() const;
    Json to_json() const;
};

// Two replicated servers, three one-bit files, retrieval by a random query Q
// and Q + e_theta. The database defaults to (1, 0, 1).
ProtocolReport toy_run(size_t theta, Rng& rng, std::optional<Vec> database = std::nullopt);
QueryModel toy_query_model();

struct BrmParams {
    int t = 0, u = 0, b = 0;
    int r = 0, r_query = 0;  // storage and query orders
    int m = 0, r_e = 0;
    long c = 0, k = 0, n = 0, beta = 0, rounds = 0;
    Json to_json() const;
};

BrmParams brm_params(int t, int u, int b, int r, int r_query);

struct Adversary {
    std::vector<size_t> byzantine;
    std::vector<size_t> unresponsive;
    std::vector<size_t> colluding;
};

// Robust BRM scheme at m = 4, T = U = B = 1 (the only parameters for which a
// query-polynomial schedule is known). Throws DecodingAmbiguous when the
// adversary exceeds the decoding radius in some round.
ProtocolReport brm_robust_run(const BrmParams& params, size_t theta, const Adversary& adv, Rng& rng,
                              size_t m_files = 2);
QueryModel brm_query_model(const BrmParams& params, size_t m_files = 2);

}  // namespace qpirsim::pir

#endif  // QPIRSIM_PIR_HPP
