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

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace qpirsim::pir {

using namespace linalg;
using codes::LinearCode;

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Mat StorageSystem::server_columns(size_t server) const {
    std::vector<size_t> cols;
    for (size_t p = 0; p < instances; ++p) cols.push_back(col(p, server));
    return y.select_cols(cols);
}

StorageSystem store(const Mat& x, const LinearCode& code, size_t x_sec, Rng& rng, size_t beta, size_t instances) {
    if (instances == 0 || beta == 0) fail(Errc::BadParameters, "need at least one instance and one stripe");
    if (x.field() != code.field()) fail(Errc::FieldMismatch, "files and code over different fields");
    if (x.cols() % instances || code.n() % instances || x.rows() % beta)
        fail(Errc::DimensionMismatch, "file matrix does not split into instances and stripes");
    const size_t k = x.cols() / instances;
    if (code.k() != instances * (k + x_sec))
        fail(Errc::DimensionMismatch, "code dimension must be instances * (K + X)");
    StorageSystem s;
    s.field = x.field();
    s.n = code.n() / instances;
    s.instances = instances;
    s.k = k;
    s.x_sec = x_sec;
    s.m_files = x.rows() / beta;
    s.beta = beta;
    s.code = code;
    s.x = x;
    Mat message = x;
    if (x_sec) {
        s.z = rng.mat(x.field(), x.rows(), instances * x_sec);
        message = Mat(x.field(), x.rows(), 0);
        for (size_t p = 0; p < instances; ++p) {
            message = hstack(message, x.col_range(p * k, (p + 1) * k));
            message = hstack(message, s.z.col_range(p * x_sec, (p + 1) * x_sec));
        }
    }
    s.y = code.encode(message);
    return s;
}

QueryRound star_query(size_t theta, const LinearCode& d, const Mat& e, Rng& rng) {
    if (e.cols() != d.n()) fail(Errc::DimensionMismatch, "retrieval matrix width differs from query code length");
    if (e.field() != d.field()) fail(Errc::FieldMismatch, "retrieval matrix and query code over different fields");
    QueryRound out;
    out.theta = theta;
    out.z = rng.mat(d.field(), e.rows(), d.k());
    out.e = e;
    out.q = d.encode(out.z) + e;
    return out;
}

FieldElem answer(const Vec& y_col, const Vec& q_col) {
    if (y_col.size() != q_col.size()) fail(Errc::DimensionMismatch, "stored column and query column differ in length");
    return dot(y_col, q_col);
}

Vec answers(const Mat& y, const Mat& q) {
    if (y.rows() != q.rows() || y.cols() != q.cols()) fail(Errc::DimensionMismatch, "storage and query shapes differ");
    Vec out;
    for (size_t j = 0; j < y.cols(); ++j) out.push_back(answer(y.col(j), q.col(j)));
    return out;
}

// ---------------------------------------------------------------- audits

const char* mode_name(AuditMode m) { return m == AuditMode::Exhaustive ? "exhaustive" : "sampled"; }

AuditMode parse_mode(const std::string& s) {
    if (s == "exhaustive") return AuditMode::Exhaustive;
    if (s == "sampled") return AuditMode::Sampled;
    fail(Errc::BadParameters, "audit mode must be exhaustive or sampled");
}

Json AuditResult::to_json() const {
    Json j;
    j["name"] = name;
    j["mode"] = mode_name(mode);
    j["passed"] = passed;
    j["subsets"] = subsets;
    j["blocks"] = blocks;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

std::vector<std::vector<size_t>> subsets(size_t n, size_t t) {
    std::vector<std::vector<size_t>> out;
    if (t > n) return out;
    std::vector<size_t> cur(t);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        long i = static_cast<long>(t) - 1;
        while (i >= 0 && cur[i] == n - t + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (size_t j = i + 1; j < t; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

namespace {

std::string set_str(const std::vector<size_t>& set) {
    std::string s = "{";
    for (size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + std::to_string(set[i] + 1);
    return s + "}";
}

// Calls fn on every vector in F^len, in odometer order.
template <class Fn>
void for_each_vector(const Field& f, size_t len, Fn fn) {
    if (std::pow(static_cast<double>(f.q()), static_cast<double>(len)) > kEnumerationLimit)
        fail(Errc::EnumerationTooLarge, "block randomness exceeds 2^22 values");
    Vec v = zeros(f, len);
    std::vector<uint32_t> digit(len, 0);
    while (true) {
        fn(v);
        size_t i = 0;
        for (; i < len; ++i) {
            if (++digit[i] < f.q()) {
                v[i] = f.elem(digit[i]);
                break;
            }
            digit[i] = 0;
            v[i] = f.zero();
        }
        if (i == len) return;
    }
}

using Histogram = std::map<std::vector<uint32_t>, long>;

// Two-sample chi-square homogeneity p-value for equal sample sizes.
double homogeneity_p(const Histogram& a, const Histogram& b) {
    std::set<std::vector<uint32_t>> keys;
    for (const auto& [k, v] : a) keys.insert(k);
    for (const auto& [k, v] : b) keys.insert(k);
    if (keys.size() < 2) return 1.0;
    double stat = 0;
    for (const auto& k : keys) {
        const double x = a.count(k) ? static_cast<double>(a.at(k)) : 0.0;
        const double y = b.count(k) ? static_cast<double>(b.at(k)) : 0.0;
        stat += (x - y) * (x - y) / (x + y);
    }
    boost::math::chi_squared dist(static_cast<double>(keys.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

bool block_matches(const QueryModel& model, const std::vector<size_t>& set, std::pair<size_t, size_t> thetas,
                   size_t block, AuditMode mode, Rng& rng, double alpha) {
    const size_t len = model.randomness(block);
    if (mode == AuditMode::Exhaustive) {
        Histogram diff;
        for_each_vector(model.field, len, [&](const Vec& r) {
            ++diff[model.view(thetas.first, block, r, set)];
            --diff[model.view(thetas.second, block, r, set)];
        });
        return std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second == 0; });
    }
    Histogram a, b;
    for (size_t s = 0; s < kSamples; ++s) {
        ++a[model.view(thetas.first, block, rng.vec(model.field, len), set)];
        ++b[model.view(thetas.second, block, rng.vec(model.field, len), set)];
    }
    return homogeneity_p(a, b) >= alpha;
}

AuditResult audit_sets(const QueryModel& model, const std::vector<std::vector<size_t>>& sets,
                       std::pair<size_t, size_t> thetas, AuditMode mode, uint64_t seed, std::string name) {
    AuditResult res;
    res.name = std::move(name);
    res.mode = mode;
    res.passed = true;
    res.subsets = sets.size();
    res.blocks = model.blocks;
    Rng rng(seed);
    // Bonferroni over every (set, block) test in sampled mode.
    const double alpha = kSignificance / static_cast<double>(std::max<size_t>(1, sets.size() * model.blocks));
    for (const auto& set : sets) {
        for (size_t blk = 0; blk < model.blocks; ++blk) {
            if (block_matches(model, set, thetas, blk, mode, rng, alpha)) continue;
            res.passed = false;
            res.detail = "servers " + set_str(set) + " distinguish the files in block " + std::to_string(blk);
            return res;
        }
    }
    return res;
}

}  // namespace

AuditResult privacy_audit(const QueryModel& model, const std::vector<size_t>& set, std::pair<size_t, size_t> thetas,
                          AuditMode mode, uint64_t seed) {
    for (size_t s : set)
        if (s >= model.servers) fail(Errc::OutOfRange, "server index out of range");
    return audit_sets(model, {set}, thetas, mode, seed, "privacy " + set_str(set));
}

AuditResult collusion_audit(const QueryModel& model, size_t t, std::pair<size_t, size_t> thetas, AuditMode mode,
                            uint64_t seed) {
    return audit_sets(model, subsets(model.servers, t), thetas, mode, seed, "privacy t=" + std::to_string(t));
}

AuditResult security_audit(const StorageSystem& sys, const std::vector<size_t>& set) {
    for (size_t s : set)
        if (s >= sys.n) fail(Errc::OutOfRange, "server index out of range");
    std::vector<size_t> cols;
    for (size_t p = 0; p < sys.instances; ++p)
        for (size_t s : set) cols.push_back(sys.col(p, s));
    const Mat g = sys.code.generator().select_cols(cols);
    const Field f = sys.field;
    // Message layout per instance: k file symbols then x_sec random symbols.
    auto view = [&](const Vec& file_row, const Vec& rand) {
        Vec msg;
        for (size_t p = 0; p < sys.instances; ++p) {
            msg.insert(msg.end(), file_row.begin() + p * sys.k, file_row.begin() + (p + 1) * sys.k);
            msg.insert(msg.end(), rand.begin() + p * sys.x_sec, rand.begin() + (p + 1) * sys.x_sec);
        }
        std::vector<uint32_t> out;
        for (const auto& e : mul(msg, g)) out.push_back(e.code());
        return out;
    };
    AuditResult res;
    res.name = "security " + set_str(set);
    res.passed = true;
    res.subsets = 1;
    res.blocks = sys.x.rows();
    const Vec zero_row = zeros(f, sys.x.cols());
    for (size_t r = 0; r < sys.x.rows(); ++r) {
        const Vec row = sys.x.row(r);
        Histogram diff;
        for_each_vector(f, sys.instances * sys.x_sec, [&](const Vec& rand) {
            ++diff[view(row, rand)];
            --diff[view(zero_row, rand)];
        });
        if (!std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second == 0; })) {
            res.passed = false;
            res.detail = "servers " + set_str(set) + " learn about storage row " + std::to_string(r);
            return res;
        }
    }
    return res;
}

AuditResult security_audit_all(const StorageSystem& sys, size_t x) {
    AuditResult res;
    res.name = "security x=" + std::to_string(x);
    res.passed = true;
    res.blocks = sys.x.rows();
    for (const auto& set : subsets(sys.n, x)) {
        ++res.subsets;
        AuditResult one = security_audit(sys, set);
        if (!one.passed) {
            res.passed = false;
            res.detail = one.detail;
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------- reports

bool ProtocolReport::audits_pass() const {
    return std::all_of(audits.begin(), audits.end(), [](const AuditResult& a) { return a.passed; });
}

Json ProtocolReport::to_json() const {
    Json j;
    j["scheme"] = scheme;
    j["params"] = params;
    j["F_bits"] = static_cast<double>(f_units) * unit_bits;
    j["D_bits"] = static_cast<double>(d_units) * unit_bits;
    j["rate"] = to_string(rate);
    j["rate_value"] = boost::rational_cast<double>(rate);
    j["correct"] = correct;
    Json rows = Json::array();
    for (size_t i = 0; i < retrieved.rows(); ++i) {
        Json row = Json::array();
        for (size_t c = 0; c < retrieved.cols(); ++c) row.push_back(retrieved.at(i, c).str());
        rows.push_back(row);
    }
    j["retrieved"] = rows;
    Json a = Json::array();
    for (const auto& r : audits) a.push_back(r.to_json());
    j["audits"] = a;
    j["seed"] = seed;
    if (qudit_dimension) {
        j["qudit_dimension"] = qudit_dimension;
        j["qudits_downloaded"] = qudits_downloaded;
        j["box_kind"] = box_kind;
        j["realization"] = realization;
    }
    return j;
}

// ---------------------------------------------------------------- toy scheme

ProtocolReport toy_run(size_t theta, Rng& rng, std::optional<Vec> database) {
    const Field f2 = Field::make(2);
    const Vec x = database ? *database : Vec{f2.one(), f2.zero(), f2.one()};
    if (x.size() != 3) fail(Errc::DimensionMismatch, "the toy database holds three one-bit files");
    if (theta >= 3) fail(Errc::OutOfRange, "file index out of range");
    const Vec q = rng.vec(f2, 3);
    const Vec q2 = add(q, unit(f2, 3, theta));
    const FieldElem h = dot(x, q) + dot(x, q2);
    ProtocolReport rep;
    rep.scheme = "fig1-toy";
    rep.params = {{"N", 2}, {"M", 3}, {"theta", theta + 1}};
    rep.f_units = 1;
    rep.d_units = 2;
    rep.rate = Rational(1, 2);
    rep.retrieved = Mat::from_rows(f2, {{h}}, 1);
    rep.correct = h == x[theta];
    rep.seed = rng.seed();
    return rep;
}

QueryModel toy_query_model() {
    QueryModel m;
    m.field = Field::make(2);
    m.servers = 2;
    m.blocks = 1;
    m.randomness = [](size_t) { return size_t{3}; };
    m.view = [f = m.field](size_t theta, size_t, const Vec& r, const std::vector<size_t>& set) {
        std::vector<uint32_t> out;
        for (size_t s : set) {
            const Vec q = s == 0 ? r : add(r, unit(f, 3, theta));
            for (const auto& e : q) out.push_back(e.code());
        }
        return out;
    };
    return m;
}

// ---------------------------------------------------------------- robust BRM

namespace {

int ceil_log2(long x) {
    int e = 0;
    while ((1L << e) < x) ++e;
    return e;
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

using Monomial = std::vector<int>;

// Retrieval monomial per stripe and round for m = 4, r = 1: four rounds of
// degree-one monomials over two stripe triples, then one degree-two monomial
// per stripe.
const std::vector<std::vector<std::optional<Monomial>>>& brm_schedule() {
    static const std::vector<std::vector<std::optional<Monomial>>> s = [] {
        std::vector<std::vector<std::optional<Monomial>>> r(5, std::vector<std::optional<Monomial>>(6));
        for (int t = 0; t < 3; ++t) {
            r[0][t] = Monomial{t + 1};
            r[1][t] = Monomial{t + 2};
            r[2][t + 3] = Monomial{t + 1};
            r[3][t + 3] = Monomial{t + 2};
        }
        const std::vector<Monomial> pairs = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
        for (int b = 0; b < 6; ++b) r[4][b] = pairs[b];
        return r;
    }();
    return s;
}

Monomial product(const Monomial& a, const Monomial& b) {
    std::set<int> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

constexpr int kBrmM = 4;

Mat brm_retrieval(size_t round, size_t theta, size_t m_files, size_t beta) {
    const Field f2 = Field::make(2);
    const size_t n = size_t{1} << kBrmM;
    Mat e(f2, m_files * beta, n);
    const auto& sched = brm_schedule()[round];
    for (size_t b = 0; b < beta; ++b) {
        if (!sched[b]) continue;
        const Vec v = codes::brm_eval(*sched[b], kBrmM);
        for (size_t j = 0; j < n; ++j) e = e.with_entry(theta * beta + b, j, v[j]);
    }
    return e;
}

void check_example_params(const BrmParams& p) {
    if (p.m != kBrmM || p.r != 1 || p.r_query != 0 || p.c != 6 || p.k != 5 || p.beta != 6 || p.rounds != 5)
        fail(Errc::InfeasibleParameters, "query polynomials are only known for m = 4, r = 1, r' = 0");
}

const codes::NearestDecoder& brm2_decoder() {
    static const codes::NearestDecoder dec(codes::brm(2, kBrmM));
    return dec;
}

}  // namespace

Json BrmParams::to_json() const {
    return {{"T", t}, {"U", u},       {"B", b},       {"r", r},       {"r_query", r_query}, {"m", m},
            {"r_e", r_e}, {"c", c}, {"K", k}, {"N", n}, {"beta", beta}, {"rounds", rounds}};
}

BrmParams brm_params(int t, int u, int b, int r, int r_query) {
    if (t < 0 || u < 0 || b < 0 || r < 0 || r_query < 0) fail(Errc::InfeasibleParameters, "negative parameter");
    // Query code distance 2^(m - r') must cover T + 1 colluders.
    if ((1L << (r_query + 1)) < t + 1) fail(Errc::InfeasibleParameters, "r' too small for the collusion level");
    BrmParams p;
    p.t = t;
    p.u = u;
    p.b = b;
    p.r = r;
    p.r_query = r_query;
    p.m = r + ceil_log2(static_cast<long>(t + 1) * (u + 2 * b + 1));
    p.r_e = p.m - r - ceil_log2(u + 2 * b + 1);
    if (p.m > 30) fail(Errc::InfeasibleParameters, "too many servers");
    for (int i = r + r_query + 1; i <= r + p.r_e; ++i) p.c += binom(p.m, i);
    if (p.c <= 0) fail(Errc::InfeasibleParameters, "no downloadable coefficients (r + r_e <= r + r')");
    for (int i = 0; i <= r; ++i) p.k += binom(p.m, i);
    p.n = 1L << p.m;
    const long l = std::lcm(p.c, p.k);
    p.beta = l / p.k;
    p.rounds = l / p.c;
    return p;
}

ProtocolReport brm_robust_run(const BrmParams& params, size_t theta, const Adversary& adv, Rng& rng, size_t m_files) {
    check_example_params(params);
    if (theta >= m_files) fail(Errc::OutOfRange, "file index out of range");
    const Field f2 = Field::make(2);
    const size_t n = params.n, k = params.k, beta = params.beta;
    for (const auto* set : {&adv.byzantine, &adv.unresponsive, &adv.colluding})
        for (size_t s : *set)
            if (s >= n) fail(Errc::OutOfRange, "adversarial server index out of range");

    const LinearCode storage = codes::brm(params.r, kBrmM);
    const LinearCode query = codes::brm(params.r_query, kBrmM);
    const auto storage_monos = codes::brm_monomials(params.r, kBrmM);
    const auto response_monos = codes::brm_monomials(2, kBrmM);
    const Mat response_gen = codes::brm(2, kBrmM).generator();
    const auto& dec = brm2_decoder();

    const Mat x = rng.mat(f2, m_files * beta, k);
    const StorageSystem sys = store(x, storage, 0, rng, beta);

    // Linear equations over the beta*k desired bits, unknown (b, j) at b*k + j.
    const size_t unknowns = beta * k;
    std::vector<Vec> eqs;
    Vec rhs;
    auto solved = [&](size_t idx) -> std::optional<FieldElem> {
        if (eqs.empty()) return std::nullopt;
        auto y = solve_left(Mat::from_rows(f2, eqs, unknowns), unit(f2, unknowns, idx));
        if (!y) return std::nullopt;
        return dot(*y, rhs);
    };

    std::vector<size_t> erasures = adv.unresponsive;
    std::sort(erasures.begin(), erasures.end());
    erasures.erase(std::unique(erasures.begin(), erasures.end()), erasures.end());

    for (long round = 0; round < params.rounds; ++round) {
        const auto& sched = brm_schedule()[round];
        QueryRound qr = star_query(theta, query, brm_retrieval(round, theta, m_files, beta), rng);
        Vec resp = answers(sys.y, qr.q);
        for (size_t s : adv.byzantine) resp[s] = rng.element(f2);
        for (size_t s : erasures) resp[s] = f2.zero();

        // Strip product terms above degree two; their bits came from earlier rounds.
        for (size_t b = 0; b < beta; ++b) {
            if (!sched[b]) continue;
            for (size_t j = 0; j < k; ++j) {
                const Monomial prod = product(*sched[b], storage_monos[j]);
                if (prod.size() <= 2) continue;
                auto bit = solved(b * k + j);
                if (!bit) fail(Errc::InfeasibleParameters, "schedule needs a bit not yet retrieved");
                if (bit->is_one()) resp = sub(resp, codes::brm_eval(prod, kBrmM));
            }
        }
        Vec word;
        try {
            word = dec.decode(resp, erasures);
        } catch (const Error& e) {
            if (e.code() != Errc::Ambiguous && e.code() != Errc::NoneInRadius) throw;
            fail(Errc::DecodingAmbiguous, "round " + std::to_string(round + 1) + ": " + e.what());
        }
        const Vec coeff = *solve_left(response_gen, word);
        for (size_t mono = 0; mono < response_monos.size(); ++mono) {
            if (response_monos[mono].size() != 2) continue;
            Vec eq = zeros(f2, unknowns);
            bool any = false;
            for (size_t b = 0; b < beta; ++b) {
                if (!sched[b]) continue;
                for (size_t j = 0; j < k; ++j) {
                    if (product(*sched[b], storage_monos[j]) != response_monos[mono]) continue;
                    eq[b * k + j] += f2.one();
                    any = true;
                }
            }
            if (!any) continue;
            eqs.push_back(eq);
            rhs.push_back(coeff[mono]);
        }
    }

    ProtocolReport rep;
    rep.scheme = "brm-pir";
    rep.params = params.to_json();
    rep.params["theta"] = theta + 1;
    rep.params["M"] = m_files;
    auto idx_json = [](const std::vector<size_t>& v) {
        Json a = Json::array();
        for (size_t s : v) a.push_back(s + 1);
        return a;
    };
    rep.params["byzantine"] = idx_json(adv.byzantine);
    rep.params["unresponsive"] = idx_json(adv.unresponsive);
    rep.params["colluding"] = idx_json(adv.colluding);
    // Whether the adversary stays inside the (T, U, B) budget the guarantee covers.
    rep.params["within_budget"] = {{"colluding", adv.colluding.size() <= static_cast<size_t>(params.t)},
                                   {"unresponsive", adv.unresponsive.size() <= static_cast<size_t>(params.u)},
                                   {"byzantine", adv.byzantine.size() <= static_cast<size_t>(params.b)}};
    rep.f_units = static_cast<long>(beta * k);
    rep.d_units = params.rounds * static_cast<long>(n);
    rep.rate = Rational(rep.f_units, rep.d_units);
    rep.seed = rng.seed();

    Mat out(f2, beta, k);
    bool complete = true;
    for (size_t b = 0; b < beta; ++b) {
        for (size_t j = 0; j < k; ++j) {
            auto bit = solved(b * k + j);
            complete = complete && bit.has_value();
            if (bit) out = out.with_entry(b, j, *bit);
        }
    }
    rep.retrieved = out;
    rep.correct = complete && out == x.row_range(theta * beta, (theta + 1) * beta);
    if (!adv.colluding.empty() && m_files >= 2) {
        const size_t other = theta == 0 ? 1 : 0;
        rep.audits.push_back(
            privacy_audit(brm_query_model(params, m_files), adv.colluding, {theta, other}, AuditMode::Exhaustive));
    }
    return rep;
}

QueryModel brm_query_model(const BrmParams& params, size_t m_files) {
    check_example_params(params);
    QueryModel qm;
    qm.field = Field::make(2);
    qm.servers = static_cast<size_t>(params.n);
    const size_t rows = m_files * static_cast<size_t>(params.beta);
    qm.blocks = static_cast<size_t>(params.rounds) * rows;
    qm.randomness = [](size_t) { return size_t{1}; };  // one coefficient of the repetition code per row
    const size_t beta = static_cast<size_t>(params.beta);
    std::vector<std::vector<Mat>> e(m_files);
    for (size_t t = 0; t < m_files; ++t)
        for (long r = 0; r < params.rounds; ++r) e[t].push_back(brm_retrieval(r, t, m_files, beta));
    qm.view = [e, rows](size_t theta, size_t block, const Vec& rand, const std::vector<size_t>& set) {
        const Mat& em = e[theta][block / rows];
        const size_t row = block % rows;
        std::vector<uint32_t> out;
        for (size_t s : set) out.push_back((rand[0] + em.at(row, s)).code());
        return out;
    };
    return qm;
}

}  // namespace qpirsim::pir
