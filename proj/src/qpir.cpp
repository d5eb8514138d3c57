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

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "qpirsim/qoracle.hpp"

namespace qpirsim::qpir {

using namespace linalg;
using codes::LinearCode;
using pir::Json;
using pir::StorageSystem;

// ---------------------------------------------------------------- capacity

Setting parse_setting(const std::string& s) {
    if (s == "pir") return Setting::Pir;
    if (s == "spir") return Setting::Spir;
    if (s == "qpir") return Setting::Qpir;
    fail(Errc::BadParameters, "setting must be pir, spir or qpir");
}

Layout parse_layout(const std::string& s) {
    if (s == "replicated") return Layout::Replicated;
    if (s == "mds") return Layout::Mds;
    fail(Errc::BadParameters, "storage must be replicated or mds");
}

const char* setting_name(Setting s) { return s == Setting::Pir ? "pir" : s == Setting::Spir ? "spir" : "qpir"; }
const char* layout_name(Layout l) { return l == Layout::Replicated ? "replicated" : "mds"; }

namespace {

long long checked_pow(long long base, long e) {
    __int128 r = 1;
    for (long i = 0; i < e; ++i) {
        r *= base;
        if (r > LLONG_MAX) fail(Errc::OutOfRange, "finite-M capacity overflows 64-bit arithmetic");
    }
    return static_cast<long long>(r);
}

Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace

Rational capacity(Setting s, Layout l, long n, long k, long t, std::optional<long> m_files) {
    if (l == Layout::Replicated) k = 1;
    if (n < 1 || k < 1 || t < 1 || k + t - 1 >= n) fail(Errc::OutOfRange, "need 1 <= T, 1 <= K and K + T - 1 < N");
    if (m_files && *m_files < 1) fail(Errc::OutOfRange, "need at least one file");
    // Servers' worth of download spent on interference.
    const long a = k + t - 1;
    switch (s) {
        case Setting::Qpir: return rmin(Rational(1), Rational(2 * (n - a), n));
        case Setting::Spir: return Rational(1) - Rational(a, n);
        case Setting::Pir:
            if (!m_files) return Rational(1) - Rational(a, n);
            // (1 - a/N) / (1 - (a/N)^M) = N^(M-1) (N - a) / (N^M - a^M)
            return Rational(checked_pow(n, *m_files - 1) * (n - a), checked_pow(n, *m_files) - checked_pow(a, *m_files));
    }
    fail(Errc::BadParameters, "unknown setting");
}

Rational mds_qubit_rate(long k, long t) { return (k + t) % 2 == 0 ? Rational(2, k + t) : Rational(2, k + t + 1); }

Rational lrc_rate(long lambda, long delta) {
    const long len = lambda + delta - 1;
    return len % 2 == 0 ? Rational(2, len) : Rational(2, len + 1);
}

Rational grs_rate(long n, long k, long t) {
    if (2 * (k + t - 1) < n) return Rational(1);
    return Rational(2 * (n - k - t + 1), n);
}

Rational csa_rate(long n, long x, long t, long k) {
    return rmin(Rational(1), Rational(2) * (Rational(1) - Rational(x + t + k - 1, n)));
}

Rational quantum_ceiling(const Rational& classical) { return rmin(Rational(1), Rational(2) * classical); }

std::vector<CapacityRow> capacity_table(const std::vector<long>& ns, const std::vector<long>& ks,
                                        const std::vector<long>& ts, std::optional<long> m_files) {
    std::vector<CapacityRow> rows;
    std::set<std::pair<long, long>> replicated;  // (N, T) already listed
    for (long n : ns) {
        for (long k : ks) {
            for (long t : ts) {
                if (n < 1 || k < 1 || t < 1 || k + t - 1 >= n) continue;
                for (Layout l : {Layout::Replicated, Layout::Mds}) {
                    if (l == Layout::Replicated && !replicated.insert({n, t}).second) continue;
                    CapacityRow r;
                    r.n = n;
                    r.k = l == Layout::Replicated ? 1 : k;
                    r.t = t;
                    r.layout = l;
                    r.pir = capacity(Setting::Pir, l, n, k, t);
                    r.spir = capacity(Setting::Spir, l, n, k, t);
                    r.qpir = capacity(Setting::Qpir, l, n, k, t);
                    r.ceiling = quantum_ceiling(r.pir);
                    if (m_files) r.pir_finite = capacity(Setting::Pir, l, n, k, t, m_files);
                    rows.push_back(r);
                }
            }
        }
    }
    return rows;
}

namespace {

std::vector<std::vector<std::string>> table_cells(const std::vector<CapacityRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    const bool finite = !rows.empty() && rows[0].pir_finite;
    cells.push_back({"storage", "N", "K", "T", "PIR", "SPIR", "QPIR", "min(1,2*PIR)"});
    if (finite) cells[0].push_back("PIR(M)");
    for (const auto& r : rows) {
        cells.push_back({layout_name(r.layout), std::to_string(r.n), std::to_string(r.k), std::to_string(r.t),
                         pir::to_string(r.pir), pir::to_string(r.spir), pir::to_string(r.qpir),
                         pir::to_string(r.ceiling)});
        if (finite) cells.back().push_back(pir::to_string(*r.pir_finite));
    }
    return cells;
}

}  // namespace

std::string capacity_table_text(const std::vector<CapacityRow>& rows) {
    const auto cells = table_cells(rows);
    std::vector<size_t> width(cells[0].size(), 0);
    for (const auto& line : cells)
        for (size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    std::string out;
    for (const auto& line : cells) {
        for (size_t c = 0; c < line.size(); ++c) {
            out += line[c];
            if (c + 1 < line.size()) out += std::string(width[c] - line[c].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

std::string capacity_table_csv(const std::vector<CapacityRow>& rows) {
    std::string out;
    for (const auto& line : table_cells(rows)) {
        for (size_t c = 0; c < line.size(); ++c) out += (c ? "," : "") + line[c];
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- shared helpers

namespace {

Json one_based(size_t theta) { return theta + 1; }

Vec successive_points(const Field& f, size_t n) {
    if (n > f.q()) fail(Errc::FieldTooSmall, "more evaluation points than field elements");
    Vec pts;
    FieldElem g = f.primitive(), x = f.one();
    for (size_t i = 0; i < std::min<size_t>(n, f.q() - 1); ++i, x *= g) pts.push_back(x);
    if (n == f.q()) pts.push_back(f.zero());
    return pts;
}

Mat single_entry(const Field& f, size_t rows, size_t cols, size_t r, size_t c) {
    return Mat(f, rows, cols).with_entry(r, c, f.one());
}

std::vector<uint32_t> codes_at(const Vec& v, const std::vector<size_t>& set, size_t offset = 0) {
    std::vector<uint32_t> out;
    for (size_t s : set) out.push_back(v[offset + s].code());
    return out;
}

// Qubit pairs per F_{4^L} symbol.
size_t qubits_per_symbol(const Field& f) {
    if (f.p() != 2 || f.mu() % 2) fail(Errc::BadParameters, "qubit schemes need a field F_{4^L}");
    return static_cast<size_t>(f.mu()) / 2;
}

// Sum of the servers' answers, transported as L parallel parity boxes.
FieldElem sum_via_boxes(const Vec& answers) {
    const Field f = answers.at(0).field(), f2 = Field::make(2);
    const size_t l = qubits_per_symbol(f), n = answers.size(), padded = n + n % 2;
    const nsumbox::SumBox box = parity_sum_box(padded);
    std::vector<Vec> bits;
    for (const auto& a : answers) bits.push_back(gf::phi(a, f2));
    Vec out(2 * l, f2.zero());
    for (size_t q = 0; q < l; ++q) {
        Vec x = zeros(f2, 2 * padded);
        for (size_t s = 0; s < n; ++s) {
            x[s] = bits[s][2 * q];
            x[padded + s] = bits[s][2 * q + 1];
        }
        const Vec y = nsumbox::apply(box, x);
        out[2 * q] = y[0];
        out[2 * q + 1] = y[1];
    }
    return gf::phi_inv(out, f);
}

struct MdsOutcome {
    Vec message;
    long qubits = 0;
    bool consistent = true;
};

// K rounds of the qubit protocol on storage y = X G_C: round r retrieves
// Y^theta_r as the sum of all answers, then X^theta = Y^theta_[K] G_[K]^-1.
MdsOutcome mds_qubit_core(const Mat& y, const LinearCode& c, size_t theta, Rng& rng, bool oracle) {
    const Field f = c.field();
    const size_t n = c.n(), k = c.k(), l = qubits_per_symbol(f);
    const LinearCode d = codes::dual(c);
    MdsOutcome out;
    Vec got;
    for (size_t r = 0; r < k; ++r) {
        pir::QueryRound qr = pir::star_query(theta, d, single_entry(f, y.rows(), n, theta, r), rng);
        const Vec a = pir::answers(y, qr.q);
        if (oracle) {
            const auto branches = example11_round(a);
            double total = 0;
            for (const auto& b : branches) {
                total += b.prob;
                out.consistent = out.consistent && b.value == branches.front().value;
            }
            out.consistent = out.consistent && std::abs(total - 1.0) < 1e-9;
            got.push_back(branches.front().value);
            out.qubits += 4;
        } else {
            got.push_back(sum_via_boxes(a));
            out.qubits += static_cast<long>(l * (n + n % 2));
        }
    }
    std::vector<size_t> first(k);
    std::iota(first.begin(), first.end(), 0);
    out.message = mul(got, inverse(c.generator().select_cols(first)));
    return out;
}

Vec pick(const Vec& v, size_t begin, size_t len) { return Vec(v.begin() + begin, v.begin() + begin + len); }

}  // namespace

// ---------------------------------------------------------------- qubit MDS

LinearCode example11_code() {
    Field f4 = Field::make(2, 2);
    FieldElem a = f4.from_coeffs({0, 1}), a2 = a * a;
    return LinearCode(Mat::from_rows({{f4.one(), f4.zero(), a2, a}, {f4.zero(), f4.one(), a, a2}}));
}

std::vector<OracleBranch> example11_round(const Vec& answers) {
    using namespace qoracle;
    if (answers.size() != 4) fail(Errc::DimensionMismatch, "the chain circuit takes four answers");
    const Field f = answers[0].field(), f2 = Field::make(2);
    if (f.p() != 2 || f.mu() != 2) fail(Errc::FieldMismatch, "the chain circuit takes answers in F_4");
    auto bits = [&](const FieldElem& x) {
        Vec c = gf::phi(x, f2);
        return std::pair<int, int>(static_cast<int>(c[0].code()), static_cast<int>(c[1].code()));
    };
    auto w = [](std::pair<int, int> a) { return weyl(a.first, a.second, 2); };
    // Qubits: 0 H1 | 1 H2L, 2 H2R | 3 H3L, 4 H3R | 5 H4 | 6 H2, 7 H3.
    PureState s = bell_state(0, 0, 2);
    for (int i = 0; i < 3; ++i) s = tensor(s, bell_state(0, 0, 2));
    s = apply(s, w(bits(answers[0])), {0});
    s = apply(s, w(bits(answers[1])), {1});
    s = apply(s, w(bits(answers[2])), {3});
    s = apply(s, w(bits(answers[3])), {5});
    std::vector<OracleBranch> out;
    for (const auto& b2 : bell_measure_branches(s, 1, 2)) {
        for (const auto& b3 : bell_measure_branches(b2.post, 3, 4)) {
            // Two-sum transmission of B2 + B3 over the (H2, H3) pair.
            PureState t = apply(b3.post, weyl(b2.outcome[0], b2.outcome[1], 2), {6});
            t = apply(t, weyl(-b3.outcome[0], b3.outcome[1], 2), {7});
            for (const auto& bb : bell_measure_branches(t, 6, 7)) {
                PureState u = apply(bb.post, weyl(bb.outcome[0], bb.outcome[1], 2), {5});
                for (const auto& fin : bell_measure_branches(u, 0, 5)) {
                    Vec v = {f2.from_int(fin.outcome[0]), f2.from_int(fin.outcome[1])};
                    out.push_back({b2.prob * b3.prob * bb.prob * fin.prob, gf::phi_inv(v, f)});
                }
            }
        }
    }
    return out;
}

nsumbox::SumBox parity_sum_box(size_t n) {
    if (n < 2 || n % 2) fail(Errc::BadParameters, "parity box needs an even number of transmitters");
    const Field f2 = Field::make(2);
    Mat g(f2, 2, 2 * n), h(f2, 2, 2 * n);
    for (size_t j = 0; j < n; ++j) {
        g = g.with_entry(0, j, f2.one());
        g = g.with_entry(1, n + j, f2.one());
    }
    h = h.with_entry(0, 0, f2.one()).with_entry(1, n, f2.one());
    const auto comp = symplectic::symplectic_complete(symplectic::SelfOrthMat(g));
    return nsumbox::build_kappa(g, comp.gperp, h);
}

namespace {

ProtocolReport mds_report(const std::string& scheme, const LinearCode& c, size_t theta, const Mat& files,
                          const MdsOutcome& o, const Rng& rng, bool oracle) {
    const size_t n = c.n(), k = c.k(), l = qubits_per_symbol(c.field());
    ProtocolReport rep;
    rep.scheme = scheme;
    rep.params = {{"N", n}, {"K", k}, {"T", n - k}, {"q", c.field().q()}, {"M", files.rows()}, {"theta", one_based(theta)}};
    rep.f_units = static_cast<long>(2 * l * k);
    rep.d_units = o.qubits;
    rep.rate = Rational(rep.f_units, rep.d_units);
    rep.retrieved = Mat::from_rows(c.field(), {o.message}, k);
    rep.correct = o.consistent && o.message == files.row(theta);
    rep.seed = rng.seed();
    rep.qudit_dimension = 2;
    rep.qudits_downloaded = o.qubits;
    rep.box_kind = oracle ? "teleportation chain" : "(2," + std::to_string(n + n % 2) + ")-sum box x" + std::to_string(l);
    rep.realization = oracle ? "oracle" : "sumbox";
    return rep;
}

}  // namespace

ProtocolReport mds_qubit_run(size_t theta, Rng& rng, std::optional<Mat> files, bool oracle) {
    const LinearCode c = example11_code();
    const Mat x = files ? *files : rng.mat(c.field(), 2, 2);
    if (x.field() != c.field() || x.cols() != 2) fail(Errc::DimensionMismatch, "files must be rows of two F_4 symbols");
    if (theta >= x.rows()) fail(Errc::OutOfRange, "file index out of range");
    const StorageSystem sys = pir::store(x, c, 0, rng);
    const MdsOutcome o = mds_qubit_core(sys.y, c, theta, rng, oracle);
    return mds_report("mds-qubit", c, theta, x, o, rng, oracle);
}

LinearCode mds_qubit_code(size_t n, size_t k) {
    if (n < 2 || k < 1 || k >= n) fail(Errc::BadParameters, "need 1 <= K < N");
    int l = 1;
    while ((1L << (2 * l)) < static_cast<long>(n)) ++l;
    const Field f = Field::make(2, 2 * l);
    return codes::grs(successive_points(f, n), ones(f, n), k);
}

ProtocolReport mds_qubit_sumbox_run(size_t n, size_t k, size_t theta, Rng& rng, size_t m_files) {
    const LinearCode c = mds_qubit_code(n, k);
    if (theta >= m_files) fail(Errc::OutOfRange, "file index out of range");
    const Mat x = rng.mat(c.field(), m_files, k);
    const StorageSystem sys = pir::store(x, c, 0, rng);
    const MdsOutcome o = mds_qubit_core(sys.y, c, theta, rng, false);
    return mds_report("mds-qubit", c, theta, x, o, rng, false);
}

QueryModel mds_qubit_query_model(const LinearCode& storage, size_t m_files) {
    const LinearCode d = codes::dual(storage);
    const Mat gd = d.generator();
    const size_t k = storage.k();
    QueryModel qm;
    qm.field = storage.field();
    qm.servers = storage.n();
    qm.blocks = k * m_files;
    qm.randomness = [r = d.k()](size_t) { return r; };
    qm.view = [gd, m_files](size_t theta, size_t block, const Vec& rand, const std::vector<size_t>& set) {
        const size_t round = block / m_files, row = block % m_files;
        Vec q = mul(rand, gd);
        if (row == theta) q[round] += q[round].field().one();
        return codes_at(q, set);
    };
    return qm;
}

// ---------------------------------------------------------------- LRC

ProtocolReport lrc_qpir_run(const codes::LrcCode& lrc, size_t theta, Rng& rng, size_t m_files) {
    const Field f = lrc.base.field();
    const size_t l = qubits_per_symbol(f), k = lrc.base.k(), lambda = lrc.lambda;
    if (theta >= m_files) fail(Errc::OutOfRange, "file index out of range");
    const Mat x = rng.mat(f, m_files, k);
    const StorageSystem sys = pir::store(x, lrc.base, 0, rng);
    Vec message;
    long qubits = 0;
    bool consistent = true;
    // The base generator is block diagonal, so group g stores X[:, g lambda ..] G_local.
    for (size_t g = 0; g < lrc.repair_sets.size(); ++g) {
        const MdsOutcome o = mds_qubit_core(sys.y.select_cols(lrc.repair_sets[g]), lrc.local[g], theta, rng, false);
        message.insert(message.end(), o.message.begin(), o.message.end());
        qubits += o.qubits;
        consistent = consistent && o.consistent;
    }
    ProtocolReport rep;
    rep.scheme = "lrc-qpir";
    rep.params = {{"N", lrc.base.n()}, {"K", k},          {"lambda", lambda}, {"delta", lrc.delta},
                  {"q", f.q()},        {"M", m_files}, {"theta", one_based(theta)}};
    rep.f_units = static_cast<long>(2 * l * k);
    rep.d_units = qubits;
    rep.rate = Rational(rep.f_units, rep.d_units);
    rep.retrieved = Mat::from_rows(f, {message}, k);
    rep.correct = consistent && message == x.row(theta);
    rep.seed = rng.seed();
    rep.qudit_dimension = 2;
    rep.qudits_downloaded = qubits;
    const size_t local_n = lambda + lrc.delta - 1;
    rep.box_kind = "(2," + std::to_string(local_n + local_n % 2) + ")-sum box x" + std::to_string(l) + " per group";
    rep.realization = "sumbox";
    return rep;
}

QueryModel lrc_query_model(const codes::LrcCode& lrc, size_t m_files) {
    const size_t groups = lrc.repair_sets.size(), lambda = lrc.lambda;
    std::vector<Mat> gd;
    std::map<size_t, std::pair<size_t, size_t>> where;  // server -> (group, local index)
    for (size_t g = 0; g < groups; ++g) {
        gd.push_back(codes::dual(lrc.local[g]).generator());
        for (size_t j = 0; j < lrc.repair_sets[g].size(); ++j) where[lrc.repair_sets[g][j]] = {g, j};
    }
    QueryModel qm;
    qm.field = lrc.base.field();
    qm.servers = lrc.base.n();
    qm.blocks = groups * lambda * m_files;
    qm.randomness = [r = lrc.delta - 1](size_t) { return r; };
    qm.view = [=](size_t theta, size_t block, const Vec& rand, const std::vector<size_t>& set) {
        const size_t g = block / (lambda * m_files), round = block / m_files % lambda, row = block % m_files;
        Vec q = mul(rand, gd[g]);
        if (row == theta) q[round] += q[round].field().one();
        std::vector<uint32_t> out;
        for (size_t s : set) {
            auto it = where.find(s);
            if (it != where.end() && it->second.first == g) out.push_back(q[it->second.second].code());
        }
        return out;
    };
    return qm;
}

// ---------------------------------------------------------------- GRS

namespace {

// Multipliers u with GRS_kk(points, u) containing its dual, preferring u = v.
// The dual has multipliers 1/(u_j pi_j), pi_j = prod_{i != j}(a_j - a_i), and
// lies inside the code iff u^perp = u g(points) with deg g <= 2 kk - n.
std::optional<Vec> self_dual_multipliers(const Vec& points, const Vec& v, size_t kk) {
    const size_t n = points.size();
    const Field f = points[0].field();
    const size_t dmax = 2 * kk - n;
    const LinearCode low(vandermonde(points, dmax + 1));
    auto works = [&](const Vec& u) {
        const Vec ud = codes::grs_dual_multipliers(points, u);
        Vec ratio;
        for (size_t j = 0; j < n; ++j) ratio.push_back(ud[j] / u[j]);
        return low.contains(ratio);
    };
    if (works(v)) return v;
    std::map<uint32_t, FieldElem> root;
    for (const auto& e : f.elements()) root.emplace((e * e).code(), e);
    Vec pi;
    for (size_t j = 0; j < n; ++j) {
        FieldElem p = f.one();
        for (size_t i = 0; i < n; ++i)
            if (i != j) p *= points[j] - points[i];
        pi.push_back(p);
    }
    if (std::pow(static_cast<double>(f.q()), static_cast<double>(dmax + 1)) > 1048576.0)
        fail(Errc::NoWeaklySelfDualStarCode, "search space for the multiplier polynomial too large");
    const Mat vm = vandermonde(points, dmax + 1);
    std::optional<Vec> found;
    // Odometer over the coefficients of g.
    std::vector<uint32_t> digit(dmax + 1, 0);
    while (!found) {
        Vec coeff;
        for (uint32_t d : digit) coeff.push_back(f.elem(d));
        const Vec g = mul(coeff, vm);
        Vec u;
        for (size_t j = 0; j < n && u.size() == j; ++j) {
            if (g[j].is_zero()) break;
            auto it = root.find((g[j] * pi[j]).inverse().code());
            if (it == root.end()) break;
            u.push_back(it->second);
        }
        if (u.size() == n && works(u)) found = u;
        size_t i = 0;
        for (; i <= dmax; ++i) {
            if (++digit[i] < f.q()) break;
            digit[i] = 0;
        }
        if (i > dmax) break;
    }
    return found;
}

Mat scale_cols(const Mat& m, const Vec& s) { return m * diag(m.field(), s); }

}  // namespace

Mat GrsScheme::round_selector(size_t round) const {
    Mat m(field, 2 * c, 2 * n);
    for (size_t j = 0; j < c; ++j) {
        const size_t srv = schedule[round * c + j].second;
        m = m.with_entry(j, srv, field.one()).with_entry(c + j, n + srv, field.one());
    }
    return m;
}

Mat GrsScheme::retrieval(size_t round, size_t theta, size_t m_files) const {
    Mat e(field, m_files * beta, 2 * n);
    for (size_t j = 0; j < c; ++j) {
        const auto [b, srv] = schedule[round * c + j];
        e = e.with_entry(theta * beta + b, srv, field.one()).with_entry(theta * beta + b, n + srv, field.one());
    }
    return e;
}

nsumbox::SumBox GrsScheme::box(size_t round) const {
    return nsumbox::build_kappa(g_s.row_range(0, 2 * c), g_s, round_selector(round));
}

GrsScheme grs_scheme(size_t n, size_t k, size_t t, long q) {
    if (k < 1 || t < 1 || k + t - 1 >= n || 2 * (k + t - 1) < n)
        fail(Errc::BadParameters, "need N/2 <= K + T - 1 < N");
    GrsScheme s;
    s.field = Field::of_order(q);
    const Field f = s.field;
    s.n = n;
    s.k = k;
    s.t = t;
    s.c = n - k - t + 1;
    const size_t l = std::lcm(s.c, k);
    s.beta = l / k;
    s.rounds = l / s.c;
    s.points = successive_points(f, n);
    const Vec v = ones(f, n);
    const size_t kk = k + t - 1;
    auto u = self_dual_multipliers(s.points, v, kk);
    if (!u) fail(Errc::NoWeaklySelfDualStarCode, "no query multipliers make C' * D' contain its dual");
    for (size_t j = 0; j < n; ++j) s.query_multipliers.push_back((*u)[j] / v[j]);
    const LinearCode cp = codes::grs(s.points, v, k), dp = codes::grs(s.points, s.query_multipliers, t);
    s.storage = codes::cartesian(cp, cp);
    s.query = codes::cartesian(dp, dp);

    // Parity-check rows of S' (normalized to a leading 1), then S' rows completing a basis.
    Mat h = scale_cols(vandermonde(s.points, s.c), codes::grs_dual_multipliers(s.points, *u));
    for (size_t r = 0; r < h.rows(); ++r) {
        const FieldElem lead = h.at(r, 0).inverse();
        for (size_t j = 0; j < n; ++j) h = h.with_entry(r, j, h.at(r, j) * lead);
    }
    const Mat sp = scale_cols(vandermonde(s.points, kk), *u);
    Mat rest(f, 0, n);
    for (size_t r = 0; r < sp.rows() && rank(vstack(h, rest)) < kk; ++r) {
        Mat cand = vstack(rest, sp.row_range(r, r + 1));
        if (rank(vstack(h, cand)) > rank(vstack(h, rest))) rest = cand;
    }
    s.g_s = vstack(block_diag(h, h), block_diag(rest, rest));

    // Stripe-rotating schedule; falls back to consecutive servers when some
    // round would hit one server twice.
    auto fill = [&](bool rotate) {
        s.schedule.clear();
        for (size_t sym = 0; sym < k * s.beta; ++sym) {
            if (rotate)
                s.schedule.push_back({sym % s.beta, (sym / s.beta + sym % s.beta) % k});
            else
                s.schedule.push_back({sym / k, sym % n});
        }
        std::set<std::pair<size_t, size_t>> seen(s.schedule.begin(), s.schedule.end());
        if (seen.size() != s.schedule.size()) return false;
        for (size_t r = 0; r < s.rounds; ++r) {
            std::set<size_t> servers;
            for (size_t j = 0; j < s.c; ++j) servers.insert(s.schedule[r * s.c + j].second);
            if (servers.size() != s.c) return false;
        }
        return true;
    };
    if (!fill(true) && !fill(false)) fail(Errc::BadParameters, "no retrieval schedule");
    return s;
}

ProtocolReport grs_qpir_run(size_t n, size_t k, size_t t, long q, size_t theta, Rng& rng, size_t m_files) {
    return grs_qpir_run(grs_scheme(n, k, t, q), theta, rng, m_files);
}

ProtocolReport grs_qpir_run(const GrsScheme& s, size_t theta, Rng& rng, size_t m_files) {
    if (theta >= m_files) fail(Errc::OutOfRange, "file index out of range");
    const Field f = s.field;
    const Mat x = rng.mat(f, m_files * s.beta, 2 * s.k);
    const StorageSystem sys = pir::store(x, s.storage, 0, rng, s.beta, 2);
    // (instance, stripe) -> server -> symbol
    std::map<std::pair<size_t, size_t>, std::map<size_t, FieldElem>> got;
    for (size_t r = 0; r < s.rounds; ++r) {
        pir::QueryRound qr = pir::star_query(theta, s.query, s.retrieval(r, theta, m_files), rng);
        const Vec out = nsumbox::apply(s.box(r), pir::answers(sys.y, qr.q));
        for (size_t j = 0; j < s.c; ++j) {
            const auto [b, srv] = s.schedule[r * s.c + j];
            got[{0, b}][srv] = out[j];
            got[{1, b}][srv] = out[s.c + j];
        }
    }
    const Mat gc = s.storage.generator().row_range(0, s.k).col_range(0, s.n);
    Mat out(f, s.beta, 2 * s.k);
    for (size_t p = 0; p < 2; ++p) {
        for (size_t b = 0; b < s.beta; ++b) {
            std::vector<size_t> servers;
            Vec vals;
            for (const auto& [srv, v] : got[{p, b}]) {
                servers.push_back(srv);
                vals.push_back(v);
            }
            const Vec msg = mul(vals, inverse(gc.select_cols(servers)));
            for (size_t j = 0; j < s.k; ++j) out = out.with_entry(b, p * s.k + j, msg[j]);
        }
    }
    ProtocolReport rep;
    rep.scheme = "grs-qpir";
    rep.params = {{"N", s.n}, {"K", s.k},         {"T", s.t},          {"q", f.q()},
                  {"c", s.c}, {"beta", s.beta}, {"rounds", s.rounds}, {"M", m_files}, {"theta", one_based(theta)}};
    rep.f_units = static_cast<long>(2 * s.k * s.beta);
    rep.d_units = static_cast<long>(s.rounds * s.n);
    rep.unit_bits = std::log2(static_cast<double>(f.q()));
    rep.rate = Rational(rep.f_units, rep.d_units);
    rep.retrieved = out;
    rep.correct = out == x.row_range(theta * s.beta, (theta + 1) * s.beta);
    rep.seed = rng.seed();
    rep.qudit_dimension = static_cast<int>(f.q());
    rep.qudits_downloaded = rep.d_units;
    rep.box_kind = "(" + std::to_string(2 * s.c) + "," + std::to_string(s.n) + ")-sum box";
    rep.realization = "sumbox";
    return rep;
}

QueryModel grs_query_model(const GrsScheme& s, size_t m_files) {
    const size_t rows = m_files * s.beta;
    std::vector<std::vector<Mat>> e(m_files);
    for (size_t t = 0; t < m_files; ++t)
        for (size_t r = 0; r < s.rounds; ++r) e[t].push_back(s.retrieval(r, t, m_files));
    QueryModel qm;
    qm.field = s.field;
    qm.servers = s.n;
    qm.blocks = s.rounds * rows;
    qm.randomness = [r = 2 * s.t](size_t) { return r; };
    qm.view = [e, rows, gd = s.query.generator(), n = s.n](size_t theta, size_t block, const Vec& rand,
                                                           const std::vector<size_t>& set) {
        const Vec q = add(mul(rand, gd), e[theta][block / rows].row(block % rows));
        std::vector<uint32_t> out = codes_at(q, set);
        const auto second = codes_at(q, set, n);
        out.insert(out.end(), second.begin(), second.end());
        return out;
    };
    return qm;
}

// ---------------------------------------------------------------- CSA

LinearCode CsaScheme::storage_code(size_t stripe) const {
    std::vector<Vec> rows = {ones(field, n)};
    for (size_t j = 1; j <= x_sec; ++j) {
        Vec r;
        for (size_t s = 0; s < n; ++s) r.push_back((poles[stripe] - points[s]).pow(static_cast<long long>(j)));
        rows.push_back(r);
    }
    return LinearCode(Mat::from_rows(field, rows, n));
}

LinearCode CsaScheme::query_code(size_t stripe) const {
    std::vector<Vec> rows;
    for (size_t j = 0; j < t; ++j) {
        Vec r;
        for (size_t s = 0; s < n; ++s) r.push_back((poles[stripe] - points[s]).pow(static_cast<long long>(j)));
        rows.push_back(r);
    }
    return LinearCode(Mat::from_rows(field, rows, n));
}

Vec CsaScheme::cauchy(size_t stripe) const {
    Vec r;
    for (size_t s = 0; s < n; ++s) r.push_back((poles[stripe] - points[s]).inverse());
    return r;
}

CsaScheme csa_scheme(size_t n, size_t x_sec, size_t t, size_t l, long q, bool symmetric) {
    CsaScheme s;
    s.field = Field::of_order(q);
    if (s.field.p() == 2) fail(Errc::ParameterInfeasible, "CSA boxes need odd q");
    if (t < 1 || l < 1 || x_sec + t + l > n) fail(Errc::ParameterInfeasible, "need 1 <= L <= N - X - T");
    if (symmetric ? 2 * l > n : l > n / 2) fail(Errc::ParameterInfeasible, "too many desired symbols for the box");
    if (n + l > s.field.q()) fail(Errc::ParameterInfeasible, "need N + L distinct field elements");
    s.n = n;
    s.x_sec = x_sec;
    s.t = t;
    s.l = l;
    s.symmetric = symmetric;
    for (size_t j = 0; j < n; ++j) s.points.push_back(s.field.elem(static_cast<uint32_t>(j)));
    for (size_t j = 0; j < l; ++j) s.poles.push_back(s.field.elem(static_cast<uint32_t>(n + j)));
    s.u = ones(s.field, n);
    s.box = symmetric ? nsumbox::qcsa_symmetric_box(s.points, s.poles, s.u) : nsumbox::qcsa_box(s.points, s.poles, s.u);
    return s;
}

CsaRun csa_qpir_execute(const CsaScheme& s, size_t theta, Rng& rng, size_t m_files, std::optional<Mat> files) {
    if (theta >= m_files) fail(Errc::OutOfRange, "file index out of range");
    const Field f = s.field;
    const size_t n = s.n, l = s.l;
    const Mat x = files ? *files : rng.mat(f, m_files, 2 * l);
    if (x.rows() != m_files || x.cols() != 2 * l) fail(Errc::DimensionMismatch, "files must be M x 2L");
    CsaRun run;
    std::vector<Vec> ans(2, zeros(f, n));
    for (size_t p = 0; p < 2; ++p) {
        for (size_t b = 0; b < l; ++b) {
            run.storage.push_back(pir::store(x.col_range(p * l + b, p * l + b + 1), s.storage_code(b), s.x_sec, rng));
            Mat e(f, m_files, n);
            const Vec cv = s.cauchy(b);
            for (size_t j = 0; j < n; ++j) e = e.with_entry(theta, j, cv[j]);
            pir::QueryRound qr = pir::star_query(theta, s.query_code(b), e, rng);
            ans[p] = add(ans[p], pir::answers(run.storage.back().y, qr.q));
        }
    }
    const Vec v = nsumbox::qcsa_partner_multipliers(s.points, s.u);
    Vec input = hadamard(ans[0], s.u);
    const Vec second = hadamard(ans[1], v);
    input.insert(input.end(), second.begin(), second.end());
    run.box_output = nsumbox::apply(s.box, input);
    const size_t second_at = s.symmetric ? l : n / 2;
    Vec desired = pick(run.box_output, 0, l);
    const Vec d2 = pick(run.box_output, second_at, l);
    desired.insert(desired.end(), d2.begin(), d2.end());

    ProtocolReport& rep = run.report;
    rep.scheme = s.symmetric ? "csa-qpir-symmetric" : "csa-qpir";
    rep.params = {{"N", n}, {"X", s.x_sec}, {"T", s.t}, {"K", 1}, {"L", l}, {"q", f.q()}, {"M", m_files},
                  {"theta", one_based(theta)}, {"symmetric", s.symmetric}};
    rep.f_units = static_cast<long>(2 * l);
    rep.d_units = static_cast<long>(n);
    rep.unit_bits = std::log2(static_cast<double>(f.q()));
    rep.rate = Rational(rep.f_units, rep.d_units);
    rep.retrieved = Mat::from_rows(f, {desired}, 2 * l);
    rep.correct = desired == x.row(theta);
    rep.seed = rng.seed();
    rep.qudit_dimension = static_cast<int>(f.q());
    rep.qudits_downloaded = static_cast<long>(n);
    rep.box_kind = s.symmetric ? "(" + std::to_string(2 * l) + "," + std::to_string(n) + ")-sum box" : "maximal QCSA box";
    rep.realization = "sumbox";
    return run;
}

ProtocolReport csa_qpir_run(size_t n, size_t x_sec, size_t t, size_t l, long q, size_t theta, bool symmetric, Rng& rng,
                            size_t m_files) {
    return csa_qpir_execute(csa_scheme(n, x_sec, t, l, q, symmetric), theta, rng, m_files).report;
}

QueryModel csa_query_model(const CsaScheme& s, size_t m_files) {
    std::vector<Mat> gd;
    std::vector<Vec> cv;
    for (size_t b = 0; b < s.l; ++b) {
        gd.push_back(s.query_code(b).generator());
        cv.push_back(s.cauchy(b));
    }
    QueryModel qm;
    qm.field = s.field;
    qm.servers = s.n;
    // Block (instance, stripe, file).
    qm.blocks = 2 * s.l * m_files;
    qm.randomness = [t = s.t](size_t) { return t; };
    qm.view = [gd, cv, m_files](size_t theta, size_t block, const Vec& rand, const std::vector<size_t>& set) {
        const size_t stripe = block / m_files % gd.size(), row = block % m_files;
        Vec q = mul(rand, gd[stripe]);
        if (row == theta) q = add(q, cv[stripe]);
        return codes_at(q, set);
    };
    return qm;
}

// ---------------------------------------------------------------- BRM

namespace {

constexpr int kM = 4;
constexpr size_t kK = 5, kN = 16, kLow = 11;

Vec retrieval_row() {
    const Mat ge = codes::brm_full(kM).row_range(kLow, kN);
    return mul(ones(Field::make(2), kK), ge);
}

}  // namespace

Mat brm_t_matrix() {
    const Mat full = codes::brm_full(kM);
    const Mat gc = full.row_range(0, kK), ge = full.row_range(kLow, kN);
    const Vec e = retrieval_row();
    std::vector<Vec> rows;
    for (size_t r = 0; r < kK; ++r) {
        auto t = solve_left(ge, hadamard(gc.row(r), e));
        if (!t) fail(Errc::Singular, "C * E is not inside E");
        rows.push_back(*t);
    }
    return Mat::from_rows(Field::make(2), rows, kK);
}

ProtocolReport brm_qpir_run(size_t theta, Rng& rng, size_t m_files) {
    if (theta >= m_files) fail(Errc::OutOfRange, "file index out of range");
    const Field f2 = Field::make(2);
    const Mat full = codes::brm_full(kM);
    const LinearCode c(full.row_range(0, kK));
    const Mat t_inv = inverse(brm_t_matrix());
    const nsumbox::SumBox box = nsumbox::brm_box(kM);
    const Vec e = retrieval_row();
    const Mat x = rng.mat(f2, m_files, 2 * kK);
    Vec input;
    for (size_t p = 0; p < 2; ++p) {
        const StorageSystem sys = pir::store(x.col_range(p * kK, (p + 1) * kK), c, 0, rng);
        Mat em(f2, m_files, kN);
        for (size_t j = 0; j < kN; ++j) em = em.with_entry(theta, j, e[j]);
        pir::QueryRound qr = pir::star_query(theta, c, em, rng);
        const Vec a = pir::answers(sys.y, qr.q);
        input.insert(input.end(), a.begin(), a.end());
    }
    const Vec out = nsumbox::apply(box, input);
    // Output half p is (3 interference bits, X^{p,theta} T).
    Vec got;
    for (size_t p = 0; p < 2; ++p) {
        const Vec xp = mul(pick(out, p * kN / 2 + kN / 2 - kK, kK), t_inv);
        got.insert(got.end(), xp.begin(), xp.end());
    }
    ProtocolReport rep;
    rep.scheme = "brm-qpir";
    rep.params = {{"m", kM}, {"r", 1}, {"r_query", 1}, {"N", kN}, {"K", kK}, {"M", m_files}, {"theta", one_based(theta)}};
    rep.f_units = static_cast<long>(2 * kK);
    rep.d_units = static_cast<long>(kN);
    rep.rate = Rational(rep.f_units, rep.d_units);
    rep.retrieved = Mat::from_rows(f2, {got}, 2 * kK);
    rep.correct = got == x.row(theta);
    rep.seed = rng.seed();
    rep.qudit_dimension = 2;
    rep.qudits_downloaded = static_cast<long>(kN);
    rep.box_kind = "BRM N-sum box";
    rep.realization = "sumbox";
    return rep;
}

QueryModel brm_qpir_query_model(size_t m_files) {
    QueryModel qm;
    qm.field = Field::make(2);
    qm.servers = kN;
    qm.blocks = 2 * m_files;
    qm.randomness = [](size_t) { return kK; };
    qm.view = [gd = codes::brm_full(kM).row_range(0, kK), e = retrieval_row(), m_files](
                  size_t theta, size_t block, const Vec& rand, const std::vector<size_t>& set) {
        Vec q = mul(rand, gd);
        if (block % m_files == theta) q = add(q, e);
        return codes_at(q, set);
    };
    return qm;
}

}  // namespace qpirsim::qpir
