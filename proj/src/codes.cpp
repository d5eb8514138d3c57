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

#include "qpirsim/codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <random>
#include <string>

namespace qpirsim::codes {

using namespace linalg;

namespace {

constexpr uint64_t kEnumerationLimit = uint64_t{1} << 20;

uint64_t codeword_count(const LinearCode& c) {
    uint64_t total = 1;
    for (size_t i = 0; i < c.k(); ++i) {
        total *= c.field().q();
        if (total > kEnumerationLimit) fail(Errc::TooLargeToEnumerate, "q^k exceeds 2^20");
    }
    return total;
}

// Calls visit(word) for every codeword, word given as n codes.
void for_each_codeword(const LinearCode& c, const std::function<void(const std::vector<uint32_t>&)>& visit) {
    codeword_count(c);
    const Field f = c.field();
    const Mat& g = c.generator();
    std::vector<std::vector<uint32_t>> acc(c.k() + 1, std::vector<uint32_t>(c.n(), 0));
    std::function<void(size_t)> rec = [&](size_t row) {
        if (row == c.k()) {
            visit(acc[row]);
            return;
        }
        for (uint32_t a = 0; a < f.q(); ++a) {
            for (size_t j = 0; j < c.n(); ++j) acc[row + 1][j] = f.add(acc[row][j], f.mul(a, g.code(row, j)));
            rec(row + 1);
        }
    };
    rec(0);
}

void check_points(const Vec& points) {
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) fail(Errc::DuplicatePoints, "evaluation points repeat");
}

void check_multipliers(const Vec& v, size_t n) {
    if (v.size() != n) fail(Errc::LengthMismatch, "multiplier count differs from length");
    for (const auto& x : v)
        if (x.is_zero()) fail(Errc::ZeroMultiplier, "column multiplier is zero");
}

std::vector<long> parse_ints(std::string_view s) {
    std::vector<long> out;
    while (!s.empty()) {
        size_t comma = s.find(',');
        std::string_view tok = s.substr(0, comma);
        long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(Errc::BadParameters, "bad integer in code spec");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

LinearCode::LinearCode(Mat generator) : g_(std::move(generator)) {
    if (rank(g_) != g_.rows()) fail(Errc::BadParameters, "generator rows are dependent");
}

LinearCode LinearCode::spanned_by(const Mat& rows) { return LinearCode(row_basis(rows)); }

Vec LinearCode::encode(const Vec& message) const {
    if (message.size() != k()) fail(Errc::DimensionMismatch, "message length differs from dimension");
    return mul(message, g_);
}

Mat LinearCode::encode(const Mat& messages) const {
    if (messages.cols() != k()) fail(Errc::DimensionMismatch, "message length differs from dimension");
    return messages * g_;
}

bool LinearCode::contains(const Vec& word) const {
    return word.size() == n() && solve_left(g_, word).has_value();
}

bool same_code(const LinearCode& a, const LinearCode& b) {
    return a.n() == b.n() && row_space_equal(a.generator(), b.generator());
}

LinearCode repetition(Field f, size_t n) { return LinearCode(Mat::from_rows(f, {ones(f, n)}, n)); }

LinearCode parity_check(Field f, size_t n) { return dual(repetition(f, n)); }

LinearCode cartesian(const LinearCode& a, const LinearCode& b) {
    return LinearCode(block_diag(a.generator(), b.generator()));
}

LinearCode dual(const LinearCode& c) {
    Mat k = right_kernel(c.generator());
    if (k.rows() == 0) return LinearCode(Mat(c.field(), 0, c.n()));
    return LinearCode(k);
}

size_t min_distance(const LinearCode& c) {
    size_t best = c.n() + 1;
    bool first = true;
    for_each_codeword(c, [&](const std::vector<uint32_t>& w) {
        if (first) {  // the zero word comes first
            first = false;
            return;
        }
        size_t wt = 0;
        for (uint32_t x : w) wt += x != 0;
        best = std::min(best, wt);
    });
    return c.k() == 0 ? c.n() + 1 : best;
}

LinearCode star_product(const LinearCode& a, const LinearCode& b) {
    if (a.field() != b.field()) fail(Errc::FieldMismatch, "star product across fields");
    if (a.n() != b.n()) fail(Errc::LengthMismatch, "star product of different lengths");
    std::vector<Vec> rows;
    for (size_t i = 0; i < a.k(); ++i)
        for (size_t j = 0; j < b.k(); ++j) rows.push_back(hadamard(a.generator().row(i), b.generator().row(j)));
    return LinearCode::spanned_by(Mat::from_rows(a.field(), rows, a.n()));
}

bool is_mds(const LinearCode& c) {
    const size_t n = c.n(), k = c.k();
    if (k == 0 || k == n) return true;
    std::vector<int> mask(n, 0);
    std::fill(mask.end() - static_cast<long>(k), mask.end(), 1);
    do {
        std::vector<size_t> cols;
        for (size_t j = 0; j < n; ++j)
            if (mask[j]) cols.push_back(j);
        if (rank(c.generator().select_cols(cols)) < k) return false;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return true;
}

std::vector<size_t> information_set(const LinearCode& c, const std::vector<size_t>& forbidden) {
    std::vector<size_t> chosen;
    for (size_t j = 0; j < c.n() && chosen.size() < c.k(); ++j) {
        if (std::find(forbidden.begin(), forbidden.end(), j) != forbidden.end()) continue;
        chosen.push_back(j);
        if (rank(c.generator().select_cols(chosen)) < chosen.size()) chosen.pop_back();
    }
    if (chosen.size() < c.k()) fail(Errc::NoInformationSetAvoidingForbidden, "allowed columns have rank below k");
    return chosen;
}

LinearCode grs(const Vec& points, const Vec& multipliers, size_t k) {
    check_points(points);
    check_multipliers(multipliers, points.size());
    if (k > points.size()) fail(Errc::BadParameters, "GRS dimension exceeds length");
    return LinearCode(vandermonde(points, k) * diag(points.front().field(), multipliers));
}

Vec grs_dual_multipliers(const Vec& points, const Vec& multipliers) {
    check_points(points);
    check_multipliers(multipliers, points.size());
    Vec u;
    for (size_t i = 0; i < points.size(); ++i) {
        FieldElem prod = multipliers[i];
        for (size_t j = 0; j < points.size(); ++j)
            if (j != i) prod *= points[i] - points[j];
        u.push_back(prod.inverse());
    }
    return u;
}

LinearCode csa(const Vec& points, const Vec& poles, size_t k) {
    return LinearCode(cauchy_vandermonde(points, poles, k));
}

LinearCode qcsa(const Vec& points, const Vec& poles, const Vec& multipliers, size_t k) {
    check_multipliers(multipliers, points.size());
    return LinearCode(cauchy_vandermonde(points, poles, k) * diag(points.front().field(), multipliers));
}

std::vector<std::vector<int>> brm_monomials(int r, int m) {
    if (m < 0 || r < 0 || r > m) fail(Errc::BadParameters, "need 0 <= r <= m");
    std::vector<std::vector<int>> out;
    for (int deg = 0; deg <= r; ++deg) {
        std::vector<std::vector<int>> level;
        for (uint32_t mask = 0; mask < (1u << m); ++mask) {
            if (std::popcount(mask) != deg) continue;
            std::vector<int> vars;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) vars.push_back(i + 1);
            level.push_back(vars);
        }
        // Colex: compare from the largest variable down.
        std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) {
            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
        });
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

Vec brm_eval(const std::vector<int>& vars, int m) {
    Field f2 = Field::make(2);
    Vec out;
    for (uint32_t n = 0; n < (1u << m); ++n) {
        bool v = true;
        for (int i : vars) v = v && !((n >> (m - i)) & 1);
        out.push_back(v ? f2.one() : f2.zero());
    }
    return out;
}

LinearCode brm(int r, int m) {
    std::vector<Vec> rows;
    for (const auto& mono : brm_monomials(r, m)) rows.push_back(brm_eval(mono, m));
    return LinearCode(Mat::from_rows(Field::make(2), rows, size_t{1} << m));
}

Mat brm_full(int m) { return brm(m, m).generator(); }

LinearCode brm_via_vvectors(int r, int m) {
    if (m < 0 || r < 0 || r > m) fail(Errc::BadParameters, "need 0 <= r <= m");
    Field f2 = Field::make(2);
    // v[mm][i] is v_i^{mm}.
    std::vector<std::vector<Vec>> v(m + 1);
    for (int mm = 0; mm <= m; ++mm) {
        const size_t len = size_t{1} << mm;
        v[mm].push_back(ones(f2, len));
        for (int i = 1; i < mm; ++i) {
            Vec half = v[mm - 1][i];
            half.insert(half.end(), v[mm - 1][i].begin(), v[mm - 1][i].end());
            v[mm].push_back(half);
        }
        if (mm >= 1) {
            Vec top = ones(f2, len / 2), bottom = zeros(f2, len / 2);
            top.insert(top.end(), bottom.begin(), bottom.end());
            v[mm].push_back(top);
        }
    }
    std::vector<Vec> rows;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) > r) continue;
        Vec prod = v[m][0];
        for (int i = 1; i <= m; ++i)
            if (mask >> (i - 1) & 1) prod = hadamard(prod, v[m][i]);
        rows.push_back(prod);
    }
    return LinearCode(Mat::from_rows(f2, rows, size_t{1} << m));
}

long lrc_distance_bound(size_t n, size_t k, size_t lambda, size_t delta) {
    const long groups = static_cast<long>((k + lambda - 1) / lambda);
    return static_cast<long>(n) - static_cast<long>(k) + 1 - (groups - 1) * (static_cast<long>(delta) - 1);
}

LrcCode lrc_optimal(size_t n, size_t k, size_t lambda, size_t delta, Field f) {
    if (lambda == 0 || delta == 0 || k % lambda) fail(Errc::IndivisibleLocality, "lambda must divide K");
    const size_t groups = k / lambda, local_n = lambda + delta - 1;
    if (n != groups * local_n) fail(Errc::BadParameters, "N must equal (K/lambda)(lambda+delta-1)");
    if (f.q() < local_n) fail(Errc::FieldTooSmall, "field smaller than local code length");
    Vec pts;
    for (size_t i = 0; i < local_n; ++i) pts.push_back(f.elem(static_cast<uint32_t>(i)));
    LinearCode local(rref(vandermonde(pts, lambda)).reduced);
    LrcCode out;
    Mat g = local.generator();
    for (size_t b = 0; b < groups; ++b) {
        if (b) g = block_diag(g, local.generator());
        std::vector<size_t> set;
        for (size_t j = 0; j < local_n; ++j) set.push_back(b * local_n + j);
        out.repair_sets.push_back(set);
        out.local.push_back(local);
    }
    out.base = LinearCode(g);
    out.lambda = lambda;
    out.delta = delta;
    return out;
}

NearestDecoder::NearestDecoder(const LinearCode& c) : c_(c) {
    words_.reserve(codeword_count(c) * c.n());
    for_each_codeword(c, [&](const std::vector<uint32_t>& w) { words_.insert(words_.end(), w.begin(), w.end()); });
    d_ = c.n() + 1;
    for (size_t w = 1; w * c.n() < words_.size(); ++w) {
        size_t wt = 0;
        for (size_t j = 0; j < c.n(); ++j) wt += words_[w * c.n() + j] != 0;
        d_ = std::min(d_, wt);
    }
}

Vec NearestDecoder::decode(const Vec& word, const std::vector<size_t>& erasures) const {
    const size_t n = c_.n();
    if (word.size() != n) fail(Errc::DimensionMismatch, "word length differs from code length");
    std::vector<char> erased(n, 0);
    for (size_t e : erasures) {
        if (e >= n) fail(Errc::OutOfRange, "erasure index out of range");
        erased[e] = 1;
    }
    size_t ne = 0;
    for (char e : erased) ne += e;
    if (ne >= d_) fail(Errc::Ambiguous, "erasures reach the minimum distance");
    const size_t radius = (d_ - 1 - ne) / 2;
    long found = -1;
    for (size_t w = 0; w * n < words_.size(); ++w) {
        size_t dist = 0;
        for (size_t j = 0; j < n && dist <= radius; ++j)
            dist += !erased[j] && words_[w * n + j] != word[j].code();
        if (dist > radius) continue;
        if (found >= 0) fail(Errc::Ambiguous, "several codewords within radius");
        found = static_cast<long>(w);
    }
    if (found < 0) fail(Errc::NoneInRadius, "no codeword within decoding radius");
    Vec out;
    for (size_t j = 0; j < n; ++j) out.push_back(FieldElem(c_.field(), words_[found * n + j]));
    return out;
}

Vec decode_nearest(const LinearCode& c, const Vec& word, const std::vector<size_t>& erasures) {
    return NearestDecoder(c).decode(word, erasures);
}

LinearCode parse_code(std::string_view spec) {
    const size_t colon = spec.find(':');
    if (colon == std::string_view::npos) fail(Errc::BadParameters, "code spec needs family:params");
    const std::string_view family = spec.substr(0, colon);
    const std::vector<long> a = parse_ints(spec.substr(colon + 1));
    auto need = [&](size_t lo, size_t hi) {
        if (a.size() < lo || a.size() > hi) fail(Errc::BadParameters, "wrong parameter count for " + std::string(family));
        for (long x : a)
            if (x < 0) fail(Errc::BadParameters, "negative code parameter");
    };
    auto points = [](Field f, size_t n) {
        if (n > f.q()) fail(Errc::FieldTooSmall, "more points than field elements");
        Vec pts;
        FieldElem g = f.primitive(), x = f.one();
        for (size_t i = 0; i < std::min<size_t>(n, f.q() - 1); ++i, x *= g) pts.push_back(x);
        if (n == f.q()) pts.push_back(f.zero());
        return pts;
    };
    if (family == "grs") {
        need(3, 4);
        Field f = Field::of_order(a[2]);
        Vec pts = points(f, static_cast<size_t>(a[0]));
        Vec v = ones(f, pts.size());
        if (a.size() == 4) {
            std::mt19937_64 eng(static_cast<uint64_t>(a[3]));
            for (auto& x : v) x = f.elem(static_cast<uint32_t>(1 + eng() % (f.q() - 1)));
        }
        return grs(pts, v, static_cast<size_t>(a[1]));
    }
    if (family == "csa") {
        need(4, 4);
        Field f = Field::of_order(a[3]);
        const size_t n = static_cast<size_t>(a[0]), l = static_cast<size_t>(a[2]);
        Vec all = points(f, n + l);
        Vec pts(all.begin(), all.begin() + static_cast<long>(n)), poles(all.begin() + static_cast<long>(n), all.end());
        return csa(pts, poles, static_cast<size_t>(a[1]));
    }
    if (family == "brm") {
        need(2, 2);
        return brm(static_cast<int>(a[0]), static_cast<int>(a[1]));
    }
    if (family == "rep") {
        need(2, 2);
        return repetition(Field::of_order(a[1]), static_cast<size_t>(a[0]));
    }
    if (family == "lrc") {
        need(5, 5);
        return lrc_optimal(a[0], a[1], a[2], a[3], Field::of_order(a[4])).base;
    }
    fail(Errc::BadParameters, "unknown code family: " + std::string(family));
}

}  // namespace qpirsim::codes
