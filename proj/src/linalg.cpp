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

#include "qpirsim/linalg.hpp"

#include <set>
#include <sstream>

namespace qpirsim::linalg {

namespace {

void require_same_field(const Field& a, const Field& b) {
    if (a != b) fail(Errc::FieldMismatch, "matrices over different fields");
}

// In-place Gauss-Jordan on a row-major buffer; first nonzero pivot per column.
std::vector<size_t> reduce(const Field& f, std::vector<uint32_t>& d, size_t rows, size_t cols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && d[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            for (size_t j = 0; j < cols; ++j) std::swap(d[piv * cols + j], d[r * cols + j]);
        }
        const uint32_t inv = f.inv(d[r * cols + c]);
        for (size_t j = c; j < cols; ++j) d[r * cols + j] = f.mul(d[r * cols + j], inv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const uint32_t factor = d[i * cols + c];
            if (factor == 0) continue;
            const uint32_t nf = f.neg(factor);
            for (size_t j = c; j < cols; ++j) {
                d[i * cols + j] = f.add(d[i * cols + j], f.mul(nf, d[r * cols + j]));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Mat::Mat(Field f, size_t rows, size_t cols) : f_(f), r_(rows), c_(cols), d_(rows * cols, 0) {}

Mat Mat::identity(Field f, size_t n) {
    Mat m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.d_[i * n + i] = 1;
    return m;
}

Mat Mat::from_codes(Field f, size_t rows, size_t cols, std::vector<uint32_t> codes) {
    if (codes.size() != rows * cols) fail(Errc::DimensionMismatch, "code buffer size mismatch");
    for (uint32_t c : codes) {
        if (c >= f.q()) fail(Errc::OutOfRange, "element code out of range");
    }
    Mat m;
    m.f_ = f;
    m.r_ = rows;
    m.c_ = cols;
    m.d_ = std::move(codes);
    return m;
}

Mat Mat::from_ints(Field f, size_t rows, size_t cols, const std::vector<long>& values) {
    if (values.size() != rows * cols) fail(Errc::DimensionMismatch, "value count mismatch");
    std::vector<uint32_t> codes(values.size());
    for (size_t i = 0; i < values.size(); ++i) codes[i] = f.from_int(values[i]).code();
    return from_codes(f, rows, cols, std::move(codes));
}

Mat Mat::from_rows(Field f, const std::vector<Vec>& rows, size_t cols) {
    std::vector<uint32_t> codes;
    codes.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) fail(Errc::DimensionMismatch, "ragged rows");
        for (const auto& e : r) {
            if (e.field() != f) fail(Errc::FieldMismatch, "row entry from another field");
            codes.push_back(e.code());
        }
    }
    return from_codes(f, rows.size(), cols, std::move(codes));
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty() || rows[0].empty()) fail(Errc::DimensionMismatch, "cannot infer field from empty rows");
    return from_rows(rows[0][0].field(), rows, rows[0].size());
}

Vec Mat::row(size_t i) const {
    Vec v;
    v.reserve(c_);
    for (size_t j = 0; j < c_; ++j) v.push_back(at(i, j));
    return v;
}

Vec Mat::col(size_t j) const {
    Vec v;
    v.reserve(r_);
    for (size_t i = 0; i < r_; ++i) v.push_back(at(i, j));
    return v;
}

Mat Mat::transpose() const {
    Mat t(f_, c_, r_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) t.d_[j * r_ + i] = d_[i * c_ + j];
    }
    return t;
}

Mat Mat::select_rows(const std::vector<size_t>& idx) const {
    Mat m(f_, idx.size(), c_);
    for (size_t a = 0; a < idx.size(); ++a) {
        if (idx[a] >= r_) fail(Errc::OutOfRange, "row index out of range");
        std::copy(d_.begin() + idx[a] * c_, d_.begin() + (idx[a] + 1) * c_, m.d_.begin() + a * c_);
    }
    return m;
}

Mat Mat::select_cols(const std::vector<size_t>& idx) const {
    Mat m(f_, r_, idx.size());
    for (size_t b = 0; b < idx.size(); ++b) {
        if (idx[b] >= c_) fail(Errc::OutOfRange, "column index out of range");
    }
    for (size_t i = 0; i < r_; ++i) {
        for (size_t b = 0; b < idx.size(); ++b) m.d_[i * idx.size() + b] = d_[i * c_ + idx[b]];
    }
    return m;
}

Mat Mat::row_range(size_t begin, size_t end) const {
    std::vector<size_t> idx;
    for (size_t i = begin; i < end; ++i) idx.push_back(i);
    return select_rows(idx);
}

Mat Mat::col_range(size_t begin, size_t end) const {
    std::vector<size_t> idx;
    for (size_t j = begin; j < end; ++j) idx.push_back(j);
    return select_cols(idx);
}

Mat Mat::scaled(const FieldElem& s) const {
    require_same_field(f_, s.field());
    Mat m = *this;
    for (auto& v : m.d_) v = f_.mul(v, s.code());
    return m;
}

Mat Mat::with_entry(size_t i, size_t j, const FieldElem& v) const {
    require_same_field(f_, v.field());
    Mat m = *this;
    m.d_[i * c_ + j] = v.code();
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    require_same_field(f_, o.f_);
    if (c_ != o.r_) fail(Errc::DimensionMismatch, "product dimension mismatch");
    Mat m(f_, r_, o.c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t k = 0; k < c_; ++k) {
            const uint32_t a = d_[i * c_ + k];
            if (a == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) {
                uint32_t& dst = m.d_[i * o.c_ + j];
                dst = f_.add(dst, f_.mul(a, o.d_[k * o.c_ + j]));
            }
        }
    }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    require_same_field(f_, o.f_);
    if (r_ != o.r_ || c_ != o.c_) fail(Errc::DimensionMismatch, "sum dimension mismatch");
    Mat m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = f_.add(d_[i], o.d_[i]);
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    require_same_field(f_, o.f_);
    if (r_ != o.r_ || c_ != o.c_) fail(Errc::DimensionMismatch, "difference dimension mismatch");
    Mat m = *this;
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = f_.sub(d_[i], o.d_[i]);
    return m;
}

bool Mat::is_zero() const {
    for (uint32_t v : d_) {
        if (v != 0) return false;
    }
    return true;
}

bool Mat::is_identity() const {
    if (r_ != c_) return false;
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) {
            if (d_[i * c_ + j] != (i == j ? 1u : 0u)) return false;
        }
    }
    return true;
}

std::string Mat::to_text() const {
    std::ostringstream os;
    os << r_ << " " << c_ << " " << f_.spec() << "\n";
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) {
            if (j) os << " ";
            os << at(i, j).str();
        }
        os << "\n";
    }
    return os.str();
}

Mat Mat::from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    size_t rows = 0, cols = 0;
    std::string spec;
    if (!(is >> rows >> cols >> spec)) fail(Errc::BadMatrixText, "missing matrix header");
    Field f = Field::parse(spec);
    std::vector<uint32_t> codes;
    codes.reserve(rows * cols);
    for (size_t k = 0; k < rows * cols; ++k) {
        std::string tok;
        if (!(is >> tok)) fail(Errc::BadMatrixText, "too few matrix entries");
        std::vector<int> coeffs;
        std::istringstream ts(tok);
        std::string part;
        while (std::getline(ts, part, ',')) {
            try {
                coeffs.push_back(std::stoi(part));
            } catch (const std::exception&) {
                fail(Errc::BadMatrixText, "bad matrix entry '" + tok + "'");
            }
        }
        if (coeffs.size() != static_cast<size_t>(f.mu())) fail(Errc::BadMatrixText, "entry has wrong tuple length");
        for (int c : coeffs) {
            if (c < 0 || c >= f.p()) fail(Errc::BadMatrixText, "coefficient out of range");
        }
        codes.push_back(f.from_coeffs(coeffs).code());
    }
    std::string extra;
    if (is >> extra) fail(Errc::BadMatrixText, "trailing data after matrix");
    return from_codes(f, rows, cols, std::move(codes));
}

std::ostream& operator<<(std::ostream& os, const Mat& m) { return os << m.to_text(); }

Mat hstack(const Mat& a, const Mat& b) {
    require_same_field(a.field(), b.field());
    if (a.rows() != b.rows()) fail(Errc::DimensionMismatch, "hstack row mismatch");
    const size_t cols = a.cols() + b.cols();
    std::vector<uint32_t> codes(a.rows() * cols);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) codes[i * cols + j] = a.code(i, j);
        for (size_t j = 0; j < b.cols(); ++j) codes[i * cols + a.cols() + j] = b.code(i, j);
    }
    return Mat::from_codes(a.field(), a.rows(), cols, std::move(codes));
}

Mat vstack(const Mat& a, const Mat& b) {
    require_same_field(a.field(), b.field());
    if (a.cols() != b.cols()) fail(Errc::DimensionMismatch, "vstack column mismatch");
    std::vector<uint32_t> codes = a.codes();
    codes.insert(codes.end(), b.codes().begin(), b.codes().end());
    return Mat::from_codes(a.field(), a.rows() + b.rows(), a.cols(), std::move(codes));
}

Mat block_diag(const Mat& a, const Mat& b) {
    require_same_field(a.field(), b.field());
    return vstack(hstack(a, Mat(a.field(), a.rows(), b.cols())), hstack(Mat(a.field(), b.rows(), a.cols()), b));
}

Mat diag(Field f, const Vec& v) {
    Mat m(f, v.size(), v.size());
    for (size_t i = 0; i < v.size(); ++i) m = m.with_entry(i, i, v[i]);
    return m;
}

Vec mul(const Vec& x, const Mat& m) {
    if (x.size() != m.rows()) fail(Errc::DimensionMismatch, "vector-matrix dimension mismatch");
    const Field f = m.field();
    std::vector<uint32_t> acc(m.cols(), 0);
    for (size_t i = 0; i < x.size(); ++i) {
        require_same_field(f, x[i].field());
        const uint32_t a = x[i].code();
        if (a == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j) acc[j] = f.add(acc[j], f.mul(a, m.code(i, j)));
    }
    Vec out;
    out.reserve(acc.size());
    for (uint32_t c : acc) out.emplace_back(f, c);
    return out;
}

Vec mul(const Mat& m, const Vec& x) {
    if (x.size() != m.cols()) fail(Errc::DimensionMismatch, "matrix-vector dimension mismatch");
    const Field f = m.field();
    Vec out;
    out.reserve(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) {
        uint32_t acc = 0;
        for (size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m.code(i, j), x[j].code()));
        out.emplace_back(f, acc);
    }
    return out;
}

FieldElem dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "dot length mismatch");
    if (a.empty()) fail(Errc::DimensionMismatch, "dot of empty vectors");
    FieldElem acc = a[0].field().zero();
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Vec hadamard(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(Errc::LengthMismatch, "hadamard length mismatch");
    Vec out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
    return out;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector sum length mismatch");
    Vec out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector difference length mismatch");
    Vec out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

Vec scale(const Vec& a, const FieldElem& s) {
    Vec out;
    out.reserve(a.size());
    for (const auto& e : a) out.push_back(e * s);
    return out;
}

Vec zeros(Field f, size_t n) { return Vec(n, f.zero()); }
Vec ones(Field f, size_t n) { return Vec(n, f.one()); }

Vec unit(Field f, size_t n, size_t i) {
    Vec v = zeros(f, n);
    v.at(i) = f.one();
    return v;
}

size_t weight(const Vec& a) {
    size_t w = 0;
    for (const auto& e : a) w += e.is_zero() ? 0 : 1;
    return w;
}

Rref rref(const Mat& m) {
    std::vector<uint32_t> d = m.codes();
    auto pivots = reduce(m.field(), d, m.rows(), m.cols());
    return {Mat::from_codes(m.field(), m.rows(), m.cols(), std::move(d)), std::move(pivots)};
}

size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) fail(Errc::Singular, "inverse of a non-square matrix");
    const size_t n = m.rows();
    Mat aug = hstack(m, Mat::identity(m.field(), n));
    std::vector<uint32_t> d = aug.codes();
    auto pivots = reduce(m.field(), d, n, 2 * n);
    if (pivots.size() < n || pivots[n - 1] != n - 1) fail(Errc::Singular, "matrix is singular");
    return Mat::from_codes(m.field(), n, 2 * n, std::move(d)).col_range(n, 2 * n);
}

Mat right_kernel(const Mat& m) {
    const Field f = m.field();
    Rref r = rref(m);
    std::set<size_t> pivset(r.pivots.begin(), r.pivots.end());
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < m.cols(); ++j) {
        if (!pivset.count(j)) free_cols.push_back(j);
    }
    std::vector<uint32_t> codes(free_cols.size() * m.cols(), 0);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        const size_t fc = free_cols[k];
        codes[k * m.cols() + fc] = 1;
        for (size_t i = 0; i < r.pivots.size(); ++i) {
            codes[k * m.cols() + r.pivots[i]] = f.neg(r.reduced.code(i, fc));
        }
    }
    return Mat::from_codes(f, free_cols.size(), m.cols(), std::move(codes));
}

Mat row_basis(const Mat& m) {
    Rref r = rref(m);
    return r.reduced.row_range(0, r.pivots.size());
}

bool row_space_equal(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols() || a.field() != b.field()) return false;
    return row_basis(a) == row_basis(b);
}

bool row_space_contains(const Mat& big, const Mat& small) {
    if (small.rows() == 0) return true;
    return rank(vstack(big, small)) == rank(big);
}

std::optional<Vec> solve_left(const Mat& m, const Vec& b) {
    // x m = b  <=>  m^T x^T = b^T; reduce [m^T | b^T].
    const Field f = m.field();
    Mat aug = hstack(m.transpose(), Mat::from_rows(f, {b}, b.size()).transpose());
    Rref r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == m.rows()) return std::nullopt;
    Vec x = zeros(f, m.rows());
    for (size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced.at(i, m.rows());
    return x;
}

Mat vandermonde(const Vec& points, size_t k) {
    if (points.empty()) fail(Errc::DimensionMismatch, "no evaluation points");
    const Field f = points[0].field();
    std::set<uint32_t> seen;
    for (const auto& p : points) {
        if (p.field() != f) fail(Errc::FieldMismatch, "points from different fields");
        if (!seen.insert(p.code()).second) fail(Errc::DuplicatePoints, "evaluation points must be distinct");
    }
    return Mat::generate(f, k, points.size(), [&](size_t i, size_t j) { return points[j].pow(static_cast<long long>(i)); });
}

Mat cauchy_vandermonde(const Vec& a, const Vec& fpts, size_t k) {
    if (a.empty()) fail(Errc::DimensionMismatch, "no evaluation points");
    const Field f = a[0].field();
    std::set<uint32_t> seen;
    for (const auto& p : a) {
        if (!seen.insert(p.code()).second) fail(Errc::DuplicatePoints, "points in A must be distinct");
    }
    std::set<uint32_t> fseen;
    for (const auto& p : fpts) {
        if (p.field() != f) fail(Errc::FieldMismatch, "points from different fields");
        if (seen.count(p.code())) fail(Errc::OverlappingSets, "F and A must be disjoint");
        if (!fseen.insert(p.code()).second) fail(Errc::DuplicatePoints, "points in F must be distinct");
    }
    Mat cauchy = Mat::generate(f, fpts.size(), a.size(), [&](size_t i, size_t j) { return (fpts[i] - a[j]).inverse(); });
    if (k == 0) return cauchy;
    Mat v = vandermonde(a, k);
    return fpts.empty() ? v : vstack(cauchy, v);
}

}  // namespace qpirsim::linalg
