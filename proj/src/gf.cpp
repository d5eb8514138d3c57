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

#include <charconv>
#include <ostream>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace qpirsim::gf {

namespace {

// Conway polynomials, low-to-high.
const std::map<std::pair<int, int>, std::vector<int>>& canonical_moduli() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 1}, {1, 1}},       {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
        {{3, 1}, {1, 1}},       {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
        {{5, 1}, {3, 1}},       {{5, 2}, {2, 4, 1}},    {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 1, 4, 0, 1}},
        {{7, 1}, {4, 1}},       {{7, 2}, {3, 6, 1}},    {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
    };
    return table;
}

using Poly = std::vector<int>;

std::vector<int> unpack(uint32_t code, int p, int mu) {
    std::vector<int> c(mu);
    for (int i = 0; i < mu; ++i) {
        c[i] = static_cast<int>(code % p);
        code /= p;
    }
    return c;
}

uint32_t pack(const std::vector<int>& c, int p) {
    uint32_t code = 0;
    for (size_t i = c.size(); i-- > 0;) code = code * p + static_cast<uint32_t>(c[i]);
    return code;
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_mod(Poly a, const Poly& m, int p) {
    const size_t dm = m.size() - 1;
    for (size_t i = a.size(); i-- > dm;) {
        int lead = a[i] % p;
        if (lead == 0) continue;
        for (size_t j = 0; j <= dm; ++j) {
            a[i - dm + j] = ((a[i - dm + j] - lead * m[j]) % p + p) % p;
        }
    }
    a.resize(std::min(a.size(), dm));
    return a;
}

bool is_irreducible(const Poly& m, int p) {
    const int deg = static_cast<int>(m.size()) - 1;
    for (int d = 1; d <= deg / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            Poly g(d + 1);
            long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[d] = 1;
            Poly r = poly_mod(m, g, p);
            bool zero = true;
            for (int v : r) zero = zero && v == 0;
            if (zero) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(int p, int mu) {
    long count = 1;
    for (int i = 0; i < mu; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
        Poly m(mu + 1);
        long c = code;
        for (int i = 0; i < mu; ++i) {
            m[i] = static_cast<int>(c % p);
            c /= p;
        }
        m[mu] = 1;
        if (is_irreducible(m, p)) return m;
    }
    fail(Errc::ReducibleModulus, "no irreducible polynomial found");
}

std::string make_spec(int p, int mu, const Poly& m) {
    std::string s = std::to_string(p) + "^" + std::to_string(mu) + "/";
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(m[i]);
    }
    return s;
}

void tabulate(detail::FieldData& f) {
    const uint32_t q = f.q;
    f.add_t.resize(q * q);
    f.mul_t.resize(q * q);
    f.neg_t.resize(q);
    f.inv_t.resize(q);
    f.tr_t.resize(q);
    for (uint32_t a = 0; a < q; ++a) {
        for (uint32_t b = 0; b < q; ++b) {
            f.add_t[a * q + b] = static_cast<uint8_t>(detail::slow_add(f, a, b));
            f.mul_t[a * q + b] = static_cast<uint8_t>(detail::slow_mul(f, a, b));
        }
        f.neg_t[a] = static_cast<uint8_t>(detail::slow_neg(f, a));
        f.inv_t[a] = a == 0 ? 0 : static_cast<uint8_t>(detail::slow_inv(f, a));
        f.tr_t[a] = static_cast<uint8_t>(detail::slow_trace(f, a));
    }
}

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(Errc::BadFieldSpec, "bad integer '" + std::string(s) + "' in field spec");
    }
    return v;
}

}  // namespace

namespace detail {

uint32_t slow_add(const FieldData& f, uint32_t a, uint32_t b) {
    auto x = unpack(a, f.p, f.mu), y = unpack(b, f.p, f.mu);
    for (int i = 0; i < f.mu; ++i) x[i] = (x[i] + y[i]) % f.p;
    return pack(x, f.p);
}

uint32_t slow_neg(const FieldData& f, uint32_t a) {
    auto x = unpack(a, f.p, f.mu);
    for (int i = 0; i < f.mu; ++i) x[i] = (f.p - x[i]) % f.p;
    return pack(x, f.p);
}

uint32_t slow_mul(const FieldData& f, uint32_t a, uint32_t b) {
    auto x = unpack(a, f.p, f.mu), y = unpack(b, f.p, f.mu);
    Poly prod(2 * f.mu - 1, 0);
    for (int i = 0; i < f.mu; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < f.mu; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % f.p;
    }
    Poly r = poly_mod(prod, f.modulus, f.p);
    r.resize(f.mu, 0);
    return pack(r, f.p);
}

uint32_t slow_inv(const FieldData& f, uint32_t a) {
    if (a == 0) fail(Errc::DivisionByZero, "inverse of zero in " + f.spec);
    // a^(q-2) by square-and-multiply.
    uint64_t e = f.q - 2;
    uint32_t result = 1, base = a;
    while (e) {
        if (e & 1) result = slow_mul(f, result, base);
        base = slow_mul(f, base, base);
        e >>= 1;
    }
    return result;
}

int slow_trace(const FieldData& f, uint32_t a) {
    // Sum of the diagonal of T_a: coefficient j of a * x^j.
    int tr = 0;
    uint32_t basis = 1;  // x^0
    const uint32_t x = f.mu > 1 ? static_cast<uint32_t>(f.p) : 0;
    for (int j = 0; j < f.mu; ++j) {
        auto c = unpack(slow_mul(f, a, basis), f.p, f.mu);
        tr = (tr + c[j]) % f.p;
        if (f.mu > 1) basis = slow_mul(f, basis, x);
    }
    return tr;
}

}  // namespace detail

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

Field Field::make(int p, int mu, std::optional<std::vector<int>> modulus) {
    if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (mu < 1) fail(Errc::BadFieldSpec, "extension degree must be positive");
    uint64_t q = 1;
    for (int i = 0; i < mu; ++i) {
        q *= static_cast<uint64_t>(p);
        if (q > (1u << 24)) fail(Errc::BadParameters, "field order too large");
    }
    Poly m;
    if (modulus) {
        m = *modulus;
        if (static_cast<int>(m.size()) != mu + 1 || m.back() != 1) {
            fail(Errc::ReducibleModulus, "modulus must be monic of degree " + std::to_string(mu));
        }
        for (int& c : m) {
            if (c < 0 || c >= p) fail(Errc::BadFieldSpec, "modulus coefficient out of range");
        }
        if (!is_irreducible(m, p)) fail(Errc::ReducibleModulus, make_spec(p, mu, m) + " is reducible");
    } else {
        auto it = canonical_moduli().find({p, mu});
        m = it != canonical_moduli().end() ? it->second : smallest_irreducible(p, mu);
    }

    static std::mutex mtx;
    static std::map<std::tuple<int, int, Poly>, std::unique_ptr<detail::FieldData>> registry;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(p, mu, m);
    auto it = registry.find(key);
    if (it != registry.end()) return Field(it->second.get());
    auto d = std::make_unique<detail::FieldData>();
    d->p = p;
    d->mu = mu;
    d->q = static_cast<uint32_t>(q);
    d->modulus = m;
    d->spec = make_spec(p, mu, m);
    if (q <= 256) tabulate(*d);
    const detail::FieldData* raw = d.get();
    registry.emplace(key, std::move(d));
    return Field(raw);
}

Field Field::parse(std::string_view spec) {
    auto slash = spec.find('/');
    std::string_view head = spec.substr(0, slash);
    auto caret = head.find('^');
    int p = parse_int(head.substr(0, caret));
    int mu = caret == std::string_view::npos ? 1 : parse_int(head.substr(caret + 1));
    if (slash == std::string_view::npos) return make(p, mu);
    std::vector<int> m;
    std::string_view rest = spec.substr(slash + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        m.push_back(parse_int(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return make(p, mu, m);
}

FieldElem Field::zero() const { return FieldElem(*this, 0); }
FieldElem Field::one() const { return FieldElem(*this, 1); }

FieldElem Field::elem(uint32_t code) const {
    if (code >= q()) fail(Errc::OutOfRange, "element code out of range for " + spec());
    return FieldElem(*this, code);
}

FieldElem Field::from_int(long v) const {
    long r = ((v % p()) + p()) % p();
    return FieldElem(*this, static_cast<uint32_t>(r));
}

FieldElem Field::from_coeffs(const std::vector<int>& coeffs) const {
    Poly c(coeffs.begin(), coeffs.end());
    for (int& x : c) x = ((x % p()) + p()) % p();
    Poly r = c.size() > static_cast<size_t>(mu()) ? poly_mod(c, modulus(), p()) : c;
    r.resize(mu(), 0);
    return FieldElem(*this, pack(r, p()));
}

std::vector<FieldElem> Field::elements() const {
    std::vector<FieldElem> out;
    out.reserve(q());
    for (uint32_t c = 0; c < q(); ++c) out.emplace_back(*this, c);
    return out;
}

Field Field::of_order(long q) {
    for (long p = 2; p <= q; ++p) {
        if (q % p) continue;
        int mu = 0;
        long r = q;
        while (r % p == 0) {
            r /= p;
            ++mu;
        }
        if (r != 1) break;
        return make(static_cast<int>(p), mu);
    }
    fail(Errc::BadFieldSpec, "not a prime power: " + std::to_string(q));
}

FieldElem Field::primitive() const {
    const uint32_t order = q() - 1;
    std::vector<uint32_t> prime_factors;
    uint32_t n = order;
    for (uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) prime_factors.push_back(n);
    for (uint32_t c = 1; c < q(); ++c) {
        FieldElem g(*this, c);
        bool ok = true;
        for (uint32_t f : prime_factors) ok = ok && !g.pow(order / f).is_one();
        if (ok) return g;
    }
    fail(Errc::BadParameters, "no primitive element");
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) fail(Errc::DivisionByZero, "division by zero in " + spec());
    return d_->tabulated() ? d_->inv_t[a] : detail::slow_inv(*d_, a);
}

std::vector<int> Field::coeffs(uint32_t a) const { return unpack(a, p(), mu()); }

void FieldElem::same_field(const FieldElem& o) const {
    if (d_ != o.d_) fail(Errc::FieldMismatch, "operands belong to different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    same_field(o);
    return FieldElem(field(), field().add(v_, o.v_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    same_field(o);
    return FieldElem(field(), field().sub(v_, o.v_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    same_field(o);
    return FieldElem(field(), field().mul(v_, o.v_));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    same_field(o);
    return FieldElem(field(), field().div(v_, o.v_));
}

FieldElem FieldElem::operator-() const { return FieldElem(field(), field().neg(v_)); }

FieldElem FieldElem::inverse() const { return FieldElem(field(), field().inv(v_)); }

FieldElem FieldElem::pow(long long e) const {
    Field f = field();
    if (e < 0) return inverse().pow(-e);
    uint32_t result = 1, base = v_;
    while (e) {
        if (e & 1) result = f.mul(result, base);
        base = f.mul(base, base);
        e >>= 1;
    }
    return FieldElem(f, result);
}

FieldElem FieldElem::trace() const { return FieldElem(field(), static_cast<uint32_t>(trace_value())); }

std::string FieldElem::str() const {
    auto c = coeffs();
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s;
}

Vec phi(const FieldElem& x, const Field& base) {
    Field f = x.field();
    if (base == f) return {x};
    if (!base.is_prime_field() || base.p() != f.p()) {
        fail(Errc::NotASubfieldTower, base.spec() + " is not a subfield of " + f.spec() + " in this tower");
    }
    Vec out;
    for (int c : x.coeffs()) out.push_back(base.from_int(c));
    return out;
}

FieldElem phi_inv(const Vec& coords, const Field& target) {
    if (coords.size() == 1 && coords[0].field() == target) return coords[0];
    if (coords.empty() || static_cast<int>(coords.size()) != target.mu()) {
        fail(Errc::DimensionMismatch, "coordinate vector length must equal the extension degree");
    }
    Field base = coords[0].field();
    if (!base.is_prime_field() || base.p() != target.p()) {
        fail(Errc::NotASubfieldTower, base.spec() + " is not a subfield of " + target.spec() + " in this tower");
    }
    std::vector<int> c;
    for (const auto& e : coords) {
        if (e.field() != base) fail(Errc::FieldMismatch, "mixed coordinate fields");
        c.push_back(static_cast<int>(e.code()));
    }
    return target.from_coeffs(c);
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.str(); }

}  // namespace qpirsim::gf
