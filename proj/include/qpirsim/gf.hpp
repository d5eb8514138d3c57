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

// Exact arithmetic in F_{p^mu}. Elements are polynomials over F_p in the
// basis {1, x, ..., x^{mu-1}} reduced modulo a monic irreducible modulus; the
// coefficient vector is packed base-p into a 32-bit code (coefficient i is
// digit i). Fields are interned: two Field handles compare equal iff they were
// built from the same (p, mu, modulus), and handles never dangle.

#ifndef QPIRSIM_GF_HPP
#define QPIRSIM_GF_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpirsim/error.hpp"

namespace qpirsim::gf {

namespace detail {

struct FieldData {
    int p = 0;
    int mu = 0;
    uint32_t q = 0;
    std::vector<int> modulus;  // monic, low-to-high, length mu+1
    std::string spec;
    // Operation tables, filled from the coefficient arithmetic when q <= 256.
    std::vector<uint8_t> add_t, mul_t, neg_t, inv_t, tr_t;
    bool tabulated() const { return !mul_t.empty(); }
};

uint32_t slow_add(const FieldData& f, uint32_t a, uint32_t b);
uint32_t slow_mul(const FieldData& f, uint32_t a, uint32_t b);
uint32_t slow_neg(const FieldData& f, uint32_t a);
uint32_t slow_inv(const FieldData& f, uint32_t a);
int slow_trace(const FieldData& f, uint32_t a);

}  // namespace detail

bool is_prime(long n);

class FieldElem;

class Field {
  public:
    Field() = default;

    // Builds (or fetches) F_{p^mu}. Without a modulus the canonical table
    // entry is used; outside the table the smallest monic irreducible is.
    static Field make(int p, int mu = 1, std::optional<std::vector<int>> modulus = std::nullopt);
    // Parses "p^mu/c0,c1,...,cmu", "p^mu" or "p".
    static Field parse(std::string_view spec);
    // Canonical field with q elements; BadFieldSpec if q is not a prime power.
    static Field of_order(long q);

    bool valid() const { return d_ != nullptr; }
    int p() const { return d_->p; }
    int mu() const { return d_->mu; }
    uint32_t q() const { return d_->q; }
    const std::vector<int>& modulus() const { return d_->modulus; }
    const std::string& spec() const { return d_->spec; }
    bool is_prime_field() const { return d_->mu == 1; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem elem(uint32_t code) const;
    // Image of an integer under Z -> F_p -> F_q.
    FieldElem from_int(long v) const;
    FieldElem from_coeffs(const std::vector<int>& coeffs) const;
    std::vector<FieldElem> elements() const;
    // Smallest-code generator of the multiplicative group.
    FieldElem primitive() const;

    uint32_t add(uint32_t a, uint32_t b) const {
        return d_->tabulated() ? d_->add_t[a * d_->q + b] : detail::slow_add(*d_, a, b);
    }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return d_->tabulated() ? d_->mul_t[a * d_->q + b] : detail::slow_mul(*d_, a, b);
    }
    uint32_t neg(uint32_t a) const { return d_->tabulated() ? d_->neg_t[a] : detail::slow_neg(*d_, a); }
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    // Throws DivisionByZero for a == 0.
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    int trace(uint32_t a) const { return d_->tabulated() ? d_->tr_t[a] : detail::slow_trace(*d_, a); }
    std::vector<int> coeffs(uint32_t a) const;

    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

    const detail::FieldData* data() const { return d_; }

  private:
    explicit Field(const detail::FieldData* d) : d_(d) {}
    const detail::FieldData* d_ = nullptr;
    friend class FieldElem;
};

class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(Field f, uint32_t code) : d_(f.d_), v_(code) {}

    Field field() const { return Field(d_); }
    uint32_t code() const { return v_; }
    std::vector<int> coeffs() const { return field().coeffs(v_); }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

    FieldElem inverse() const;
    FieldElem pow(long long e) const;
    // Trace of the multiplication map, as an element of the prime subfield.
    FieldElem trace() const;
    int trace_value() const { return field().trace(v_); }

    // Coefficients joined by ',' (a bare integer for prime fields).
    std::string str() const;

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.d_ == b.d_ && a.v_ == b.v_; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    // Orders by code only; for use in sets and maps keyed by elements of one field.
    friend bool operator<(const FieldElem& a, const FieldElem& b) { return a.v_ < b.v_; }

  private:
    const detail::FieldData* d_ = nullptr;
    uint32_t v_ = 0;
    void same_field(const FieldElem& o) const;
};

using Vec = std::vector<FieldElem>;

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

// phi: coordinates of x over `base` in the polynomial basis. Only the prime
// subfield and the field itself are in this library's towers.
Vec phi(const FieldElem& x, const Field& base);
FieldElem phi_inv(const Vec& coords, const Field& target);

}  // namespace qpirsim::gf

#endif  // QPIRSIM_GF_HPP
