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

// Linear codes given by a generator matrix, and the families used by the
// retrieval schemes: generalized Reed-Solomon, Cauchy-Vandermonde (CSA and its
// multiplier variant), binary Reed-Muller and locally repairable codes built
// from local MDS blocks.
//
// Two codes are "the same" when their generators have equal row spaces;
// generator matrices themselves are never compared for code equality.

#ifndef QPIRSIM_CODES_HPP
#define QPIRSIM_CODES_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "qpirsim/linalg.hpp"

namespace qpirsim::codes {

using gf::Field;
using gf::FieldElem;
using gf::Vec;
using linalg::Mat;

class LinearCode {
  public:
    LinearCode() = default;
    // Throws BadParameters unless the rows are independent.
    explicit LinearCode(Mat generator);
    // Any spanning set; reduced to a basis.
    static LinearCode spanned_by(const Mat& rows);

    Field field() const { return g_.field(); }
    size_t n() const { return g_.cols(); }
    size_t k() const { return g_.rows(); }
    const Mat& generator() const { return g_; }

    Vec encode(const Vec& message) const;
    // Encodes each row.
    Mat encode(const Mat& messages) const;
    bool contains(const Vec& word) const;

  private:
    Mat g_;
};

bool same_code(const LinearCode& a, const LinearCode& b);

LinearCode repetition(Field f, size_t n);
LinearCode parity_check(Field f, size_t n);
// C x C': block-diagonal generator.
LinearCode cartesian(const LinearCode& a, const LinearCode& b);

LinearCode dual(const LinearCode& c);
// Brute force over all q^k codewords; TooLargeToEnumerate past 2^20.
size_t min_distance(const LinearCode& c);
LinearCode star_product(const LinearCode& a, const LinearCode& b);
bool is_mds(const LinearCode& c);
// First k independent columns scanning left to right, skipping `forbidden`.
std::vector<size_t> information_set(const LinearCode& c, const std::vector<size_t>& forbidden = {});

LinearCode grs(const Vec& points, const Vec& multipliers, size_t k);
// Multipliers u with GRS_k(A,v)^perp = GRS_{n-k}(A,u).
Vec grs_dual_multipliers(const Vec& points, const Vec& multipliers);
LinearCode csa(const Vec& points, const Vec& poles, size_t k);
LinearCode qcsa(const Vec& points, const Vec& poles, const Vec& multipliers, size_t k);

// Reed-Muller over F_2. Point n (0-based) has z_i = 1 iff bit (m - i) of n is
// clear, so z_1 is the most significant coordinate and P_0 = 1...1.
// Monomials come in increasing degree; within a degree, variable sets are
// ordered colexicographically: z1z2, z1z3, z2z3, z1z4, ...
std::vector<std::vector<int>> brm_monomials(int r, int m);
Vec brm_eval(const std::vector<int>& vars, int m);
LinearCode brm(int r, int m);
// Same code from star products of the recursive v-vectors.
LinearCode brm_via_vvectors(int r, int m);
// Rows of G_BRM(m,m): all 2^m monomials in the order above.
Mat brm_full(int m);

struct LrcCode {
    LinearCode base;
    std::vector<std::vector<size_t>> repair_sets;
    std::vector<LinearCode> local;
    size_t lambda = 0;
    size_t delta = 0;
};

// Disjoint systematic local GRS blocks [lambda+delta-1, lambda].
LrcCode lrc_optimal(size_t n, size_t k, size_t lambda, size_t delta, Field f);
// Singleton-like bound n - k + 1 - (ceil(k/lambda) - 1)(delta - 1).
long lrc_distance_bound(size_t n, size_t k, size_t lambda, size_t delta);

// Bounded-distance decoding by exhaustive search over a cached codeword list.
class NearestDecoder {
  public:
    explicit NearestDecoder(const LinearCode& c);
    size_t distance() const { return d_; }
    // Unique codeword within floor((d - 1 - |erasures|)/2) of `word` on the
    // surviving coordinates. Throws NoneInRadius or Ambiguous.
    Vec decode(const Vec& word, const std::vector<size_t>& erasures = {}) const;

  private:
    LinearCode c_;
    std::vector<uint32_t> words_;  // q^k rows of n codes
    size_t d_ = 0;
};

Vec decode_nearest(const LinearCode& c, const Vec& word, const std::vector<size_t>& erasures = {});

// "grs:n,k,q[,seed]", "csa:n,k,l,q", "brm:r,m", "rep:n,q",
// "lrc:N,K,lambda,delta,q". GRS points are successive powers of the
// primitive element (all of F_q when n = q); a seed draws random nonzero
// multipliers, otherwise they are all one.
LinearCode parse_code(std::string_view spec);

}  // namespace qpirsim::codes

#endif  // QPIRSIM_CODES_HPP
