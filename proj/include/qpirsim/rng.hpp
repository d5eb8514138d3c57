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

// Seedable generator shared by every randomized component. Reductions are
// done here rather than through <random> distributions so that a seed gives
// the same stream on every standard library.

#ifndef QPIRSIM_RNG_HPP
#define QPIRSIM_RNG_HPP

#include <cstdint>
#include <random>

#include "qpirsim/linalg.hpp"

namespace qpirsim {

class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed), seed_(seed) {}

    uint64_t seed() const { return seed_; }
    uint64_t next() { return eng_(); }

    // Uniform on [0, n) by rejection.
    uint64_t below(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    gf::FieldElem element(const gf::Field& f) { return f.elem(static_cast<uint32_t>(below(f.q()))); }
    gf::FieldElem nonzero(const gf::Field& f) { return f.elem(static_cast<uint32_t>(1 + below(f.q() - 1))); }

    gf::Vec vec(const gf::Field& f, size_t n) {
        gf::Vec v;
        v.reserve(n);
        for (size_t i = 0; i < n; ++i) v.push_back(element(f));
        return v;
    }

    linalg::Mat mat(const gf::Field& f, size_t rows, size_t cols) {
        std::vector<uint32_t> codes(rows * cols);
        for (auto& c : codes) c = static_cast<uint32_t>(below(f.q()));
        return linalg::Mat::from_codes(f, rows, cols, std::move(codes));
    }

  private:
    std::mt19937_64 eng_;
    uint64_t seed_;
};

}  // namespace qpirsim

#endif  // QPIRSIM_RNG_HPP
