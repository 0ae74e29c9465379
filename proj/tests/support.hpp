// Copyright 2026 The Meanforge Authors
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

#ifndef MEANFORGE_TESTS_SUPPORT_HPP_
#define MEANFORGE_TESTS_SUPPORT_HPP_

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

#include "core/random.hpp"

namespace meanforge::testing {

inline double rel_err(double x, double reference) {
  return std::fabs(x - reference) / std::fabs(reference);
}

#define EXPECT_REL(x, ref, tol) EXPECT_LE(::meanforge::testing::rel_err((x), (ref)), (tol)) \
  << #x " = " << (x) << " vs " << (ref)

// Random positive pairs with |log(b/a)| <= spread and a spread over
// twelve decades, plus a weight in (0, 1).
struct PairGen {
  explicit PairGen(std::uint64_t seed, double spread = 14.0) : rng(seed), spread(spread) {}
  struct Sample {
    double a, b, v;
  };
  Sample next() {
    const double a = std::pow(10.0, rng.uniform(-6.0, 6.0));
    const double b = a * std::exp(rng.uniform(-spread, spread));
    return {a, b, rng.uniform(0.001, 0.999)};
  }
  Rng rng;
  double spread;
};

}  // namespace meanforge::testing

#endif  // MEANFORGE_TESTS_SUPPORT_HPP_
