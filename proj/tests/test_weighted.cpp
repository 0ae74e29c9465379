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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "core/scalar.hpp"
#include "core/weighted.hpp"
#include "oracle/frozen_values.hpp"
#include "support.hpp"

namespace meanforge {
namespace {

using testing::PairGen;
using Fn = double (*)(const PositivePair&, Weight);
constexpr double kE = std::numbers::e;

struct Named {
  const char* name;
  Fn direct;
  Fn composed;
};

const Named kFamilies[] = {
    {"Lv", weighted_log_direct, weighted_log_composed},
    {"Iv", weighted_identric_direct, weighted_identric_composed},
    {"calLv", second_weighted_log, second_weighted_log_composed},
    {"Lv*", weighted_log_dual, weighted_log_dual_composed},
    {"Iv*", weighted_identric_dual, weighted_identric_dual_composed},
    {"calLv*", second_weighted_log_dual, second_weighted_log_dual_composed},
};

double frozen_value(const frozen::WeightedPoint& p, int family) {
  const double values[] = {p.log_v,      p.identric_v,      p.second_log_v,
                           p.log_v_dual, p.identric_v_dual, p.second_log_v_dual};
  return values[family];
}

TEST(WeightedOracle, MatchesHighPrecisionValues) {
  for (const auto& point : frozen::kWeighted) {
    const PositivePair pair(point.a, point.b);
    const Weight w(point.v);
    for (int f = 0; f < 6; ++f) {
      const double expected = frozen_value(point, f);
      EXPECT_REL(kFamilies[f].direct(pair, w), expected, 1e-13)
          << kFamilies[f].name << " at (" << point.a << ", " << point.b << ", " << point.v << ")";
      EXPECT_REL(kFamilies[f].composed(pair, w), expected, 1e-13)
          << kFamilies[f].name << " composed at (" << point.a << ", " << point.b << ", "
          << point.v << ")";
    }
  }
}

TEST(WeightedExamples, LogarithmicAndIdentric) {
  const PositivePair one_e(1, kE), p14(1, 4), p28(2, 8);
  EXPECT_REL(weighted_log_direct(one_e, Weight(0.5)), kE - 1, 1e-15);
  EXPECT_REL(weighted_log_direct(p14, Weight(0.25)), 1.5181259901839691, 1e-15);
  // The composed route spelled out: 0.75 L(sqrt2, 1) + 0.25 L(sqrt2, 4).
  EXPECT_REL(weighted_log_composed(p14, Weight(0.25)),
             0.75 * frozen::kLog_sqrt2_1 + 0.25 * frozen::kLog_sqrt2_4, 1e-15);
  EXPECT_REL(weighted_log_direct(p28, Weight(0.5)), 6 / std::log(4.0), 1e-15);
  EXPECT_REL(weighted_identric_direct(one_e, Weight(0.5)), frozen::kIdentric_1_e, 1e-15);
  EXPECT_REL(weighted_identric_direct(p28, Weight(0.5)), frozen::kIdentric_2_8, 1e-15);
  EXPECT_REL(weighted_identric_direct(p14, Weight(0.75)),
             weighted_identric_composed(PositivePair(4, 1), Weight(0.25)), 1e-12);
  EXPECT_REL(second_weighted_log(one_e, Weight(0.5)), kE - 1, 1e-15);
  EXPECT_REL(second_weighted_log(p14, Weight(0.25)), 1.5349925433190181, 1e-14);
}

TEST(WeightedExamples, Duals) {
  const PositivePair p14(1, 4), p28(2, 8);
  const PositivePair inv(1.0, 0.25);
  EXPECT_REL(weighted_log_dual(p14, Weight(0.25)),
             1 / weighted_log_direct(inv, Weight(0.25)), 1e-15);
  EXPECT_REL(weighted_log_dual(p28, Weight(0.5)), 16 / frozen::kLog_2_8, 1e-15);
  EXPECT_REL(weighted_identric_dual(p28, Weight(0.5)), 16 / frozen::kIdentric_2_8, 1e-15);
  EXPECT_REL(weighted_identric_dual(p14, Weight(0.75)),
             weighted_identric_dual(PositivePair(4, 1), Weight(0.25)), 1e-15);
  EXPECT_REL(second_weighted_log_dual(p28, Weight(0.5)), 16 / frozen::kLog_2_8, 1e-15);
  EXPECT_REL(second_weighted_log_dual(p14, Weight(0.25)),
             1 / second_weighted_log(inv, Weight(0.25)), 1e-15);
}

TEST(WeightedExamples, EndpointsAndEqualArguments) {
  const PositivePair pair(3, 11);
  for (const Named& f : kFamilies) {
    EXPECT_EQ(f.direct(pair, Weight(0.0)), 3.0) << f.name;
    EXPECT_EQ(f.direct(pair, Weight(1.0)), 11.0) << f.name;
    EXPECT_REL(f.composed(pair, Weight(0.0)), 3.0, 1e-15) << f.name;
    EXPECT_REL(f.composed(pair, Weight(1.0)), 11.0, 1e-15) << f.name;
    for (double v : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      EXPECT_EQ(f.direct(PositivePair(7.5, 7.5), Weight(v)), 7.5) << f.name;
      EXPECT_REL(f.composed(PositivePair(7.5, 7.5), Weight(v)), 7.5, 1e-15) << f.name;
    }
  }
}

TEST(WeightedProperty, DirectMatchesComposed) {
  PairGen gen(21);
  for (int i = 0; i < 20000; ++i) {
    const auto [a, b, v] = gen.next();
    const PositivePair pair(a, b);
    const Weight w(v);
    for (const Named& f : kFamilies) {
      EXPECT_REL(f.direct(pair, w), f.composed(pair, w), 1e-12)
          << f.name << " at (" << a << ", " << b << ", " << v << ")";
    }
  }
}

TEST(WeightedProperty, ReflectionBoundsMidpoint) {
  PairGen gen(22);
  const SymmetricMean classic[] = {SymmetricMean::of(MeanKind::log),
                                   SymmetricMean::of(MeanKind::identric),
                                   SymmetricMean::of(MeanKind::log),
                                   SymmetricMean::of(MeanKind::log_dual),
                                   SymmetricMean::of(MeanKind::identric_dual),
                                   SymmetricMean::of(MeanKind::log_dual)};
  for (int i = 0; i < 5000; ++i) {
    const auto [a, b, v] = gen.next();
    const PositivePair pair(a, b);
    for (int f = 0; f < 6; ++f) {
      const double x = kFamilies[f].direct(pair, Weight(v));
      EXPECT_REL(kFamilies[f].direct(pair.swapped(), Weight(1 - v)), x, 1e-12);
      EXPECT_GE(x, std::min(a, b) * (1 - 1e-14));
      EXPECT_LE(x, std::max(a, b) * (1 + 1e-14));
      EXPECT_REL(kFamilies[f].direct(pair, Weight(0.5)), classic[f](a, b), 1e-12)
          << kFamilies[f].name;
    }
  }
}

TEST(WeightedProperty, OrderedInsideWeightedChain) {
  // geometric_v <= L_v <= I_v <= arithmetic_v
  PairGen gen(23);
  for (int i = 0; i < 5000; ++i) {
    const auto [a, b, v] = gen.next();
    const PositivePair pair(a, b);
    const Weight w(v);
    const double tol = 1e-13 * std::max(a, b);
    const double g = weighted_standard(MeanKind::geom, pair, w);
    const double l = weighted_log_direct(pair, w);
    const double id = weighted_identric_direct(pair, w);
    const double ar = weighted_standard(MeanKind::arith, pair, w);
    EXPECT_LE(g, l + tol);
    EXPECT_LE(l, id + tol);
    EXPECT_LE(id, ar + tol);
  }
}

TEST(WeightedProperty, TinyLogRatio) {
  for (double t : {1e-14, 1e-10, 1e-7, 1e-4}) {
    const PositivePair pair(2.0, 2.0 * std::exp(t));
    for (double v : {0.01, 0.3, 0.77}) {
      const double expected = 2.0 * std::exp(v * t);  // first order in t
      for (const Named& f : kFamilies) {
        EXPECT_REL(f.direct(pair, Weight(v)), expected, std::max(1e-15, t * t)) << f.name;
      }
    }
  }
}

}  // namespace
}  // namespace meanforge
