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

#include "core/errors.hpp"
#include "core/power.hpp"
#include "core/scalar.hpp"
#include "oracle/frozen_values.hpp"
#include "support.hpp"

namespace meanforge {
namespace {

using testing::PairGen;
constexpr double kE = std::numbers::e;
constexpr PowerKind kKinds[] = {PowerKind::log, PowerKind::difference, PowerKind::exponential,
                                PowerKind::second_log};

double S(double p, double q, double a, double b) {
  return stolarsky(StolarskyParams(p, q), PositivePair(a, b));
}

TEST(PowerOracle, Stolarsky) {
  for (const auto& s : frozen::kStolarsky) {
    EXPECT_REL(S(s.p, s.q, s.a, s.b), s.value, 1e-13)
        << "S(" << s.p << ", " << s.q << ")(" << s.a << ", " << s.b << ")";
  }
}

TEST(PowerOracle, WeightedPowerMeans) {
  for (const auto& w : frozen::kWeightedPower) {
    const PositivePair pair(w.a, w.b);
    const Weight v(w.v);
    EXPECT_REL(weighted_binomial(w.p, pair, v), w.binomial, 1e-14);
    const double expected[] = {w.log_p, w.diff_p, w.exp_p, w.second_log_p};
    for (int k = 0; k < 4; ++k) {
      EXPECT_REL(weighted_power(kKinds[k], w.p, pair, v), expected[k], 1e-13)
          << to_string(kKinds[k]) << " p=" << w.p;
      EXPECT_REL(weighted_power_explicit(kKinds[k], w.p, pair, v), expected[k], 1e-13)
          << to_string(kKinds[k]) << " explicit p=" << w.p;
    }
  }
}

TEST(PowerOracle, WeightedStolarsky) {
  for (const auto& w : frozen::kWeightedStolarsky) {
    const StolarskyParams params(w.p, w.q);
    const PositivePair pair(w.a, w.b);
    const Weight v(w.v);
    EXPECT_REL(weighted_stolarsky(StolarskyForm::via_Bp, params, pair, v), w.via_bp, 1e-13);
    EXPECT_REL(weighted_stolarsky(StolarskyForm::via_Bq, params, pair, v), w.via_bq, 1e-13);
    EXPECT_REL(weighted_stolarsky_explicit(StolarskyForm::via_Bp, params, pair, v), w.via_bp,
               1e-13);
    EXPECT_REL(weighted_stolarsky_explicit(StolarskyForm::via_Bq, params, pair, v), w.via_bq,
               1e-13);
  }
}

TEST(PowerExamples, Binomial) {
  EXPECT_DOUBLE_EQ(binomial(2, PositivePair(1, 7)), 5.0);
  EXPECT_DOUBLE_EQ(binomial(0, PositivePair(2, 8)), 4.0);
  EXPECT_DOUBLE_EQ(binomial(0.5, PositivePair(1, 9)), 4.0);
  EXPECT_DOUBLE_EQ(weighted_binomial(1, PositivePair(1, 5), Weight(0.25)), 2.0);
  EXPECT_DOUBLE_EQ(weighted_binomial(0, PositivePair(1, 16), Weight(0.25)), 2.0);
  EXPECT_DOUBLE_EQ(weighted_binomial(-1, PositivePair(1, 3), Weight(0.5)), 1.5);
}

TEST(PowerExamples, StolarskyAndSlices) {
  EXPECT_DOUBLE_EQ(S(1, 2, 2, 6), 4.0);
  EXPECT_DOUBLE_EQ(S(2, 1, 2, 6), 4.0);
  EXPECT_REL(S(1, 1, 1, kE), frozen::kIdentric_1_e, 1e-15);
  EXPECT_REL(power_family(PowerKind::difference, -0.5, PositivePair(4, 9)), 6.0, 1e-15);
  EXPECT_REL(power_family(PowerKind::log, 1, PositivePair(2, 4)), 3.0, 1e-15);
  EXPECT_REL(power_family(PowerKind::second_log, 1, PositivePair(1, kE)), kE - 1, 1e-15);
  EXPECT_EQ(S(3, -2, 5, 5), 5.0);
}

TEST(PowerExamples, WeightedMidpointsAndCollapse) {
  const StolarskyParams p12(1, 2);
  EXPECT_REL(weighted_stolarsky(StolarskyForm::via_Bp, p12, PositivePair(1, 4), Weight(0.5)),
             2.5, 1e-15);
  EXPECT_REL(weighted_power(PowerKind::log, 1, PositivePair(2, 8), Weight(0.5)), 5.0, 1e-15);
  EXPECT_REL(weighted_power(PowerKind::exponential, 1, PositivePair(1, kE), Weight(0.5)),
             frozen::kIdentric_1_e, 1e-15);
  for (double p : {-3.0, -0.5, 0.7, 2.0}) {
    EXPECT_EQ(weighted_power(PowerKind::difference, p, PositivePair(6, 6), Weight(0.3)), 6.0);
  }
  for (StolarskyForm form : {StolarskyForm::via_Bp, StolarskyForm::via_Bq}) {
    EXPECT_REL(weighted_stolarsky(form, StolarskyParams(-1.5, 2.5), PositivePair(6, 6),
                                  Weight(0.3)),
               6.0, 1e-15);
  }
}

TEST(PowerExamples, FormsDisagreeButStayInside) {
  const StolarskyParams p13(1, 3);
  const PositivePair pair(1, 4);
  const double bp = weighted_stolarsky(StolarskyForm::via_Bp, p13, pair, Weight(0.25));
  const double bq = weighted_stolarsky(StolarskyForm::via_Bq, p13, pair, Weight(0.25));
  EXPECT_GT(std::fabs(bp - bq), 1e-3);
  for (double x : {bp, bq}) {
    EXPECT_GE(x, 1.0);
    EXPECT_LE(x, 4.0);
  }
}

TEST(PowerBranches, Classification) {
  EXPECT_EQ(StolarskyParams(1, 2).branch(), StolarskyBranch::generic);
  EXPECT_EQ(StolarskyParams(0, 2).branch(), StolarskyBranch::p_zero);
  EXPECT_EQ(StolarskyParams(2, 1e-7).branch(), StolarskyBranch::q_zero);
  EXPECT_EQ(StolarskyParams(2, 2 + 1e-7).branch(), StolarskyBranch::p_equals_q);
  EXPECT_EQ(StolarskyParams(1e-7, -1e-7).branch(), StolarskyBranch::both_zero);
  EXPECT_THROW(StolarskyParams(NAN, 1), DomainError);
  EXPECT_THROW(stolarsky_generic_formula(StolarskyParams(2, 2), PositivePair(1, 2)),
               DomainError);
  EXPECT_THROW(weighted_stolarsky_explicit(StolarskyForm::via_Bp, StolarskyParams(0, 2),
                                           PositivePair(1, 2), Weight(0.5)),
               DomainError);
}

TEST(PowerBranches, ContinuityAcrossTheSwitch) {
  PairGen gen(31);
  Rng rng(32);
  for (int i = 0; i < 2000; ++i) {
    const auto [a, b, v] = gen.next();
    (void)v;
    const double p = rng.uniform(-4, 4);
    const StolarskyParams near(p, p + 1.0000001 * StolarskyParams::kStolarskyRadius);
    const PositivePair pair(a, b);
    EXPECT_REL(stolarsky_generic_formula(near, pair), stolarsky_near_diagonal(near, pair), 1e-8);
    // Just inside and outside the radius the public entry point is continuous.
    const double inside = S(p, p + 0.9999999 * StolarskyParams::kStolarskyRadius, a, b);
    EXPECT_REL(stolarsky(near, pair), inside, 1e-9);
  }
}

TEST(PowerProperty, SpecializationsOfStolarsky) {
  PairGen gen(33);
  Rng rng(34);
  for (int i = 0; i < 3000; ++i) {
    const auto [a, b, v] = gen.next();
    (void)v;
    const double p = rng.uniform(-4, 4);
    const PositivePair pair(a, b);
    EXPECT_REL(binomial(p, pair), S(p, 2 * p, a, b), 1e-11);
    EXPECT_REL(power_family(PowerKind::log, p, pair), S(1, p + 1, a, b), 1e-11);
    EXPECT_REL(power_family(PowerKind::difference, p, pair), S(p, p + 1, a, b), 1e-11);
    EXPECT_REL(power_family(PowerKind::exponential, p, pair), S(p, p, a, b), 1e-11);
    EXPECT_REL(power_family(PowerKind::second_log, p, pair), S(0, p, a, b), 1e-11);
  }
}

TEST(PowerProperty, ParticularCases) {
  PairGen gen(35);
  struct Case {
    PowerKind kind;
    double p;
    MeanKind target;
  };
  const Case cases[] = {
      {PowerKind::log, -2, MeanKind::geom},        {PowerKind::log, -1, MeanKind::log},
      {PowerKind::log, 0, MeanKind::identric},     {PowerKind::log, 1, MeanKind::arith},
      {PowerKind::difference, -2, MeanKind::harm}, {PowerKind::difference, -1, MeanKind::log_dual},
      {PowerKind::difference, -0.5, MeanKind::geom}, {PowerKind::difference, 0, MeanKind::log},
      {PowerKind::difference, 1, MeanKind::arith}, {PowerKind::exponential, -1, MeanKind::identric_dual},
      {PowerKind::exponential, 0, MeanKind::geom}, {PowerKind::exponential, 1, MeanKind::identric},
      {PowerKind::second_log, -1, MeanKind::log_dual}, {PowerKind::second_log, 0, MeanKind::geom},
      {PowerKind::second_log, 1, MeanKind::log},
  };
  for (int i = 0; i < 2000; ++i) {
    const auto [a, b, v] = gen.next();
    (void)v;
    const PositivePair pair(a, b);
    for (const Case& c : cases) {
      EXPECT_REL(power_family(c.kind, c.p, pair), classic_mean(c.target, pair), 1e-11)
          << to_string(c.kind) << " p=" << c.p;
    }
  }
}

TEST(PowerProperty, WeightedExplicitMatchesComposed) {
  PairGen gen(36);
  Rng rng(37);
  for (int i = 0; i < 5000; ++i) {
    const auto [a, b, v] = gen.next();
    double p = rng.uniform(-4, 4);
    double q = rng.uniform(-4, 4);
    if (std::fabs(p) < 0.05 || std::fabs(p + 1) < 0.05) p += 0.25;
    if (std::fabs(q) < 0.05 || std::fabs(q - p) < 0.05) q += 0.25;
    const PositivePair pair(a, b);
    const Weight w(v);
    for (PowerKind kind : kKinds) {
      EXPECT_REL(weighted_power_explicit(kind, p, pair, w), weighted_power(kind, p, pair, w),
                 1e-11)
          << to_string(kind) << " p=" << p << " at (" << a << ", " << b << ", " << v << ")";
    }
    const StolarskyParams params(p, q);
    for (StolarskyForm form : {StolarskyForm::via_Bp, StolarskyForm::via_Bq}) {
      EXPECT_REL(weighted_stolarsky_explicit(form, params, pair, w),
                 weighted_stolarsky(form, params, pair, w), 1e-11);
    }
  }
}

TEST(PowerProperty, LargeExponentsStayFinite) {
  // |p| log(b/a) far beyond the exp overflow threshold.
  const PositivePair pair(1e-250, 1e250);
  for (double p : {-4.0, -2.5, 3.0, 4.0}) {
    for (double v : {0.01, 0.5, 0.99}) {
      for (PowerKind kind : kKinds) {
        const double composed = weighted_power(kind, p, pair, Weight(v));
        const double explicit_form = weighted_power_explicit(kind, p, pair, Weight(v));
        ASSERT_TRUE(std::isfinite(composed)) << to_string(kind);
        ASSERT_TRUE(std::isfinite(explicit_form)) << to_string(kind);
        // Both sides exponentiate a logarithm of size ~ 1150.
        EXPECT_REL(explicit_form, composed, 1e-10) << to_string(kind) << " p=" << p;
      }
      const StolarskyParams params(p, -p / 2);
      EXPECT_REL(weighted_stolarsky_explicit(StolarskyForm::via_Bp, params, pair, Weight(v)),
                 weighted_stolarsky(StolarskyForm::via_Bp, params, pair, Weight(v)), 1e-10);
    }
  }
}

TEST(PowerProperty, SymmetryAndBounds) {
  PairGen gen(38);
  Rng rng(39);
  for (int i = 0; i < 5000; ++i) {
    const auto [a, b, v] = gen.next();
    const double p = rng.uniform(-6, 6);
    const double q = rng.uniform(-6, 6);
    const double s = S(p, q, a, b);
    EXPECT_REL(S(q, p, a, b), s, 1e-11);
    EXPECT_REL(S(p, q, b, a), s, 1e-11);
    EXPECT_GE(s, std::min(a, b) * (1 - 1e-12));
    EXPECT_LE(s, std::max(a, b) * (1 + 1e-12));
    const PositivePair pair(a, b);
    for (PowerKind kind : kKinds) {
      const double x = weighted_power(kind, p, pair, Weight(v));
      EXPECT_REL(weighted_power(kind, p, pair.swapped(), Weight(1 - v)), x, 1e-11);
      EXPECT_REL(weighted_power(kind, p, pair, Weight(0.5)), power_family(kind, p, pair),
                 1e-11);
    }
  }
}

}  // namespace
}  // namespace meanforge
