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

#include "core/algebra.hpp"
#include "core/errors.hpp"
#include "core/power.hpp"
#include "core/scalar.hpp"
#include "core/weighted.hpp"
#include "support.hpp"

namespace meanforge {
namespace {

constexpr double kE = std::numbers::e;

const SymmetricMean kArith = SymmetricMean::of(MeanKind::arith);
const SymmetricMean kGeom = SymmetricMean::of(MeanKind::geom);
const SymmetricMean kHarm = SymmetricMean::of(MeanKind::harm);
const SymmetricMean kLog = SymmetricMean::of(MeanKind::log);
const SymmetricMean kIdentric = SymmetricMean::of(MeanKind::identric);

SymmetricMean binomial_mean(double p) {
  return SymmetricMean("B", [p](double a, double b) { return kernel::binomial(p, a, b); });
}

TEST(Resultant, Examples) {
  EXPECT_DOUBLE_EQ(resultant(kArith, kArith, kArith, PositivePair(2, 6)), 4.0);
  EXPECT_REL(resultant(kArith, kLog, kGeom, PositivePair(1, 4)), 3 / std::log(4.0), 1e-15);
  EXPECT_DOUBLE_EQ(resultant(kGeom, kIdentric, kArith, PositivePair(3, 3)), 3.0);
}

TEST(Resultant, StableMeans) {
  for (const SymmetricMean* m : {&kArith, &kGeom, &kHarm}) {
    const auto r = check_stable(*m);
    EXPECT_TRUE(r.passed) << m->name() << " residual " << r.max_residual;
    EXPECT_EQ(r.samples, 1000u);
  }
  EXPECT_TRUE(check_stable(binomial_mean(3)).passed);
  const auto log_report = check_stable(kLog);
  EXPECT_FALSE(log_report.passed);
  EXPECT_GT(log_report.max_residual, 1e-6);
  ASSERT_EQ(log_report.worst_input.size(), 2u);
}

TEST(Resultant, Stabilizable) {
  EXPECT_TRUE(check_stabilizable(kHarm, kLog, kArith).passed);
  EXPECT_TRUE(check_stabilizable(kArith, kLog, kGeom).passed);
  EXPECT_TRUE(check_stabilizable(kGeom, kIdentric, kArith).passed);
  EXPECT_TRUE(check_stabilizable(kGeom, dual(kIdentric), kHarm).passed);
  EXPECT_TRUE(check_stabilizable(kGeom, kGeom, kGeom).passed);
  EXPECT_FALSE(check_stabilizable(kArith, kIdentric, kGeom).passed);
}

TEST(Resultant, CrossMeans) {
  for (const SymmetricMean* m : {&kArith, &kGeom, &kHarm}) {
    EXPECT_TRUE(check_cross_mean(*m).passed) << m->name();
  }
  const auto r = check_cross_mean(kLog);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.worst_input.size(), 4u);
}

TEST(Resultant, Deterministic) {
  CheckConfig config;
  config.seed = 99;
  const auto a = check_stable(kLog, config);
  const auto b = check_stable(kLog, config);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.worst_input, b.worst_input);
}

TEST(WeightedConstruct, Examples) {
  const WeightedMean lv = weighted_construct(kLog, WeightedMean::standard(MeanKind::geom),
                                             WeightedMean::standard(MeanKind::arith));
  EXPECT_REL(lv(PositivePair(1, 4), Weight(0.25)),
             weighted_log_composed(PositivePair(1, 4), Weight(0.25)), 1e-15);
  EXPECT_REL(lv(1, 4, 0.25), 1.5181259901839691, 1e-14);
  const WeightedMean iv = weighted_construct(kIdentric, WeightedMean::standard(MeanKind::arith),
                                             WeightedMean::standard(MeanKind::geom));
  EXPECT_REL(iv(5, 5, 0.3), 5.0, 1e-15);
  const WeightedMean gv = weighted_construct(kGeom, WeightedMean::standard(MeanKind::geom),
                                             WeightedMean::standard(MeanKind::geom));
  EXPECT_REL(gv(2, 8, 0.5), 4.0, 1e-15);
}

TEST(WeightedTableTest, LayoutAndValues) {
  EXPECT_EQ(weighted_table_name(1, 0), "Lv");
  EXPECT_EQ(weighted_table_name(0, 1), "Iv");
  EXPECT_EQ(weighted_table_name(0, 2), "calLv");
  EXPECT_EQ(weighted_table_name(1, 2), "Lv*");
  EXPECT_EQ(weighted_table_name(2, 1), "Iv*");
  EXPECT_EQ(weighted_table_name(2, 0), "calLv*");
  EXPECT_EQ(weighted_table_generator(1, 1), MeanKind::geom);

  const WeightedTable t = weighted_table(PositivePair(2, 8), Weight(0.3));
  EXPECT_REL(t[0][0], kernel::arith_v(2, 8, 0.3), 1e-15);
  EXPECT_REL(t[1][1], kernel::geom_v(2, 8, 0.3), 1e-15);
  EXPECT_REL(t[2][2], kernel::harm_v(2, 8, 0.3), 1e-15);

  const PositivePair p14(1, 4);
  const Weight w(0.25);
  const WeightedTable u = weighted_table(p14, w);
  EXPECT_REL(u[1][0], weighted_log_direct(p14, w), 1e-12);
  EXPECT_REL(u[0][1], weighted_identric_direct(p14, w), 1e-12);
  EXPECT_REL(u[0][2], second_weighted_log(p14, w), 1e-12);
  EXPECT_REL(u[1][2], weighted_log_dual(p14, w), 1e-12);
  EXPECT_REL(u[2][1], weighted_identric_dual(p14, w), 1e-12);
  EXPECT_REL(u[2][0], second_weighted_log_dual(p14, w), 1e-12);

  const WeightedTable flat = weighted_table(PositivePair(3, 3), Weight(0.7));
  for (const auto& row : flat) {
    for (double x : row) EXPECT_REL(x, 3.0, 1e-15);
  }
}

TEST(Trace, InterpolatesSmoothMeans) {
  const MeanTrace trace(GridConfig{}, kLog);
  EXPECT_EQ(trace.size(), 513);
  EXPECT_DOUBLE_EQ(trace.x(256), 1.0);
  for (double x : {0.001, 0.37, 1.0, 1.0001, 4.0, 1234.5}) {
    EXPECT_REL(trace(x), kLog(1, x), 1e-10) << x;
  }
  EXPECT_REL(trace.evaluate(2, 8), kLog(2, 8), 1e-10);
  // Far outside the grid the extrapolant still stays between 1 and x.
  EXPECT_LE(trace(1e8), 1e8);
  EXPECT_GE(trace(1e-8), 1e-8);
}

TEST(Trace, GridValidation) {
  EXPECT_THROW((GridConfig{512, 12}).validate(), DomainError);
  EXPECT_THROW((GridConfig{9, 12}).validate(), DomainError);
  EXPECT_THROW((GridConfig{513, 0}).validate(), DomainError);
  EXPECT_NO_THROW(GridConfig{}.validate());
}

struct Target {
  const SymmetricMean* q;
  const SymmetricMean* p;
  SymmetricMean expected;
};

TEST(Stabilizer, ConvergesToClosedForms) {
  const Target targets[] = {
      {&kArith, &kGeom, kLog},
      {&kHarm, &kArith, kLog},
      {&kGeom, &kArith, kIdentric},
      {&kArith, &kHarm, dual(kLog)},
      {&kHarm, &kGeom, dual(kLog)},
      {&kGeom, &kHarm, dual(kIdentric)},
  };
  for (const Target& t : targets) {
    for (const SymmetricMean* init : {&kArith, &kGeom, &kHarm}) {
      StabilizeOptions options;
      options.initial = *init;
      const StabilizeResult r = stabilize_fixed_point(*t.q, *t.p, options);
      EXPECT_LE(r.iterations, 200);
      EXPECT_LT(r.residual, options.tolerance);
      double worst = 0.0;
      for (int i = 0; i < r.trace.size(); ++i) {
        if (std::fabs(r.trace.log_x(i)) > 8.0) continue;
        worst = std::max(worst, testing::rel_err(r.trace.f(i), t.expected(1, r.trace.x(i))));
      }
      EXPECT_LE(worst, 1e-8) << "stabilize(" << t.q->name() << ", " << t.p->name()
                             << ") from " << init->name();
    }
  }
}

TEST(Stabilizer, Examples) {
  const StabilizeResult l = stabilize_fixed_point(kArith, kGeom);
  EXPECT_REL(l.trace(4.0), 3 / std::log(4.0), 1e-9);
  const StabilizeResult i = stabilize_fixed_point(kGeom, kArith);
  EXPECT_REL(i.trace(kE), std::exp(1 / (kE - 1)), 1e-9);
  for (const SymmetricMean* m : {&kArith, &kGeom, &kHarm}) {
    const StabilizeResult r = stabilize_fixed_point(*m, *m);
    EXPECT_EQ(r.iterations, 0) << m->name();
    EXPECT_REL(r.trace(4.0), (*m)(1, 4), 1e-12);
  }
}

TEST(Stabilizer, NonConvergenceCarriesHistory) {
  StabilizeOptions options;
  options.max_iter = 3;
  try {
    stabilize_fixed_point(kArith, kGeom, options);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.history().size(), 3u);
    EXPECT_EQ(e.last_residual(), e.history().back());
    EXPECT_GT(e.last_residual(), options.tolerance);
  }
  options.max_iter = 0;
  EXPECT_THROW(stabilize_fixed_point(kArith, kGeom, options), DomainError);
}

}  // namespace
}  // namespace meanforge
