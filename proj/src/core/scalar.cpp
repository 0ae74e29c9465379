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

#include "core/scalar.hpp"

#include <cmath>
#include <utility>

#include "core/errors.hpp"
#include "core/numerics.hpp"

namespace meanforge {

PositivePair::PositivePair(double a, double b) : a_(a), b_(b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0)) {
    throw DomainError("a positive pair needs finite a > 0 and b > 0, got (" +
                      std::to_string(a) + ", " + std::to_string(b) + ")");
  }
}

Weight::Weight(double v) : v_(v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError("weight must lie in [0, 1], got " + std::to_string(v));
  }
}

WeightClass Weight::classification() const {
  if (v_ == 0.0) return WeightClass::endpoint0;
  if (v_ == 1.0) return WeightClass::endpoint1;
  if (v_ == 0.5) return WeightClass::midpoint;
  return WeightClass::interior;
}

std::string_view to_string(MeanKind kind) {
  switch (kind) {
    case MeanKind::min: return "min";
    case MeanKind::max: return "max";
    case MeanKind::arith: return "arith";
    case MeanKind::geom: return "geom";
    case MeanKind::harm: return "harm";
    case MeanKind::log: return "log";
    case MeanKind::identric: return "identric";
    case MeanKind::log_dual: return "log_dual";
    case MeanKind::identric_dual: return "identric_dual";
  }
  return "?";
}

std::optional<MeanKind> parse_mean_kind(std::string_view name) {
  for (MeanKind kind : kAllMeanKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace kernel {

double arith(double a, double b) {
  if (a > b) std::swap(a, b);
  return 0.5 * a + 0.5 * b;
}

double geom(double a, double b) {
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  return std::sqrt(a) * std::sqrt(b);
}

double harm(double a, double b) {
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  return 2.0 * a * (b / (a + b));
}

double log_mean(double a, double b) {
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  const double t = numerics::log_ratio(a, b);
  if (t < 1e-8) return a * (1.0 + t * (0.5 + t / 6.0));
  return (b - a) / t;
}

double identric(double a, double b) {
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  const double t = numerics::log_ratio(a, b);
  if (t < 1e-8) return a * std::exp(t * (0.5 + t / 12.0));
  return b * std::exp(t / std::expm1(t) - 1.0);
}

double log_dual(double a, double b) { return 1.0 / log_mean(1.0 / a, 1.0 / b); }

double identric_dual(double a, double b) { return 1.0 / identric(1.0 / a, 1.0 / b); }

double arith_v(double a, double b, double v) { return (1.0 - v) * a + v * b; }

double geom_v(double a, double b, double v) {
  if (v == 0.0 || a == b) return a;
  if (v == 1.0) return b;
  const double t = numerics::log_ratio(a, b);
  return numerics::anchored_exp(a, b, t, v * t);
}

double harm_v(double a, double b, double v) {
  if (v == 0.0 || a == b) return a;
  if (v == 1.0) return b;
  return 1.0 / ((1.0 - v) / a + v / b);
}

}  // namespace kernel

namespace {

using KernelFn = double (*)(double, double);

KernelFn kernel_of(MeanKind kind) {
  switch (kind) {
    case MeanKind::min: return [](double a, double b) { return a < b ? a : b; };
    case MeanKind::max: return [](double a, double b) { return a < b ? b : a; };
    case MeanKind::arith: return kernel::arith;
    case MeanKind::geom: return kernel::geom;
    case MeanKind::harm: return kernel::harm;
    case MeanKind::log: return kernel::log_mean;
    case MeanKind::identric: return kernel::identric;
    case MeanKind::log_dual: return kernel::log_dual;
    case MeanKind::identric_dual: return kernel::identric_dual;
  }
  throw DomainError("unknown mean kind");
}

}  // namespace

double classic_mean(MeanKind kind, const PositivePair& pair) {
  return kernel_of(kind)(pair.a(), pair.b());
}

double weighted_standard(MeanKind kind, const PositivePair& pair, Weight w) {
  switch (kind) {
    case MeanKind::arith: return kernel::arith_v(pair.a(), pair.b(), w.value());
    case MeanKind::geom: return kernel::geom_v(pair.a(), pair.b(), w.value());
    case MeanKind::harm: return kernel::harm_v(pair.a(), pair.b(), w.value());
    default:
      throw DomainError("no standard weighted mean of kind '" +
                        std::string(to_string(kind)) + "'");
  }
}

SymmetricMean SymmetricMean::of(MeanKind kind) {
  return SymmetricMean(std::string(to_string(kind)), kernel_of(kind));
}

SymmetricMean dual(const SymmetricMean& m) {
  std::string name = m.name();
  if (!name.empty() && name.back() == '*') {
    name.pop_back();
  } else {
    name += '*';
  }
  return SymmetricMean(std::move(name),
                       [m](double a, double b) { return 1.0 / m(1.0 / a, 1.0 / b); });
}

}  // namespace meanforge
