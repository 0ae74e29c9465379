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

// Classic symmetric means, their duals and the three standard weighted means.

#ifndef MEANFORGE_CORE_SCALAR_HPP_
#define MEANFORGE_CORE_SCALAR_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace meanforge {

/// An ordered pair of strictly positive finite reals, the domain of every
/// binary mean.
class PositivePair {
 public:
  /// Throws DomainError unless a and b are finite and strictly positive.
  PositivePair(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double min() const { return a_ < b_ ? a_ : b_; }
  double max() const { return a_ < b_ ? b_ : a_; }
  PositivePair swapped() const { return PositivePair(b_, a_, Unchecked{}); }

 private:
  struct Unchecked {};
  PositivePair(double a, double b, Unchecked) : a_(a), b_(b) {}

  double a_;
  double b_;
};

enum class WeightClass { endpoint0, interior, midpoint, endpoint1 };

/// A weight v in [0, 1]. The class is decided by exact comparison.
class Weight {
 public:
  /// Throws DomainError unless 0 <= v <= 1.
  explicit Weight(double v);

  static Weight midpoint() { return Weight(0.5); }

  double value() const { return v_; }
  WeightClass classification() const;
  Weight complement() const { return Weight(1.0 - v_); }

 private:
  double v_;
};

enum class MeanKind {
  min,
  max,
  arith,
  geom,
  harm,
  log,
  identric,
  log_dual,
  identric_dual,
};

inline constexpr std::array<MeanKind, 9> kAllMeanKinds = {
    MeanKind::min,      MeanKind::max,      MeanKind::arith,
    MeanKind::geom,     MeanKind::harm,     MeanKind::log,
    MeanKind::identric, MeanKind::log_dual, MeanKind::identric_dual};

std::string_view to_string(MeanKind kind);
std::optional<MeanKind> parse_mean_kind(std::string_view name);

/// Evaluates the classic symmetric mean of the given kind.
double classic_mean(MeanKind kind, const PositivePair& pair);

/// The weighted arithmetic, geometric or harmonic mean; throws DomainError
/// for any other kind.
double weighted_standard(MeanKind kind, const PositivePair& pair, Weight w);

/// An evaluable symmetric homogeneous binary mean. Value type; copies share
/// the (immutable) evaluator.
class SymmetricMean {
 public:
  using Fn = std::function<double(double, double)>;

  SymmetricMean(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  static SymmetricMean of(MeanKind kind);

  const std::string& name() const { return name_; }
  double operator()(double a, double b) const { return fn_(a, b); }
  double operator()(const PositivePair& pair) const { return fn_(pair.a(), pair.b()); }

 private:
  std::string name_;
  Fn fn_;
};

/// m*(a, b) = 1 / m(1/a, 1/b). dual(dual(m)) evaluates like m.
SymmetricMean dual(const SymmetricMean& m);

// Unchecked kernels on raw doubles (a, b > 0, 0 <= v <= 1). The symmetric
// ones order their arguments first, so m(a, b) == m(b, a) bitwise.
namespace kernel {

double arith(double a, double b);
double geom(double a, double b);
double harm(double a, double b);
double log_mean(double a, double b);
double identric(double a, double b);
double log_dual(double a, double b);
double identric_dual(double a, double b);

double arith_v(double a, double b, double v);
double geom_v(double a, double b, double v);
double harm_v(double a, double b, double v);

}  // namespace kernel

}  // namespace meanforge

#endif  // MEANFORGE_CORE_SCALAR_HPP_
