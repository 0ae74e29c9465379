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

// The resultant mean-map and what is built from it: stability checks,
// the generic weighted-mean constructor, the 3x3 weighted-mean table and a
// numerical fixed-point stabilizer working on mean traces.

#ifndef MEANFORGE_CORE_ALGEBRA_HPP_
#define MEANFORGE_CORE_ALGEBRA_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/scalar.hpp"

namespace meanforge {

/// R(m1, m2, m3)(a, b) = m1(m2(a, m3(a, b)), m2(m3(a, b), b)).
double resultant(const SymmetricMean& m1, const SymmetricMean& m2,
                 const SymmetricMean& m3, const PositivePair& pair);

/// Random-pair sampling for the algebraic checks.
struct CheckConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double log_ratio_max = 14.0;  // |log(b/a)| bound
  double tolerance = 1e-11;
};

struct StabilizabilityReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
  std::vector<double> worst_input;  // (a, b), or (a, b, c, d) for cross checks
  double tolerance = 0.0;
  bool passed = true;
};

/// max |R(m, m, m) - m| / m over random pairs.
StabilizabilityReport check_stable(const SymmetricMean& m, const CheckConfig& config = {});
/// max |R(m1, m, m2) - m| / m over random pairs.
StabilizabilityReport check_stabilizable(const SymmetricMean& m1, const SymmetricMean& m,
                                         const SymmetricMean& m2,
                                         const CheckConfig& config = {});
/// Symmetry of m(m(a, b), m(c, d)) under all 24 permutations of (a, b, c, d).
StabilizabilityReport check_cross_mean(const SymmetricMean& m, const CheckConfig& config = {});

/// A weighted family (a, b, v) -> m_v(a, b).
class WeightedMean {
 public:
  using Fn = std::function<double(double, double, double)>;

  WeightedMean(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  /// arith, geom or harm weighted means.
  static WeightedMean standard(MeanKind kind);

  const std::string& name() const { return name_; }
  double operator()(double a, double b, double v) const { return fn_(a, b, v); }
  double operator()(const PositivePair& pair, Weight w) const {
    return fn_(pair.a(), pair.b(), w.value());
  }

 private:
  std::string name_;
  Fn fn_;
};

/// M_v(a, b) = q_v(M(p_v(a, b), a), M(p_v(a, b), b)).
WeightedMean weighted_construct(const SymmetricMean& m, const WeightedMean& p_family,
                                const WeightedMean& q_family);

/// Rows are the inner family p_v, columns the outer family q_v, both in the
/// order arith, geom, harm.
using WeightedTable = std::array<std::array<double, 3>, 3>;

/// The symmetric mean generating cell (row, col).
MeanKind weighted_table_generator(int row, int col);
/// Short name of the weighted mean in cell (row, col), e.g. "Lv" or "calLv*".
std::string weighted_table_name(int row, int col);

WeightedTable weighted_table(const PositivePair& pair, Weight w);

struct GridConfig {
  int points = 513;          // odd, so x = 1 is a node
  double half_width = 12.0;  // grid covers log x in [-half_width, half_width]

  /// Throws DomainError unless points is odd and >= 17 and half_width > 0.
  void validate() const;
};

/// Grid realization of a symmetric homogeneous mean, M(a, b) = a f(b / a).
/// Stores g(h) = log f(e^h) on a uniform grid in h.
class MeanTrace {
 public:
  /// Samples `m` on the grid.
  MeanTrace(const GridConfig& grid, const SymmetricMean& m);

  static constexpr const char* kInterpolation = "lagrange8-log";

  const GridConfig& grid() const { return grid_; }
  int size() const { return static_cast<int>(g_.size()); }
  double log_x(int i) const;
  double x(int i) const;
  double f(int i) const;

  /// f at any x > 0. Inside the grid an 8-point Lagrange interpolant in
  /// (log x, log f); outside, linear extrapolation in the same variables.
  /// Always clamped to [min(1, x), max(1, x)].
  double operator()(double x) const;
  double log_value(double h) const;

  /// M(a, b) = a f(b / a).
  double evaluate(double a, double b) const;
  SymmetricMean as_mean(std::string name) const;

  std::vector<double>& log_values() { return g_; }
  const std::vector<double>& log_values() const { return g_; }

 private:
  GridConfig grid_;
  double step_;
  std::vector<double> g_;
};

struct StabilizeOptions {
  GridConfig grid;
  double tolerance = 1e-12;  // sup-norm change of log f
  int max_iter = 200;
  std::optional<SymmetricMean> initial;  // p when empty
};

struct StabilizeResult {
  MeanTrace trace;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;  // sup-norm change per sweep
};

/// Picard iteration M_{k+1} = R(q, M_k, p) on a trace. Throws
/// NonConvergence when max_iter sweeps do not bring the change below
/// tolerance.
StabilizeResult stabilize_fixed_point(const SymmetricMean& q, const SymmetricMean& p,
                                      const StabilizeOptions& options = {});

}  // namespace meanforge

#endif  // MEANFORGE_CORE_ALGEBRA_HPP_
