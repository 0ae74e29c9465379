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

// Power means: binomial, the Stolarsky family and its one-parameter slices,
// plus their weighted versions.
//
// All of them reduce to divided differences of Lambda(x) = log(expm1(x)/x)
// on the normalized pair (1, e^t); see numerics.hpp.

#ifndef MEANFORGE_CORE_POWER_HPP_
#define MEANFORGE_CORE_POWER_HPP_

#include <string_view>

#include "core/scalar.hpp"

namespace meanforge {

enum class StolarskyBranch { generic, p_zero, q_zero, p_equals_q, both_zero };

std::string_view to_string(StolarskyBranch branch);

/// Parameters of S_{p,q}. The branch records which limit formula the pair
/// sits on, with switching radius kStolarskyRadius.
class StolarskyParams {
 public:
  static constexpr double kStolarskyRadius = 1e-6;

  /// Throws DomainError for non-finite p or q.
  StolarskyParams(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }
  StolarskyBranch branch() const { return branch_; }
  StolarskyParams swapped() const { return StolarskyParams(q_, p_); }

 private:
  double p_;
  double q_;
  StolarskyBranch branch_;
};

/// B_p(a, b) = ((a^p + b^p) / 2)^{1/p}, geometric at p = 0.
double binomial(double p, const PositivePair& pair);

/// S_{p,q}(a, b) on every branch.
double stolarsky(const StolarskyParams& params, const PositivePair& pair);

/// Plain closed-form quotient, valid off the diagonal only. Exposed so the
/// near-diagonal path can be compared against it.
double stolarsky_generic_formula(const StolarskyParams& params, const PositivePair& pair);
/// Quadrature form used when |q - p| * |log(b/a)| < 1.
double stolarsky_near_diagonal(const StolarskyParams& params, const PositivePair& pair);

enum class PowerKind { log, difference, exponential, second_log };

std::string_view to_string(PowerKind kind);

/// L_p, D_p, I_p and the second power logarithmic mean.
double power_family(PowerKind kind, double p, const PositivePair& pair);

/// B_{p;v}(a, b) = ((1-v) a^p + v b^p)^{1/p}.
double weighted_binomial(double p, const PositivePair& pair, Weight w);

enum class StolarskyForm { via_Bp, via_Bq };

/// via_Bp: B_{q-p;v}(S(x, a), S(x, b)) with x = B_{p;v}(a, b).
/// via_Bq: the same with p and q exchanged.
double weighted_stolarsky(StolarskyForm form, const StolarskyParams& params,
                          const PositivePair& pair, Weight w);
/// Closed form of the via_Bp/via_Bq composition. Requires p, q nonzero and
/// p != q; throws DomainError otherwise.
double weighted_stolarsky_explicit(StolarskyForm form, const StolarskyParams& params,
                                   const PositivePair& pair, Weight w);

/// Weighted power means by composition:
///   log:         B_{p;v}(L_p(c, a), L_p(c, b)),   c = a nabla_v b
///   difference:  nabla_v(D_p(x, a), D_p(x, b)),   x = B_{p;v}(a, b)
///   exponential: #_v(I_p(x, a), I_p(x, b))
///   second_log:  B_{-p;v}(L_p(x, a), L_p(x, b)) with the second power log mean
double weighted_power(PowerKind kind, double p, const PositivePair& pair, Weight w);
/// Closed forms of the same means. log needs p != 0, p != -1; difference
/// needs p != 0, p != -1; exponential and second_log need p != 0.
double weighted_power_explicit(PowerKind kind, double p, const PositivePair& pair, Weight w);

/// B_{p;v}(Ls_p(a #_v b, a), Ls_p(a #_v b, b)), the (B_p, #)-stabilized
/// weighting of the second power logarithmic mean. Another valid weighted
/// version; not expected to match weighted_power.
double second_power_log_weighted_sharp(double p, const PositivePair& pair, Weight w);

namespace kernel {

double binomial(double p, double a, double b);
double binomial_v(double p, double a, double b, double v);
double stolarsky(double p, double q, double a, double b);
double power_family(PowerKind kind, double p, double a, double b);

}  // namespace kernel

}  // namespace meanforge

#endif  // MEANFORGE_CORE_POWER_HPP_
