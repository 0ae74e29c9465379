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

// Cancellation-free building blocks shared by the scalar mean families.
//
// Every homogeneous binary mean is evaluated as a * F(t) with t = log(b/a),
// so the helpers here work on the log-ratio. The central function is
//
//   Lambda(x) = log(expm1(x) / x),   Lambda(0) = 0,
//
// whose divided differences give every power mean of the Stolarsky family:
// log S_{p,q}(1, e^t) = t * (Lambda(q t) - Lambda(p t)) / (q t - p t).

#ifndef MEANFORGE_CORE_NUMERICS_HPP_
#define MEANFORGE_CORE_NUMERICS_HPP_

#include <vector>

namespace meanforge::numerics {

/// log(b / a) for a, b > 0, accurate when b is close to a.
double log_ratio(double a, double b);

/// a * exp(log_value) where t = log(b / a). Rebased on b when log_value is
/// nearer t, so a result between a and b never overflows on the way.
double anchored_exp(double a, double b, double t, double log_value);

/// expm1(x) / x with the removable point x = 0 filled in.
double expm1_ratio(double x);

/// Lambda(x) = log(expm1(x) / x). Finite for every finite x.
double log_expm1_ratio(double x);

/// Lambda'(x) = 1 / (1 - e^{-x}) - 1 / x, equal to 1/2 at x = 0.
double log_expm1_ratio_derivative(double x);

/// (Lambda(y) - Lambda(x)) / (y - x), or Lambda'(x) when y == x.
///
/// For |y - x| < 1 the quotient is replaced by an 8-node Gauss-Legendre
/// average of Lambda' over [x, y]; Lambda' is analytic in a strip of
/// half-width 2*pi about the real axis, so the average is exact to double
/// precision there while the plain quotient would cancel.
double log_expm1_ratio_slope(double x, double y);

/// The plain quotient (Lambda(y) - Lambda(x)) / (y - x); requires x != y.
double log_expm1_ratio_quotient(double x, double y);

/// The Gauss-Legendre average of Lambda' over [x, y] with `nodes` nodes.
double log_expm1_ratio_average(double x, double y, int nodes = 8);

/// log((1 - v) + v e^s) for v in [0, 1], without overflow or cancellation.
double log_mix(double v, double s);

/// log_mix(v, p t) / p, the log of the weighted power mean B_{p;v}(1, e^t).
/// Returns the p -> 0 limit v t when p t underflows.
double power_log_mix(double v, double p, double t);

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point rule (n >= 1). Rules are computed once per order by
/// Newton iteration on the Legendre recurrence and cached; safe to call
/// concurrently.
const GaussLegendreRule& gauss_legendre(int n);

}  // namespace meanforge::numerics

#endif  // MEANFORGE_CORE_NUMERICS_HPP_
