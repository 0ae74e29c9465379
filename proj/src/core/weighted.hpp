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

// Weighted logarithmic and identric means and the families built from them.
//
// Each family has two independent evaluation routes:
//   * a closed form (the direct weighted log/identric formulas and the
//     explicit second weighted logarithmic mean), evaluated on the normalized
//     pair (1, e^t) with expm1/log1p so that no 0/0 appears as t -> 0;
//   * a composition of classic means, e.g.
//       L_v(a, b) = L(a #_v b, a) nabla_v L(a #_v b, b).
// Duals are computed by definition, 1 / M_v(1/a, 1/b); the dual
// compositions are separate entry points used for cross-checking.

#ifndef MEANFORGE_CORE_WEIGHTED_HPP_
#define MEANFORGE_CORE_WEIGHTED_HPP_

#include "core/scalar.hpp"

namespace meanforge {

/// Weights closer than this to 0 or 1 return a or b in the closed forms.
inline constexpr double kEndpointWeight = 1e-9;

double weighted_log_direct(const PositivePair& pair, Weight w);
double weighted_log_composed(const PositivePair& pair, Weight w);

double weighted_identric_direct(const PositivePair& pair, Weight w);
double weighted_identric_composed(const PositivePair& pair, Weight w);

/// 1 / weighted_log_direct(1/a, 1/b, v).
double weighted_log_dual(const PositivePair& pair, Weight w);
/// L*(a #_v b, a) !_v L*(a #_v b, b).
double weighted_log_dual_composed(const PositivePair& pair, Weight w);

/// 1 / weighted_identric_direct(1/a, 1/b, v).
double weighted_identric_dual(const PositivePair& pair, Weight w);
/// I*(a !_v b, a) #_v I*(a !_v b, b).
double weighted_identric_dual_composed(const PositivePair& pair, Weight w);

/// The second weighted logarithmic mean, explicit form
///   (b - a) / ((1-2v)/(v(1-v)) log(a nabla_v b) + v/(1-v) log b - (1-v)/v log a).
double second_weighted_log(const PositivePair& pair, Weight w);
/// L(a nabla_v b, a) !_v L(a nabla_v b, b).
double second_weighted_log_composed(const PositivePair& pair, Weight w);

/// 1 / second_weighted_log(1/a, 1/b, v).
double second_weighted_log_dual(const PositivePair& pair, Weight w);
/// L*(a !_v b, a) nabla_v L*(a !_v b, b).
double second_weighted_log_dual_composed(const PositivePair& pair, Weight w);

namespace kernel {

double log_v(double a, double b, double v);
double log_v_composed(double a, double b, double v);
double identric_v(double a, double b, double v);
double identric_v_composed(double a, double b, double v);
double log_v_dual(double a, double b, double v);
double log_v_dual_composed(double a, double b, double v);
double identric_v_dual(double a, double b, double v);
double identric_v_dual_composed(double a, double b, double v);
double second_log_v(double a, double b, double v);
double second_log_v_composed(double a, double b, double v);
double second_log_v_dual(double a, double b, double v);
double second_log_v_dual_composed(double a, double b, double v);

}  // namespace kernel

}  // namespace meanforge

#endif  // MEANFORGE_CORE_WEIGHTED_HPP_
