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

#include "core/weighted.hpp"

#include <cmath>

#include "core/numerics.hpp"

namespace meanforge {

namespace kernel {

namespace {

bool at_endpoint(double a, double b, double v, double* out) {
  if (v < kEndpointWeight || a == b) {
    *out = a;
    return true;
  }
  if (v > 1.0 - kEndpointWeight) {
    *out = b;
    return true;
  }
  return false;
}

}  // namespace

double log_v(double a, double b, double v) {
  double endpoint;
  if (at_endpoint(a, b, v, &endpoint)) return endpoint;
  const double t = numerics::log_ratio(a, b);
  const double u = 1.0 - v;
  // a - a #_v b = -a expm1(v t) and a #_v b - b = -a e^{vt} expm1(u t);
  // the second is rewritten through b for t > 0 so nothing overflows.
  const double lower = a * std::expm1(v * t);
  const double upper = t > 0.0 ? b * -std::expm1(-u * t)
                               : a * std::exp(v * t) * std::expm1(u * t);
  return (u / v * lower + v / u * upper) / t;
}

double identric_v(double a, double b, double v) {
  double endpoint;
  if (at_endpoint(a, b, v, &endpoint)) return endpoint;
  if (v > 0.5) return identric_v(b, a, 1.0 - v);
  // Normalized to (1, x), x = e^t, the formula reads
  //   log I_v = -1 + (1-2v)/(v(1-v)) * c log c / (x-1) + v/(1-v) * x t / (x-1)
  // with c = 1 nabla_v x.
  const double t = numerics::log_ratio(a, b);
  const double u = 1.0 - v;
  const double log_c = numerics::log_mix(v, t);
  const double c_over_gap = t > 0.0 ? (v + u * std::exp(-t)) / -std::expm1(-t)
                                    : (u + v * std::exp(t)) / std::expm1(t);
  const double x_term = t / -std::expm1(-t);
  const double log_value =
      -1.0 + (1.0 - 2.0 * v) / (v * u) * c_over_gap * log_c + v / u * x_term;
  return numerics::anchored_exp(a, b, t, log_value);
}

double second_log_v(double a, double b, double v) {
  double endpoint;
  if (at_endpoint(a, b, v, &endpoint)) return endpoint;
  if (v > 0.5) return second_log_v(b, a, 1.0 - v);
  const double t = numerics::log_ratio(a, b);
  const double u = 1.0 - v;
  const double log_c = numerics::log_mix(v, t);
  const double denominator = (1.0 - 2.0 * v) / (v * u) * log_c + v / u * t;
  const double gap = t > 0.0 ? b * -std::expm1(-t) : a * std::expm1(t);
  return gap / denominator;
}

double log_v_composed(double a, double b, double v) {
  const double g = geom_v(a, b, v);
  return arith_v(log_mean(g, a), log_mean(g, b), v);
}

double identric_v_composed(double a, double b, double v) {
  const double c = arith_v(a, b, v);
  return geom_v(identric(c, a), identric(c, b), v);
}

double log_v_dual(double a, double b, double v) {
  return 1.0 / log_v(1.0 / a, 1.0 / b, v);
}

double log_v_dual_composed(double a, double b, double v) {
  const double g = geom_v(a, b, v);
  return harm_v(log_dual(g, a), log_dual(g, b), v);
}

double identric_v_dual(double a, double b, double v) {
  return 1.0 / identric_v(1.0 / a, 1.0 / b, v);
}

double identric_v_dual_composed(double a, double b, double v) {
  const double h = harm_v(a, b, v);
  return geom_v(identric_dual(h, a), identric_dual(h, b), v);
}

double second_log_v_composed(double a, double b, double v) {
  const double c = arith_v(a, b, v);
  return harm_v(log_mean(c, a), log_mean(c, b), v);
}

double second_log_v_dual(double a, double b, double v) {
  return 1.0 / second_log_v(1.0 / a, 1.0 / b, v);
}

double second_log_v_dual_composed(double a, double b, double v) {
  const double h = harm_v(a, b, v);
  return arith_v(log_dual(h, a), log_dual(h, b), v);
}

}  // namespace kernel

#define MEANFORGE_WEIGHTED_ENTRY(name, fn)                   \
  double name(const PositivePair& pair, Weight w) {          \
    return kernel::fn(pair.a(), pair.b(), w.value());        \
  }

MEANFORGE_WEIGHTED_ENTRY(weighted_log_direct, log_v)
MEANFORGE_WEIGHTED_ENTRY(weighted_log_composed, log_v_composed)
MEANFORGE_WEIGHTED_ENTRY(weighted_identric_direct, identric_v)
MEANFORGE_WEIGHTED_ENTRY(weighted_identric_composed, identric_v_composed)
MEANFORGE_WEIGHTED_ENTRY(weighted_log_dual, log_v_dual)
MEANFORGE_WEIGHTED_ENTRY(weighted_log_dual_composed, log_v_dual_composed)
MEANFORGE_WEIGHTED_ENTRY(weighted_identric_dual, identric_v_dual)
MEANFORGE_WEIGHTED_ENTRY(weighted_identric_dual_composed, identric_v_dual_composed)
MEANFORGE_WEIGHTED_ENTRY(second_weighted_log, second_log_v)
MEANFORGE_WEIGHTED_ENTRY(second_weighted_log_composed, second_log_v_composed)
MEANFORGE_WEIGHTED_ENTRY(second_weighted_log_dual, second_log_v_dual)
MEANFORGE_WEIGHTED_ENTRY(second_weighted_log_dual_composed, second_log_v_dual_composed)

#undef MEANFORGE_WEIGHTED_ENTRY

}  // namespace meanforge
