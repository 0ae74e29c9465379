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

#include "core/power.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "core/errors.hpp"
#include "core/numerics.hpp"
#include "core/weighted.hpp"

namespace meanforge {

namespace {

StolarskyBranch classify(double p, double q) {
  const double r = StolarskyParams::kStolarskyRadius;
  const bool p_small = std::fabs(p) < r;
  const bool q_small = std::fabs(q) < r;
  if (p_small && q_small) return StolarskyBranch::both_zero;
  if (p_small) return StolarskyBranch::p_zero;
  if (q_small) return StolarskyBranch::q_zero;
  if (std::fabs(p - q) < r) return StolarskyBranch::p_equals_q;
  return StolarskyBranch::generic;
}

// Ordered pair with a <= b and t = log(b / a) >= 0.
struct Normalized {
  double a;
  double b;
  double t;

  double scale(double log_value) const { return numerics::anchored_exp(a, b, t, log_value); }
};

Normalized normalize(double a, double b) {
  if (a > b) std::swap(a, b);
  return {a, b, numerics::log_ratio(a, b)};
}

bool weighted_endpoint(double a, double b, double v, double* out) {
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

// log|expm1(y)| without overflow.
double log_abs_expm1(double y) {
  return y > 0.0 ? y + std::log(-std::expm1(-y)) : std::log(-std::expm1(y));
}

// log| (1-v)/v expm1(s x) + v/(1-v) e^{s x} expm1(s r) |, r = t - x.
// x and r share the sign of t, so both terms share a sign and the sum is
// taken as a log-sum-exp.
double log_bracket(double v, double s, double x, double r) {
  const double u = 1.0 - v;
  const double first = std::log(u / v) + log_abs_expm1(s * x);
  const double second = std::log(v / u) + s * x + log_abs_expm1(s * r);
  const double hi = std::max(first, second);
  return hi + std::log1p(std::exp(std::min(first, second) - hi));
}

}  // namespace

std::string_view to_string(StolarskyBranch branch) {
  switch (branch) {
    case StolarskyBranch::generic: return "generic";
    case StolarskyBranch::p_zero: return "p_zero";
    case StolarskyBranch::q_zero: return "q_zero";
    case StolarskyBranch::p_equals_q: return "p_equals_q";
    case StolarskyBranch::both_zero: return "both_zero";
  }
  return "?";
}

std::string_view to_string(PowerKind kind) {
  switch (kind) {
    case PowerKind::log: return "log";
    case PowerKind::difference: return "difference";
    case PowerKind::exponential: return "exponential";
    case PowerKind::second_log: return "second_log";
  }
  return "?";
}

StolarskyParams::StolarskyParams(double p, double q) : p_(p), q_(q) {
  if (!(std::isfinite(p) && std::isfinite(q))) {
    throw DomainError("Stolarsky parameters must be finite");
  }
  branch_ = classify(p, q);
}

namespace kernel {

double binomial(double p, double a, double b) {
  if (a == b) return a;
  const Normalized n = normalize(a, b);
  return n.scale(numerics::power_log_mix(0.5, p, n.t));
}

double binomial_v(double p, double a, double b, double v) {
  if (v == 0.0 || a == b) return a;
  if (v == 1.0) return b;
  const double t = numerics::log_ratio(a, b);
  return numerics::anchored_exp(a, b, t, numerics::power_log_mix(v, p, t));
}

double stolarsky(double p, double q, double a, double b) {
  if (a == b) return a;
  const Normalized n = normalize(a, b);
  return n.scale(n.t * numerics::log_expm1_ratio_slope(p * n.t, q * n.t));
}

double power_family(PowerKind kind, double p, double a, double b) {
  if (a == b) return a;
  const Normalized n = normalize(a, b);
  const double t = n.t;
  double log_value = 0.0;
  switch (kind) {
    case PowerKind::log:
      log_value = t * numerics::log_expm1_ratio_slope(t, (p + 1.0) * t);
      break;
    case PowerKind::difference:
      log_value = t * numerics::log_expm1_ratio_slope(p * t, (p + 1.0) * t);
      break;
    case PowerKind::exponential:
      // -1/p + t e^{pt} / expm1(pt)
      log_value = t * numerics::log_expm1_ratio_derivative(p * t);
      break;
    case PowerKind::second_log:
      log_value = t * numerics::log_expm1_ratio_slope(0.0, p * t);
      break;
  }
  return n.scale(log_value);
}

}  // namespace kernel

double binomial(double p, const PositivePair& pair) {
  return kernel::binomial(p, pair.a(), pair.b());
}

double stolarsky(const StolarskyParams& params, const PositivePair& pair) {
  return kernel::stolarsky(params.p(), params.q(), pair.a(), pair.b());
}

double stolarsky_generic_formula(const StolarskyParams& params, const PositivePair& pair) {
  if (params.p() == params.q()) {
    throw DomainError("the generic Stolarsky formula needs p != q");
  }
  if (pair.a() == pair.b()) return pair.a();
  const Normalized n = normalize(pair.a(), pair.b());
  return n.scale(n.t * numerics::log_expm1_ratio_quotient(params.p() * n.t, params.q() * n.t));
}

double stolarsky_near_diagonal(const StolarskyParams& params, const PositivePair& pair) {
  if (pair.a() == pair.b()) return pair.a();
  const Normalized n = normalize(pair.a(), pair.b());
  return n.scale(n.t * numerics::log_expm1_ratio_average(params.p() * n.t, params.q() * n.t));
}

double power_family(PowerKind kind, double p, const PositivePair& pair) {
  if (!std::isfinite(p)) throw DomainError("power parameter must be finite");
  return kernel::power_family(kind, p, pair.a(), pair.b());
}

double weighted_binomial(double p, const PositivePair& pair, Weight w) {
  if (!std::isfinite(p)) throw DomainError("power parameter must be finite");
  return kernel::binomial_v(p, pair.a(), pair.b(), w.value());
}

double weighted_stolarsky(StolarskyForm form, const StolarskyParams& params,
                          const PositivePair& pair, Weight w) {
  double p = params.p();
  double q = params.q();
  if (form == StolarskyForm::via_Bq) std::swap(p, q);
  const double a = pair.a();
  const double b = pair.b();
  const double v = w.value();
  const double x = kernel::binomial_v(p, a, b, v);
  return kernel::binomial_v(q - p, kernel::stolarsky(p, q, x, a),
                            kernel::stolarsky(p, q, x, b), v);
}

double weighted_stolarsky_explicit(StolarskyForm form, const StolarskyParams& params,
                                   const PositivePair& pair, Weight w) {
  double p = params.p();
  double q = params.q();
  if (p == 0.0 || q == 0.0 || p == q) {
    throw DomainError("the explicit weighted Stolarsky form needs p, q nonzero and p != q");
  }
  if (form == StolarskyForm::via_Bq) std::swap(p, q);
  const double a = pair.a();
  const double b = pair.b();
  const double v = w.value();
  double endpoint;
  if (weighted_endpoint(a, b, v, &endpoint)) return endpoint;
  const double t = numerics::log_ratio(a, b);
  const double lb = numerics::power_log_mix(v, p, t);
  const double rest = -numerics::power_log_mix(1.0 - v, p, -t);
  // base = (p/q) / expm1(pt) * bracket
  const double log_base = std::log(std::fabs(p / q)) + log_bracket(v, q, lb, rest) -
                          log_abs_expm1(p * t);
  return numerics::anchored_exp(a, b, t, log_base / (q - p));
}

double weighted_power(PowerKind kind, double p, const PositivePair& pair, Weight w) {
  if (!std::isfinite(p)) throw DomainError("power parameter must be finite");
  const double a = pair.a();
  const double b = pair.b();
  const double v = w.value();
  if (a == b) return a;
  auto family = [kind, p](double x, double y) { return kernel::power_family(kind, p, x, y); };
  switch (kind) {
    case PowerKind::log: {
      const double c = kernel::arith_v(a, b, v);
      return kernel::binomial_v(p, family(c, a), family(c, b), v);
    }
    case PowerKind::difference: {
      const double x = kernel::binomial_v(p, a, b, v);
      return kernel::arith_v(family(x, a), family(x, b), v);
    }
    case PowerKind::exponential: {
      const double x = kernel::binomial_v(p, a, b, v);
      return kernel::geom_v(family(x, a), family(x, b), v);
    }
    case PowerKind::second_log: {
      const double x = kernel::binomial_v(p, a, b, v);
      return kernel::binomial_v(-p, family(x, a), family(x, b), v);
    }
  }
  throw DomainError("unknown power kind");
}

double weighted_power_explicit(PowerKind kind, double p, const PositivePair& pair, Weight w) {
  if (!std::isfinite(p) || p == 0.0 ||
      ((kind == PowerKind::log || kind == PowerKind::difference) && p == -1.0)) {
    throw DomainError("explicit weighted " + std::string(to_string(kind)) +
                      " mean is undefined at p = " + std::to_string(p));
  }
  const double a = pair.a();
  const double b = pair.b();
  const double v = w.value();
  double endpoint;
  if (weighted_endpoint(a, b, v, &endpoint)) return endpoint;
  const double u = 1.0 - v;
  const double t = numerics::log_ratio(a, b);
  const double s = p + 1.0;
  switch (kind) {
    case PowerKind::log: {
      const double lc = numerics::log_mix(v, t);
      const double rest = -numerics::log_mix(u, -t);
      // base = bracket / ((p+1) expm1(t)), value = base^{1/p}
      const double log_base =
          log_bracket(v, s, lc, rest) - std::log(std::fabs(s)) - log_abs_expm1(t);
      return numerics::anchored_exp(a, b, t, log_base / p);
    }
    case PowerKind::difference: {
      const double lb = numerics::power_log_mix(v, p, t);
      const double rest = -numerics::power_log_mix(u, p, -t);
      return numerics::anchored_exp(
          a, b, t, std::log(std::fabs(p / s)) + log_bracket(v, s, lb, rest) - log_abs_expm1(p * t));
    }
    case PowerKind::exponential: {
      // -1/p + [(1-v)/v B^p lB + v/(1-v)(e^{pt} t - B^p lB)] / expm1(pt), with
      // e^{pt} - B^p = (1-v) expm1(pt) split off.
      const double lb = numerics::power_log_mix(v, p, t);
      const double rest = -numerics::power_log_mix(u, p, -t);
      const double pt = p * t;
      const double bp_ratio = pt > 0.0 ? std::exp(-p * rest) / -std::expm1(-pt)
                                       : std::exp(p * lb) / std::expm1(pt);
      const double ep_ratio = pt > 0.0 ? 1.0 / -std::expm1(-pt) : std::exp(pt) / std::expm1(pt);
      const double log_value = -1.0 / p + u / v * bp_ratio * lb + v / u * ep_ratio * rest + v * lb;
      return numerics::anchored_exp(a, b, t, log_value);
    }
    case PowerKind::second_log: {
      const double lb = numerics::power_log_mix(v, p, t);
      const double rest = -numerics::power_log_mix(u, p, -t);
      // base = p / expm1(pt) ((1-v)/v lB + v/(1-v)(t - lB)), value = base^{-1/p}
      const double log_base = std::log(std::fabs(p)) - log_abs_expm1(p * t) +
                              std::log(std::fabs(u / v * lb + v / u * rest));
      return numerics::anchored_exp(a, b, t, -log_base / p);
    }
  }
  throw DomainError("unknown power kind");
}

double second_power_log_weighted_sharp(double p, const PositivePair& pair, Weight w) {
  if (!std::isfinite(p)) throw DomainError("power parameter must be finite");
  const double a = pair.a();
  const double b = pair.b();
  const double v = w.value();
  const double g = kernel::geom_v(a, b, v);
  return kernel::binomial_v(p, kernel::power_family(PowerKind::second_log, p, g, a),
                            kernel::power_family(PowerKind::second_log, p, g, b), v);
}

}  // namespace meanforge
