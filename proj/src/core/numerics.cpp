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

#include "core/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace meanforge::numerics {

double log_ratio(double a, double b) {
  // b - a is exact for b in [a/2, 2a] (Sterbenz), so log1p keeps full
  // relative accuracy for nearby arguments.
  if (b < 2.0 * a && 2.0 * b > a) return std::log1p((b - a) / a);
  return std::log(b) - std::log(a);
}

double anchored_exp(double a, double b, double t, double log_value) {
  if (std::fabs(log_value - t) < std::fabs(log_value)) return b * std::exp(log_value - t);
  return a * std::exp(log_value);
}

double expm1_ratio(double x) {
  if (x == 0.0) return 1.0;
  return std::expm1(x) / x;
}

double log_expm1_ratio(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-3) {
    const double x2 = x * x;
    return x / 2.0 + x2 / 24.0 - x2 * x2 / 2880.0;
  }
  if (x > 0.0) return x + std::log(-std::expm1(-x) / x);
  return std::log(std::expm1(x) / x);
}

double log_expm1_ratio_derivative(double x) {
  if (std::fabs(x) < 0.1) {
    const double x2 = x * x;
    return 0.5 +
           x * (1.0 / 12.0 +
                x2 * (-1.0 / 720.0 + x2 * (1.0 / 30240.0 - x2 / 1209600.0)));
  }
  return 1.0 / (-std::expm1(-x)) - 1.0 / x;
}

double log_expm1_ratio_quotient(double x, double y) {
  return (log_expm1_ratio(y) - log_expm1_ratio(x)) / (y - x);
}

double log_expm1_ratio_average(double x, double y, int nodes) {
  const GaussLegendreRule& rule = gauss_legendre(nodes);
  const double mid = 0.5 * (x + y);
  const double half = 0.5 * (y - x);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * log_expm1_ratio_derivative(mid + half * rule.nodes[i]);
  }
  return 0.5 * sum;
}

double log_expm1_ratio_slope(double x, double y) {
  if (x == y) return log_expm1_ratio_derivative(x);
  if (std::fabs(y - x) < 1.0) return log_expm1_ratio_average(x, y);
  return log_expm1_ratio_quotient(x, y);
}

double log_mix(double v, double s) {
  if (v == 0.0) return 0.0;
  if (v == 1.0) return s;
  if (s > 0.0) {
    if (s < 700.0) return std::log1p(v * std::expm1(s));
    return s + log_mix(1.0 - v, -s);
  }
  const double m = v * std::expm1(s);
  if (m > -0.5) return std::log1p(m);
  return std::log((1.0 - v) + v * std::exp(s));
}

double power_log_mix(double v, double p, double t) {
  const double s = p * t;
  if (p == 0.0 || std::fabs(s) < 1e-300) return v * t;
  return log_mix(v, s) / p;
}

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::fabs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

}  // namespace meanforge::numerics
