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

#include "core/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/numerics.hpp"
#include "core/random.hpp"

namespace meanforge {

double resultant(const SymmetricMean& m1, const SymmetricMean& m2,
                 const SymmetricMean& m3, const PositivePair& pair) {
  const double a = pair.a();
  const double b = pair.b();
  const double c = m3(a, b);
  return m1(m2(a, c), m2(c, b));
}

namespace {

struct PairSampler {
  explicit PairSampler(const CheckConfig& config)
      : rng(config.seed), spread(config.log_ratio_max) {}

  std::pair<double, double> next() {
    const double a = std::exp(rng.uniform(-7.0, 7.0));
    const double b = a * std::exp(rng.uniform(-spread, spread));
    return {a, b};
  }

  Rng rng;
  double spread;
};

template <typename Residual>
StabilizabilityReport pairwise_report(const CheckConfig& config, Residual residual) {
  StabilizabilityReport report;
  report.tolerance = config.tolerance;
  PairSampler sampler(config);
  for (std::size_t i = 0; i < config.samples; ++i) {
    const auto [a, b] = sampler.next();
    const double r = residual(a, b);
    ++report.samples;
    if (!(r <= report.max_residual)) {
      report.max_residual = r;
      report.worst_input = {a, b};
    }
  }
  report.passed = report.max_residual <= config.tolerance;
  return report;
}

}  // namespace

StabilizabilityReport check_stable(const SymmetricMean& m, const CheckConfig& config) {
  return check_stabilizable(m, m, m, config);
}

StabilizabilityReport check_stabilizable(const SymmetricMean& m1, const SymmetricMean& m,
                                         const SymmetricMean& m2, const CheckConfig& config) {
  return pairwise_report(config, [&](double a, double b) {
    const PositivePair pair(a, b);
    const double expected = m(pair);
    return std::fabs(resultant(m1, m, m2, pair) - expected) / expected;
  });
}

StabilizabilityReport check_cross_mean(const SymmetricMean& m, const CheckConfig& config) {
  StabilizabilityReport report;
  report.tolerance = config.tolerance;
  Rng rng(config.seed);
  const double half = 0.5 * config.log_ratio_max;
  for (std::size_t i = 0; i < config.samples; ++i) {
    std::array<double, 4> x;
    for (double& xi : x) xi = std::exp(rng.uniform(-half, half));
    const double reference = m(m(x[0], x[1]), m(x[2], x[3]));
    std::array<int, 4> perm = {0, 1, 2, 3};
    double worst = 0.0;
    do {
      const double value = m(m(x[perm[0]], x[perm[1]]), m(x[perm[2]], x[perm[3]]));
      worst = std::max(worst, std::fabs(value - reference) / reference);
    } while (std::next_permutation(perm.begin(), perm.end()));
    ++report.samples;
    if (worst > report.max_residual) {
      report.max_residual = worst;
      report.worst_input.assign(x.begin(), x.end());
    }
  }
  report.passed = report.max_residual <= config.tolerance;
  return report;
}

WeightedMean WeightedMean::standard(MeanKind kind) {
  switch (kind) {
    case MeanKind::arith: return WeightedMean("arith_v", kernel::arith_v);
    case MeanKind::geom: return WeightedMean("geom_v", kernel::geom_v);
    case MeanKind::harm: return WeightedMean("harm_v", kernel::harm_v);
    default:
      throw DomainError("no standard weighted mean of kind '" +
                        std::string(to_string(kind)) + "'");
  }
}

WeightedMean weighted_construct(const SymmetricMean& m, const WeightedMean& p_family,
                                const WeightedMean& q_family) {
  std::string name = "R(" + q_family.name() + "," + m.name() + "," + p_family.name() + ")";
  return WeightedMean(std::move(name), [m, p_family, q_family](double a, double b, double v) {
    const double c = p_family(a, b, v);
    return q_family(m(c, a), m(c, b), v);
  });
}

namespace {

constexpr std::array<MeanKind, 3> kStandardOrder = {MeanKind::arith, MeanKind::geom,
                                                    MeanKind::harm};

constexpr MeanKind kTableGenerator[3][3] = {
    {MeanKind::arith, MeanKind::identric, MeanKind::log},
    {MeanKind::log, MeanKind::geom, MeanKind::log_dual},
    {MeanKind::log_dual, MeanKind::identric_dual, MeanKind::harm},
};

const char* const kTableNames[3][3] = {
    {"arith_v", "Iv", "calLv"},
    {"Lv", "geom_v", "Lv*"},
    {"calLv*", "Iv*", "harm_v"},
};

void check_cell(int row, int col) {
  if (row < 0 || row > 2 || col < 0 || col > 2) {
    throw DomainError("table cell out of range");
  }
}

}  // namespace

MeanKind weighted_table_generator(int row, int col) {
  check_cell(row, col);
  return kTableGenerator[row][col];
}

std::string weighted_table_name(int row, int col) {
  check_cell(row, col);
  return kTableNames[row][col];
}

WeightedTable weighted_table(const PositivePair& pair, Weight w) {
  WeightedTable out{};
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      const WeightedMean cell =
          weighted_construct(SymmetricMean::of(kTableGenerator[row][col]),
                             WeightedMean::standard(kStandardOrder[row]),
                             WeightedMean::standard(kStandardOrder[col]));
      out[row][col] = cell(pair, w);
    }
  }
  return out;
}

void GridConfig::validate() const {
  if (points < 17 || points % 2 == 0) {
    throw DomainError("trace grid needs an odd number of points >= 17, got " +
                      std::to_string(points));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("trace grid half-width must be positive and finite");
  }
}

MeanTrace::MeanTrace(const GridConfig& grid, const SymmetricMean& m) : grid_(grid) {
  grid_.validate();
  step_ = 2.0 * grid_.half_width / (grid_.points - 1);
  g_.resize(grid_.points);
  const int centre = grid_.points / 2;
  for (int i = 0; i < grid_.points; ++i) {
    g_[i] = i == centre ? 0.0 : std::log(m(1.0, std::exp(log_x(i))));
  }
}

double MeanTrace::log_x(int i) const {
  const int centre = grid_.points / 2;
  return (i - centre) * step_;
}

double MeanTrace::x(int i) const { return std::exp(log_x(i)); }

double MeanTrace::f(int i) const { return std::exp(g_[i]); }

double MeanTrace::log_value(double h) const {
  const int n = size();
  const double width = grid_.half_width;
  double g;
  if (h <= -width) {
    g = g_[0] + (h + width) * (g_[1] - g_[0]) / step_;
  } else if (h >= width) {
    g = g_[n - 1] + (h - width) * (g_[n - 1] - g_[n - 2]) / step_;
  } else {
    // Barycentric form of the 8-point interpolant on equispaced nodes:
    // weights (-1)^j C(7, j).
    static constexpr double kWeights[8] = {1, -7, 21, -35, 35, -21, 7, -1};
    const int k = static_cast<int>(std::floor((h + width) / step_));
    const int first = std::clamp(k - 3, 0, n - 8);
    double num = 0.0;
    double den = 0.0;
    bool on_node = false;
    for (int j = 0; j < 8; ++j) {
      const double d = h - log_x(first + j);
      if (d == 0.0) {
        g = g_[first + j];
        on_node = true;
        break;
      }
      const double c = kWeights[j] / d;
      num += c * g_[first + j];
      den += c;
    }
    if (!on_node) g = num / den;
  }
  return std::clamp(g, std::min(0.0, h), std::max(0.0, h));
}

double MeanTrace::operator()(double x) const { return std::exp(log_value(std::log(x))); }

double MeanTrace::evaluate(double a, double b) const {
  const double h = std::log(b) - std::log(a);
  return numerics::anchored_exp(a, b, h, log_value(h));
}

SymmetricMean MeanTrace::as_mean(std::string name) const {
  return SymmetricMean(std::move(name), [trace = *this](double a, double b) {
    return trace.evaluate(a, b);
  });
}

StabilizeResult stabilize_fixed_point(const SymmetricMean& q, const SymmetricMean& p,
                                      const StabilizeOptions& options) {
  if (!(options.tolerance > 0.0) || options.max_iter < 1) {
    throw DomainError("stabilizer needs tolerance > 0 and max_iter >= 1");
  }
  StabilizeResult result{MeanTrace(options.grid, options.initial.value_or(p)), 0, 0.0, {}};
  MeanTrace& trace = result.trace;
  const int n = trace.size();
  std::vector<double> next(n);
  std::vector<double> symmetric(n);
  std::vector<double>& g = trace.log_values();

  for (int sweep = 0; sweep < options.max_iter; ++sweep) {
    for (int i = 0; i < n; ++i) {
      const double h = trace.log_x(i);
      if (h == 0.0) {
        next[i] = 0.0;
        continue;
      }
      // R(q, M, p)(1, x) = q(M(1, y), M(y, x)), y = p(1, x).
      const double u = std::log(p(1.0, std::exp(h)));
      const double left = trace.log_value(u);
      const double right = u + trace.log_value(h - u);
      next[i] = std::log(q(std::exp(left), std::exp(right)));
    }
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      const double h = trace.log_x(i);
      // Symmetry of M means g(h) = h + g(-h).
      double sym = 0.5 * (next[i] + next[n - 1 - i] + h);
      sym = std::clamp(sym, std::min(0.0, h), std::max(0.0, h));
      change = std::max(change, std::fabs(sym - g[i]));
      symmetric[i] = sym;
    }
    g.swap(symmetric);
    result.history.push_back(change);
    result.residual = change;
    if (change < options.tolerance) return result;
    ++result.iterations;
  }
  throw NonConvergence(result.residual, result.history);
}

}  // namespace meanforge
