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

#include "core/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "core/algebra.hpp"
#include "core/errors.hpp"
#include "core/operator.hpp"
#include "core/power.hpp"
#include "core/scalar.hpp"
#include "core/weighted.hpp"

namespace meanforge {

namespace {

using Terms = std::vector<double>;
namespace k = kernel;

Terms chain_classic(double a, double b, double) {
  return {k::harm(a, b),     k::identric_dual(a, b), k::log_dual(a, b), k::geom(a, b),
          k::log_mean(a, b), k::identric(a, b),      k::arith(a, b)};
}

Terms chain_weighted_hga(double a, double b, double v) {
  return {k::harm_v(a, b, v), k::geom_v(a, b, v), k::arith_v(a, b, v)};
}

Terms chain_weighted_log(double a, double b, double v) {
  const double g = k::geom_v(a, b, v);
  const double m = k::arith_v(a, b, v);
  return {g, k::arith_v(k::geom_v(a, b, v / 2), k::geom_v(a, b, (1 + v) / 2), v),
          k::log_v(a, b, v), k::arith(g, m), m};
}

Terms chain_weighted_identric(double a, double b, double v) {
  const double g = k::geom_v(a, b, v);
  const double m = k::arith_v(a, b, v);
  return {g, k::geom(m, g), k::identric_v(a, b, v),
          k::geom_v(k::arith_v(a, b, v / 2), k::arith_v(a, b, (1 + v) / 2), v), m};
}

Terms chain_mixed_log_identric(double a, double b, double v) {
  const double g = k::geom_v(a, b, v);
  const double m = k::arith_v(a, b, v);
  return {k::log_v(a, b, v), k::log_mean(g, m), k::identric(g, m), k::arith(g, m)};
}

Terms chain_weighted_identric_lower(double a, double b, double v) {
  const double g = k::geom(a, b);
  return {k::geom_v(a, b, v), k::geom_v(k::arith_v(a, g, v), k::arith_v(g, b, v), v),
          k::identric_v(a, b, v)};
}

Terms chain_classic_short(double a, double b, double) {
  return {k::harm(a, b), k::geom(a, b), k::log_mean(a, b), k::identric(a, b), k::arith(a, b)};
}

std::vector<ChainSpec> build_specs() {
  using D = ChainDomain;
  const std::vector<std::string> t11 = {"a #_v b", "(a #_{v/2} b) nabla_v (a #_{(1+v)/2} b)",
                                        "L_v(a,b)", "(a #_v b) nabla (a nabla_v b)",
                                        "a nabla_v b"};
  const std::vector<std::string> t12 = {"a #_v b", "(a nabla_v b) # (a #_v b)", "I_v(a,b)",
                                        "(a nabla_{v/2} b) #_v (a nabla_{(1+v)/2} b)",
                                        "a nabla_v b"};
  const std::vector<std::string> t13 = {"L_v(a,b)", "L(a #_v b, a nabla_v b)",
                                        "I(a #_v b, a nabla_v b)",
                                        "(a #_v b) nabla (a nabla_v b)"};
  const std::vector<std::string> t14 = {"a #_v b", "(a nabla_v (a # b)) #_v ((a # b) nabla_v b)",
                                        "I_v(a,b)"};
  return {
      {"classic", D::scalar, {"a ! b", "I*(a,b)", "L*(a,b)", "a # b", "L(a,b)", "I(a,b)", "a nabla b"},
       chain_classic},
      {"weighted_hga", D::scalar, {"a !_v b", "a #_v b", "a nabla_v b"}, chain_weighted_hga},
      {"weighted_log", D::scalar, t11, chain_weighted_log},
      {"weighted_identric", D::scalar, t12, chain_weighted_identric},
      {"mixed_log_identric", D::scalar, t13, chain_mixed_log_identric},
      {"weighted_identric_lower", D::scalar, t14, chain_weighted_identric_lower},
      {"op_weighted_hga", D::operator_, {"A !_v B", "A #_v B", "A nabla_v B"}, chain_weighted_hga},
      {"op_classic", D::operator_, {"A ! B", "A # B", "L(A,B)", "I(A,B)", "A nabla B"}, chain_classic_short},
      {"op_weighted_log", D::operator_, t11, chain_weighted_log},
      {"op_weighted_identric", D::operator_, t12, chain_weighted_identric},
      {"op_mixed_log_identric", D::operator_, t13, chain_mixed_log_identric},
      {"op_weighted_identric_lower", D::operator_, t14, chain_weighted_identric_lower},
  };
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t k) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (k + 1));
}

constexpr double kModerateLogRatio = 14.0;

double rel(double x, double reference) {
  return std::fabs(x - reference) / std::fabs(reference);
}

// Violation of min(a, b) <= x <= max(a, b), relative to max(a, b).
double bound_violation(double x, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::max({0.0, lo - x, x - hi}) / hi;
}

double sanitize(double x) {
  return std::isfinite(x) ? x : std::numeric_limits<double>::max();
}

class Identities {
 public:
  IdentityReport& get(const std::string& id, double tolerance, bool informational = false) {
    auto it = index_.find(id);
    if (it == index_.end()) {
      it = index_.emplace(id, reports_.size()).first;
      IdentityReport r;
      r.id = id;
      r.tolerance = tolerance;
      r.informational = informational;
      reports_.push_back(std::move(r));
    }
    return reports_[it->second];
  }

  void add(const std::string& id, double tolerance, double residual, const SampleInput& input,
           bool informational = false) {
    IdentityReport& r = get(id, tolerance, informational);
    ++r.samples;
    residual = sanitize(residual);
    if (r.worst_input.empty() || residual > r.max_residual) {
      r.max_residual = std::max(r.max_residual, residual);
      r.worst_input = input;
    }
  }

  std::vector<IdentityReport> take() { return std::move(reports_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<IdentityReport> reports_;
};

void record_link(ChainReport& report, double slack, const SampleInput& input) {
  if (report.worst_input.empty() || slack < report.worst_slack) {
    report.worst_slack = slack;
    report.worst_input = input;
  }
}

// ---------------------------------------------------------------- scalar

void run_scalar(const SuiteConfig& config, std::vector<ChainReport>& chains,
                Identities& ids) {
  const Tolerances& tol = config.tolerances;
  ScalarSampler sampler(config.sampler, config.seed);
  const auto& specs = chain_specs();
  for (std::size_t i = 0; i < config.samples; ++i) {
    const auto [a, b, v] = sampler.next();
    const SampleInput input = {{"a", a}, {"b", b}, {"v", v}};
    const double scale = std::max(a, b);
    for (std::size_t c = 0; c < specs.size(); ++c) {
      if (specs[c].domain != ChainDomain::scalar) continue;
      const ChainCheck check = check_chain(specs[c], a, b, v, tol.scalar_chain);
      ChainReport& report = chains[c];
      ++report.samples;
      for (double slack : check.slacks) {
        const double normalized = slack / scale;
        if (!(normalized >= -tol.scalar_chain)) ++report.failures;
        record_link(report, sanitize(normalized), input);
      }
    }

    ids.add("Lv_direct_vs_composed", tol.identity, rel(k::log_v_composed(a, b, v), k::log_v(a, b, v)), input);
    ids.add("Iv_direct_vs_composed", tol.identity,
            rel(k::identric_v_composed(a, b, v), k::identric_v(a, b, v)), input);
    ids.add("calLv_explicit_vs_composed", tol.identity,
            rel(k::second_log_v_composed(a, b, v), k::second_log_v(a, b, v)), input);
    ids.add("Lv_dual_composed_vs_definition", tol.identity,
            rel(k::log_v_dual_composed(a, b, v), k::log_v_dual(a, b, v)), input);
    ids.add("Iv_dual_composed_vs_definition", tol.identity,
            rel(k::identric_v_dual_composed(a, b, v), k::identric_v_dual(a, b, v)), input);
    ids.add("calLv_dual_composed_vs_definition", tol.identity,
            rel(k::second_log_v_dual_composed(a, b, v), k::second_log_v_dual(a, b, v)), input);

    using Fn = double (*)(double, double, double);
    static const std::pair<const char*, Fn> families[] = {
        {"Lv", k::log_v},           {"Iv", k::identric_v},
        {"calLv", k::second_log_v}, {"Lv*", k::log_v_dual},
        {"Iv*", k::identric_v_dual}, {"calLv*", k::second_log_v_dual}};
    double reflection = 0.0;
    double bounds = 0.0;
    for (const auto& [name, fn] : families) {
      const double value = fn(a, b, v);
      reflection = std::max(reflection, rel(fn(b, a, 1.0 - v), value));
      bounds = std::max(bounds, bound_violation(value, a, b));
    }
    ids.add("weighted_reflection", tol.identity, reflection, input);
    ids.add("weighted_bounds", tol.identity, bounds, input);

    ids.add("dual_harm_is_arith", tol.exact_identity,
            rel(1.0 / k::harm(1.0 / a, 1.0 / b), k::arith(a, b)), input);
    ids.add("dual_geom_is_geom", tol.exact_identity,
            rel(1.0 / k::geom(1.0 / a, 1.0 / b), k::geom(a, b)), input);
    ids.add("log_dual_closed_form", tol.identity,
            rel(k::log_dual(a, b), a / k::log_mean(a, b) * b), input);
    ids.add("identric_dual_closed_form", tol.identity,
            rel(k::identric_dual(a, b), a / k::identric(a, b) * b), input);
  }
}

// ----------------------------------------------------------------- power

SymmetricMean binomial_mean(double p) {
  return SymmetricMean("B_" + std::to_string(p), [p](double x, double y) {
    return k::binomial(p, x, y);
  });
}

SymmetricMean stolarsky_mean(double p, double q) {
  return SymmetricMean("S", [p, q](double x, double y) { return k::stolarsky(p, q, x, y); });
}

SymmetricMean family_mean(PowerKind kind, double p) {
  return SymmetricMean(std::string(to_string(kind)), [kind, p](double x, double y) {
    return k::power_family(kind, p, x, y);
  });
}

// Moves x off the singular parameter values of the explicit forms.
double keep_away(double x, std::initializer_list<double> singular) {
  for (int guard = 0; guard < 8; ++guard) {
    bool near = false;
    for (double s : singular) near = near || std::fabs(x - s) < 0.05;
    if (!near) return x;
    x += 0.25;
  }
  return x;
}

void run_power(const SuiteConfig& config, Identities& ids) {
  const Tolerances& tol = config.tolerances;
  const double tol_a = tol.algebra;
  const std::size_t n = std::min(config.samples, config.power_samples);
  ScalarSampler sampler(config.sampler, substream(config.seed, 1));
  Rng rng(substream(config.seed, 2));
  const SymmetricMean arith = SymmetricMean::of(MeanKind::arith);
  const SymmetricMean geom = SymmetricMean::of(MeanKind::geom);
  const SymmetricMean harm = SymmetricMean::of(MeanKind::harm);
  const double radius = StolarskyParams::kStolarskyRadius;

  struct Particular {
    const char* id;
    PowerKind kind;
    double p;
    MeanKind target;
  };
  static const Particular particular[] = {
      {"L_-2=geom", PowerKind::log, -2.0, MeanKind::geom},
      {"L_-1=log", PowerKind::log, -1.0, MeanKind::log},
      {"L_0=identric", PowerKind::log, 0.0, MeanKind::identric},
      {"L_1=arith", PowerKind::log, 1.0, MeanKind::arith},
      {"D_-2=harm", PowerKind::difference, -2.0, MeanKind::harm},
      {"D_-1=log_dual", PowerKind::difference, -1.0, MeanKind::log_dual},
      {"D_-1/2=geom", PowerKind::difference, -0.5, MeanKind::geom},
      {"D_0=log", PowerKind::difference, 0.0, MeanKind::log},
      {"D_1=arith", PowerKind::difference, 1.0, MeanKind::arith},
      {"I_-1=identric_dual", PowerKind::exponential, -1.0, MeanKind::identric_dual},
      {"I_0=geom", PowerKind::exponential, 0.0, MeanKind::geom},
      {"I_1=identric", PowerKind::exponential, 1.0, MeanKind::identric},
      {"calL_-1=log_dual", PowerKind::second_log, -1.0, MeanKind::log_dual},
      {"calL_0=geom", PowerKind::second_log, 0.0, MeanKind::geom},
      {"calL_1=log", PowerKind::second_log, 1.0, MeanKind::log},
  };
  static const PowerKind kinds[] = {PowerKind::log, PowerKind::difference,
                                    PowerKind::exponential, PowerKind::second_log};

  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b, v] = sampler.next();
    const double p = keep_away(rng.uniform(-4.0, 4.0), {0.0, -1.0});
    const double q = keep_away(rng.uniform(-4.0, 4.0), {0.0, p});
    const PositivePair pair(a, b);
    const SampleInput in_p = {{"a", a}, {"b", b}, {"p", p}};
    const SampleInput in_pq = {{"a", a}, {"b", b}, {"p", p}, {"q", q}};
    const SampleInput in_w = {{"a", a}, {"b", b}, {"v", v}, {"p", p}, {"q", q}};

    // Specializations of the Stolarsky mean.
    const double s_pq = k::stolarsky(p, q, a, b);
    ids.add("B_p=S(p,2p)", tol_a, rel(k::binomial(p, a, b), k::stolarsky(p, 2 * p, a, b)), in_p);
    ids.add("L_p=S(1,p+1)", tol_a,
            rel(k::power_family(PowerKind::log, p, a, b), k::stolarsky(1, p + 1, a, b)), in_p);
    ids.add("D_p=S(p,p+1)", tol_a,
            rel(k::power_family(PowerKind::difference, p, a, b), k::stolarsky(p, p + 1, a, b)),
            in_p);
    ids.add("I_p=S(p,p)", tol_a,
            rel(k::power_family(PowerKind::exponential, p, a, b), k::stolarsky(p, p, a, b)), in_p);
    ids.add("calL_p=S(0,p)", tol_a,
            rel(k::power_family(PowerKind::second_log, p, a, b), k::stolarsky(0, p, a, b)), in_p);
    for (const Particular& c : particular) {
      ids.add(c.id, tol_a,
              rel(k::power_family(c.kind, c.p, a, b), classic_mean(c.target, pair)),
              {{"a", a}, {"b", b}});
    }
    ids.add("S_symmetric_in_p_q", tol_a, rel(k::stolarsky(q, p, a, b), s_pq), in_pq);
    ids.add("S_symmetric_in_a_b", tol_a, rel(k::stolarsky(p, q, b, a), s_pq), in_pq);
    ids.add("S_bounds", tol_a, bound_violation(s_pq, a, b), in_pq);
    {
      // The plain quotient loses about |t| / radius ulps to cancellation, so
      // the switch is probed with |t| clipped to the default sampling range.
      const double t = std::clamp(std::log(b / a), -kModerateLogRatio, kModerateLogRatio);
      const PositivePair clipped(a, a * std::exp(t));
      const StolarskyParams near(p, p + 1.0000001 * radius);
      ids.add("S_branch_continuity", 1e-8,
              rel(stolarsky_generic_formula(near, clipped),
                  stolarsky_near_diagonal(near, clipped)),
              {{"a", a}, {"b", clipped.b()}, {"p", p}});
    }

    // Stabilizations of the power means.
    const SymmetricMean s = stolarsky_mean(p, q);
    ids.add("R(B_{q-p},S,B_p)=S", tol_a,
            rel(resultant(binomial_mean(q - p), s, binomial_mean(p), pair), s_pq), in_pq);
    ids.add("R(B_{p-q},S,B_q)=S", tol_a,
            rel(resultant(binomial_mean(p - q), s, binomial_mean(q), pair), s_pq), in_pq);
    const SymmetricMean lp = family_mean(PowerKind::log, p);
    const SymmetricMean dp = family_mean(PowerKind::difference, p);
    const SymmetricMean ip = family_mean(PowerKind::exponential, p);
    const SymmetricMean sp = family_mean(PowerKind::second_log, p);
    const double lp_value = lp(pair);
    const double dp_value = dp(pair);
    const double ip_value = ip(pair);
    const double sp_value = sp(pair);
    ids.add("R(B_p,L_p,arith)=L_p", tol_a,
            rel(resultant(binomial_mean(p), lp, arith, pair), lp_value), in_p);
    ids.add("R(arith,D_p,B_p)=D_p", tol_a,
            rel(resultant(arith, dp, binomial_mean(p), pair), dp_value), in_p);
    ids.add("R(geom,I_p,B_p)=I_p", tol_a,
            rel(resultant(geom, ip, binomial_mean(p), pair), ip_value), in_p);
    ids.add("R(B_p,calL_p,geom)=calL_p", tol_a,
            rel(resultant(binomial_mean(p), sp, geom, pair), sp_value), in_p);
    ids.add("R(B_-p,L_p,B_{p+1})=L_p", tol_a,
            rel(resultant(binomial_mean(-p), lp, binomial_mean(p + 1), pair), lp_value), in_p);
    ids.add("R(harm,D_p,B_{p+1})=D_p", tol_a,
            rel(resultant(harm, dp, binomial_mean(p + 1), pair), dp_value), in_p);
    ids.add("R(B_-p,calL_p,B_p)=calL_p", tol_a,
            rel(resultant(binomial_mean(-p), sp, binomial_mean(p), pair), sp_value), in_p);

    // Weighted power means.
    const Weight w(v);
    const Weight mid(0.5);
    const PositivePair swapped = pair.swapped();
    const Weight flipped(1.0 - v);
    const StolarskyParams params(p, q);
    // Both sides exponentiate a log value of order |t|, so beyond the default
    // range the rounding budget grows with it.
    const double spread = std::max(1.0, std::fabs(std::log(b / a)) / kModerateLogRatio);
    for (StolarskyForm form : {StolarskyForm::via_Bp, StolarskyForm::via_Bq}) {
      const std::string name = form == StolarskyForm::via_Bp ? "S_v(via_Bp)" : "S_v(via_Bq)";
      const double value = weighted_stolarsky(form, params, pair, w);
      ids.add(name + "_midpoint", tol_a,
              rel(weighted_stolarsky(form, params, pair, mid), s_pq), in_pq);
      ids.add(name + "_reflection", tol_a,
              rel(weighted_stolarsky(form, params, swapped, flipped), value), in_w);
      ids.add(name + "_bounds", tol_a, bound_violation(value, a, b), in_w);
      ids.add(name + "_explicit_vs_composed", tol_a,
              rel(weighted_stolarsky_explicit(form, params, pair, w), value) / spread, in_w);
    }
    ids.add("S_v_form_gap", 0.0,
            rel(weighted_stolarsky(StolarskyForm::via_Bq, params, pair, w),
                weighted_stolarsky(StolarskyForm::via_Bp, params, pair, w)),
            in_w, true);
    for (PowerKind kind : kinds) {
      const std::string name = std::string(to_string(kind)) + "_pv";
      const double value = weighted_power(kind, p, pair, w);
      const SampleInput in_v = {{"a", a}, {"b", b}, {"v", v}, {"p", p}};
      ids.add(name + "_midpoint", tol_a,
              rel(weighted_power(kind, p, pair, mid), k::power_family(kind, p, a, b)), in_p);
      ids.add(name + "_reflection", tol_a,
              rel(weighted_power(kind, p, swapped, flipped), value), in_v);
      ids.add(name + "_bounds", tol_a, bound_violation(value, a, b), in_v);
      ids.add(name + "_explicit_vs_composed", tol_a,
              rel(weighted_power_explicit(kind, p, pair, w), value) / spread, in_v);
    }
    ids.add("B_pv_midpoint", tol_a,
            rel(weighted_binomial(p, pair, mid), k::binomial(p, a, b)), in_p);
    ids.add("calL_pv_sharp_midpoint", tol_a,
            rel(second_power_log_weighted_sharp(p, pair, mid), sp_value), in_p);
  }
}

// --------------------------------------------------------------- algebra

void run_algebra(const SuiteConfig& config, Identities& ids) {
  const Tolerances& tol = config.tolerances;
  CheckConfig check;
  check.samples = std::min(config.samples, config.algebra_samples);
  check.seed = substream(config.seed, 3);
  check.log_ratio_max = config.sampler.log_ratio_max;
  check.tolerance = tol.algebra;

  auto add_report = [&](const std::string& id, const StabilizabilityReport& r) {
    IdentityReport& out = ids.get(id, tol.algebra);
    out.samples += r.samples;
    if (sanitize(r.max_residual) >= out.max_residual) {
      out.max_residual = sanitize(r.max_residual);
      out.worst_input.clear();
      static const char* const names[] = {"a", "b", "c", "d"};
      for (std::size_t i = 0; i < r.worst_input.size() && i < 4; ++i) {
        out.worst_input.emplace_back(names[i], r.worst_input[i]);
      }
    }
  };

  const SymmetricMean arith = SymmetricMean::of(MeanKind::arith);
  const SymmetricMean geom = SymmetricMean::of(MeanKind::geom);
  const SymmetricMean harm = SymmetricMean::of(MeanKind::harm);
  const SymmetricMean log = SymmetricMean::of(MeanKind::log);
  const SymmetricMean identric = SymmetricMean::of(MeanKind::identric);
  const SymmetricMean log_dual = SymmetricMean::of(MeanKind::log_dual);
  const SymmetricMean identric_dual = SymmetricMean::of(MeanKind::identric_dual);

  for (const SymmetricMean& m : {arith, geom, harm}) {
    add_report("stable_" + m.name(), check_stable(m, check));
    add_report("cross_" + m.name(), check_cross_mean(m, check));
  }
  Rng rng(substream(config.seed, 4));
  CheckConfig per_p = check;
  per_p.samples = std::max<std::size_t>(1, check.samples / 20);
  for (int i = 0; i < 20; ++i) {
    const double p = rng.uniform(-4.0, 4.0);
    per_p.seed = substream(check.seed, 100 + i);
    add_report("stable_binomial", check_stable(SymmetricMean("B_p", [p](double x, double y) {
                                                 return k::binomial(p, x, y);
                                               }),
                                               per_p));
  }

  struct Relation {
    const SymmetricMean& m1;
    const SymmetricMean& m;
    const SymmetricMean& m2;
  };
  const Relation relations[] = {{harm, log, arith},      {arith, log, geom},
                                {geom, identric, arith}, {arith, log_dual, harm},
                                {harm, log_dual, geom},  {geom, identric_dual, harm}};
  auto relation_id = [](const SymmetricMean& m1, const SymmetricMean& m, const SymmetricMean& m2) {
    return "R(" + m1.name() + "," + m.name() + "," + m2.name() + ")=" + m.name();
  };
  for (const Relation& r : relations) {
    add_report(relation_id(r.m1, r.m, r.m2), check_stabilizable(r.m1, r.m, r.m2, check));
    // The dual relation must hold as well.
    const SymmetricMean d1 = dual(r.m1), d = dual(r.m), d2 = dual(r.m2);
    add_report(relation_id(d1, d, d2), check_stabilizable(d1, d, d2, check));
  }

  // Fixed-point stabilizer against the closed forms on |log x| <= 8.
  const GridConfig grid;
  struct Target {
    const SymmetricMean& q;
    const SymmetricMean& p;
    const SymmetricMean& expected;
  };
  const Target targets[] = {{arith, geom, log},      {harm, arith, log},
                            {geom, arith, identric}, {arith, harm, log_dual},
                            {harm, geom, log_dual},  {geom, harm, identric_dual}};
  for (const Target& t : targets) {
    const std::string id = "stabilize(" + t.q.name() + "," + t.p.name() + ")=" +
                           t.expected.name();
    IdentityReport& out = ids.get(id, tol.stabilizer);
    const SymmetricMean initials[] = {arith, geom, harm};
    for (int start = 0; start < 3; ++start) {
      StabilizeOptions options;
      options.grid = grid;
      options.initial = initials[start];
      double error = std::numeric_limits<double>::max();
      try {
        const StabilizeResult result = stabilize_fixed_point(t.q, t.p, options);
        error = 0.0;
        for (int i = 0; i < result.trace.size(); ++i) {
          if (std::fabs(result.trace.log_x(i)) > 8.0) continue;
          error = std::max(error, rel(result.trace.f(i), t.expected(1.0, result.trace.x(i))));
        }
      } catch (const NonConvergence&) {
      }
      ++out.samples;
      if (error >= out.max_residual) {
        out.max_residual = error;
        out.worst_input = {{"initial", static_cast<double>(start)}};
      }
    }
  }
}

// -------------------------------------------------------------- operator

double spectral_rel(const HPDMatrix& x, const HPDMatrix& reference) {
  return spectral_norm(x.matrix() - reference.matrix()) / spectral_norm(reference.matrix());
}

double spectral_rel(const ComplexMatrix& x, const ComplexMatrix& reference) {
  return spectral_norm(x - reference) / spectral_norm(reference);
}

void run_operator(const SuiteConfig& config, std::vector<ChainReport>& chains,
                  Identities& ids) {
  const Tolerances& tol = config.tolerances;
  const auto& specs = chain_specs();
  std::map<std::string, std::size_t> chain_index;
  for (std::size_t c = 0; c < specs.size(); ++c) chain_index[specs[c].id] = c;

  Rng rng(substream(config.seed, 5));
  const auto log_mean = RepresentingFunction::of(SymmetricMean::of(MeanKind::log));
  for (std::size_t s = 0; s < config.operator_samples; ++s) {
    const int dim = config.operator_dims[s % config.operator_dims.size()];
    const double v = 0.1 * static_cast<double>(1 + s % 9);
    const HPDMatrix a = random_hpd(dim, rng);
    const HPDMatrix b = random_hpd(dim, rng);
    const SampleInput input = {{"sample", static_cast<double>(s)},
                               {"dim", static_cast<double>(dim)},
                               {"v", v}};

    for (const OperatorChain& chain : check_operator_chains(a, b, v, tol.operator_chain)) {
      ChainReport& report = chains[chain_index.at(chain.id)];
      ++report.samples;
      for (const OperatorChainLink& link : chain.links) {
        if (!link.order.holds) ++report.failures;
        record_link(report, sanitize(link.order.normalized), input);
      }
    }

    ids.add("op_Lv_composed_vs_representing", tol.operator_identity,
            spectral_rel(op_weighted_log(OperatorMode::composed, a, b, v),
                         op_weighted_log(OperatorMode::representing, a, b, v)),
            input);
    ids.add("op_Iv_composed_vs_representing", tol.operator_identity,
            spectral_rel(op_weighted_identric(OperatorMode::composed, a, b, v),
                         op_weighted_identric(OperatorMode::representing, a, b, v)),
            input);
    const HPDMatrix l_ab = apply_mean(log_mean, a, b);
    ids.add("op_log_symmetry", tol.operator_identity,
            spectral_rel(apply_mean(log_mean, b, a), l_ab), input);
    ids.add("op_harm_vs_inversion", tol.operator_identity,
            spectral_rel(op_weighted_standard(MeanKind::harm, a, b, v),
                         op_weighted_harm_by_inversion(a, b, v)),
            input);
    {
      const double t = 0.5 + static_cast<double>(s % 7);
      const HPDMatrix ta(t * a.matrix());
      const HPDMatrix tb(t * b.matrix());
      ids.add("op_homogeneity", tol.algebra,
              spectral_rel(apply_mean(log_mean, ta, tb).matrix(), t * l_ab.matrix()), input);
    }

    if (s % 10 == 0) {
      const LogIntegral integral = op_log_integral(a, b);
      ids.add("op_log_integral_geometric", tol.integral,
              spectral_rel(integral.geometric, l_ab.matrix()), input);
      ids.add("op_log_integral_harmonic", tol.integral,
              spectral_rel(integral.harmonic, l_ab.matrix()), input);

      // Commuting reduction on diagonal operands.
      RealVector da(dim);
      RealVector db(dim);
      for (int i = 0; i < dim; ++i) {
        da(i) = std::exp(rng.uniform(-3.0, 3.0));
        db(i) = std::exp(rng.uniform(-3.0, 3.0));
      }
      double worst = 0.0;
      for (const OperatorChain& chain :
           operator_chains(HPDMatrix::diagonal(da), HPDMatrix::diagonal(db), v)) {
        const ChainSpec& spec = specs[chain_index.at(chain.id)];
        for (int i = 0; i < dim; ++i) {
          const Terms scalar = spec.evaluate(da(i), db(i), v);
          for (std::size_t term = 0; term < scalar.size(); ++term) {
            const ComplexMatrix& m = chain.values[term].matrix();
            worst = std::max(worst, std::abs(m(i, i) - scalar[term]) / scalar[term]);
            for (int j = 0; j < dim; ++j) {
              if (j != i) worst = std::max(worst, std::abs(m(i, j)) / scalar[term]);
            }
          }
        }
      }
      ids.add("op_commuting_reduction", tol.commuting, worst, input);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- public

const std::vector<std::string>& chain_ids() {
  static const std::vector<std::string> ids = {"classic",  "weighted_hga",  "weighted_log", "weighted_identric",
                                               "mixed_log_identric", "weighted_identric_lower",  "op_weighted_hga", "op_classic",
                                               "op_weighted_log", "op_weighted_identric",  "op_mixed_log_identric", "op_weighted_identric_lower"};
  return ids;
}

const std::vector<ChainSpec>& chain_specs() {
  static const std::vector<ChainSpec> specs = [] {
    std::vector<ChainSpec> built = build_specs();
    const auto& ids = chain_ids();
    if (built.size() != ids.size()) throw std::logic_error("chain table size mismatch");
    for (const std::string& id : ids) {
      const auto count = std::count_if(built.begin(), built.end(),
                                       [&](const ChainSpec& s) { return s.id == id; });
      if (count != 1) throw std::logic_error("chain " + id + " is not covered exactly once");
    }
    return built;
  }();
  return specs;
}

const ChainSpec& chain_spec(const std::string& id) {
  for (const ChainSpec& spec : chain_specs()) {
    if (spec.id == id) return spec;
  }
  throw DomainError("unknown chain id '" + id + "'");
}

ChainCheck check_chain(const ChainSpec& spec, double a, double b, double v, double tol) {
  ChainCheck out;
  out.values = spec.evaluate(a, b, v);
  const double floor = -tol * std::max(a, b);
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
    const double slack = out.values[i + 1] - out.values[i];
    out.slacks.push_back(slack);
    if (!(slack >= floor)) out.passed = false;
  }
  return out;
}

void SuiteConfig::validate() const {
  if (samples == 0) throw DomainError("samples must be positive");
  const SamplerConfig& s = sampler;
  if (!(s.log_ratio_max > 0.0 && s.log_ratio_max <= 690.0)) {
    throw DomainError("log-ratio bound must lie in (0, 690]");
  }
  if (!(s.log10_a_min <= s.log10_a_max && std::fabs(s.log10_a_min) <= 100 &&
        std::fabs(s.log10_a_max) <= 100)) {
    throw DomainError("bad range for a");
  }
  if (!(0.0 <= s.v_min && s.v_min <= s.v_max && s.v_max <= 1.0)) {
    throw DomainError("weight range must satisfy 0 <= v_min <= v_max <= 1");
  }
  if (operator_samples > 0) {
    if (operator_dims.empty()) throw DomainError("operator dimension list is empty");
    for (int d : operator_dims) {
      if (d < 1 || d > 64) throw DomainError("operator dimensions must lie in [1, 64]");
    }
  }
  const Tolerances& t = tolerances;
  for (double x : {t.scalar_chain, t.operator_chain, t.identity, t.exact_identity, t.algebra,
                   t.operator_identity, t.integral, t.stabilizer, t.commuting}) {
    if (!(x > 0.0 && std::isfinite(x))) throw DomainError("tolerances must be positive");
  }
}

ScalarSampler::ScalarSampler(const SamplerConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed) {}

ScalarSampler::Sample ScalarSampler::next() {
  // Three draws per sample regardless of forcing, so the stream stays
  // aligned across corner cases.
  const double log10_a = rng_.uniform(config_.log10_a_min, config_.log10_a_max);
  const double t = rng_.uniform(-config_.log_ratio_max, config_.log_ratio_max);
  double v = rng_.uniform(config_.v_min, config_.v_max);
  const double a = std::pow(10.0, log10_a);
  double b = a * std::exp(t);
  switch (index_++ % 8) {
    case 1: v = 0.0; break;
    case 2: v = 0.5; break;
    case 3: v = 1.0; break;
    case 4: b = a; break;
    default: break;
  }
  return {a, b, v};
}

bool SuiteReport::passed() const {
  for (const ChainReport& c : chains) {
    if (c.failures > 0) return false;
  }
  for (const IdentityReport& i : identities) {
    if (!i.passed()) return false;
  }
  return true;
}

const ChainReport* SuiteReport::chain(const std::string& id) const {
  for (const ChainReport& c : chains) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const IdentityReport* SuiteReport::identity(const std::string& id) const {
  for (const IdentityReport& i : identities) {
    if (i.id == id) return &i;
  }
  return nullptr;
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.seed = config.seed;
  report.tolerances = config.tolerances;
  for (const ChainSpec& spec : chain_specs()) {
    ChainReport c;
    c.id = spec.id;
    report.chains.push_back(std::move(c));
  }
  Identities ids;
  run_scalar(config, report.chains, ids);
  run_power(config, ids);
  run_algebra(config, ids);
  if (config.operator_samples > 0) run_operator(config, report.chains, ids);
  report.identities = ids.take();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ------------------------------------------------------------------ JSON

namespace {

using Json = nlohmann::ordered_json;

Json input_to_json(const SampleInput& input) {
  Json out = Json::object();
  for (const auto& [name, value] : input) out[name] = value;
  return out;
}

SampleInput input_from_json(const Json& j) {
  SampleInput out;
  for (const auto& [name, value] : j.items()) out.emplace_back(name, value.get<double>());
  return out;
}

#define MEANFORGE_TOLERANCE_FIELDS(X) \
  X(scalar_chain)                     \
  X(operator_chain)                   \
  X(identity)                         \
  X(exact_identity)                   \
  X(algebra)                          \
  X(operator_identity)                \
  X(integral)                         \
  X(stabilizer)                       \
  X(commuting)

}  // namespace

std::string report_to_json(const SuiteReport& report) {
  Json j;
  j["seed"] = report.seed;
  Json tol = Json::object();
#define X(field) tol[#field] = report.tolerances.field;
  MEANFORGE_TOLERANCE_FIELDS(X)
#undef X
  j["tolerances"] = tol;
  Json chains = Json::array();
  for (const ChainReport& c : report.chains) {
    chains.push_back({{"id", c.id},
                      {"samples", c.samples},
                      {"failures", c.failures},
                      {"worst_slack", c.worst_slack},
                      {"worst_input", input_to_json(c.worst_input)}});
  }
  j["chains"] = chains;
  Json identities = Json::array();
  for (const IdentityReport& i : report.identities) {
    identities.push_back({{"id", i.id},
                          {"max_residual", i.max_residual},
                          {"tolerance", i.tolerance},
                          {"samples", i.samples},
                          {"informational", i.informational},
                          {"passed", i.passed()},
                          {"worst_input", input_to_json(i.worst_input)}});
  }
  j["identities"] = identities;
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

SuiteReport report_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    SuiteReport report;
    report.seed = j.at("seed").get<std::uint64_t>();
    const Json& tol = j.at("tolerances");
#define X(field) report.tolerances.field = tol.at(#field).get<double>();
    MEANFORGE_TOLERANCE_FIELDS(X)
#undef X
    for (const Json& c : j.at("chains")) {
      ChainReport chain;
      chain.id = c.at("id").get<std::string>();
      chain.samples = c.at("samples").get<std::size_t>();
      chain.failures = c.at("failures").get<std::size_t>();
      chain.worst_slack = c.at("worst_slack").get<double>();
      chain.worst_input = input_from_json(c.at("worst_input"));
      report.chains.push_back(std::move(chain));
    }
    for (const Json& i : j.at("identities")) {
      IdentityReport identity;
      identity.id = i.at("id").get<std::string>();
      identity.max_residual = i.at("max_residual").get<double>();
      identity.tolerance = i.at("tolerance").get<double>();
      identity.samples = i.at("samples").get<std::size_t>();
      identity.informational = i.value("informational", false);
      identity.worst_input = input_from_json(i.at("worst_input"));
      report.identities.push_back(std::move(identity));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("json", std::string("bad report JSON: ") + e.what());
  }
}

std::string report_to_text(const SuiteReport& report) {
  std::string out = "seed " + std::to_string(report.seed) + "\n";
  char line[512];
  for (const ChainReport& c : report.chains) {
    std::snprintf(line, sizeof line, "%-4s chain %-6s samples=%zu failures=%zu worst_slack=%.6g\n",
                  c.failures == 0 ? "ok" : "FAIL", c.id.c_str(), c.samples, c.failures,
                  c.worst_slack);
    out += line;
  }
  for (const IdentityReport& i : report.identities) {
    const char* status = i.informational ? "info" : i.passed() ? "ok" : "FAIL";
    std::snprintf(line, sizeof line, "%-4s identity %-40s samples=%zu max_residual=%.6g tol=%.3g\n",
                  status, i.id.c_str(), i.samples, i.max_residual, i.tolerance);
    out += line;
  }
  out += report.passed() ? "PASS\n" : "FAIL\n";
  return out;
}

}  // namespace meanforge
