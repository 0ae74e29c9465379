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

#include "core/registry.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <string>

#include "core/errors.hpp"
#include "core/power.hpp"
#include "core/weighted.hpp"

namespace meanforge {

namespace {

struct Args {
  PositivePair pair;
  double v;
  double p;
  double q;
};

using Evaluator = std::function<double(const std::string& kind, const Args&)>;

struct Family {
  FamilyInfo info;
  Evaluator eval;
};

StolarskyForm form_of(const std::string& kind) {
  return kind == "via_Bq" || kind == "explicit_Bq" ? StolarskyForm::via_Bq
                                                   : StolarskyForm::via_Bp;
}

void add_power(std::vector<Family>& out, const std::string& name, PowerKind kind) {
  out.push_back({{name, {"direct"}, false, true, false},
                 [kind](const std::string&, const Args& x) {
                   return power_family(kind, x.p, x.pair);
                 }});
  std::vector<std::string> kinds = {"composed", "explicit"};
  if (kind == PowerKind::second_log) kinds.push_back("sharp");
  out.push_back({{name + ";v", kinds, true, true, false},
                 [kind](const std::string& k, const Args& x) {
                   const Weight w(x.v);
                   if (k == "explicit") return weighted_power_explicit(kind, x.p, x.pair, w);
                   if (k == "sharp") return second_power_log_weighted_sharp(x.p, x.pair, w);
                   return weighted_power(kind, x.p, x.pair, w);
                 }});
}

std::vector<Family> build_families() {
  std::vector<Family> out;
  for (MeanKind kind : kAllMeanKinds) {
    out.push_back({{std::string(to_string(kind)), {"direct"}, false, false, false},
                   [kind](const std::string&, const Args& x) {
                     return classic_mean(kind, x.pair);
                   }});
  }
  for (MeanKind kind : {MeanKind::arith, MeanKind::geom, MeanKind::harm}) {
    out.push_back({{std::string(to_string(kind)) + ";v", {"direct"}, true, false, false},
                   [kind](const std::string&, const Args& x) {
                     return weighted_standard(kind, x.pair, Weight(x.v));
                   }});
  }

  using PairFn = double (*)(const PositivePair&, Weight);
  auto weighted = [&out](const std::string& name, std::vector<std::string> kinds, PairFn first,
                         PairFn second) {
    const std::string alt = kinds[1];
    out.push_back({{name, std::move(kinds), true, false, false},
                   [first, second, alt](const std::string& k, const Args& x) {
                     return k == alt ? second(x.pair, Weight(x.v)) : first(x.pair, Weight(x.v));
                   }});
  };
  weighted("Lv", {"direct", "composed"}, weighted_log_direct, weighted_log_composed);
  weighted("Iv", {"direct", "composed"}, weighted_identric_direct, weighted_identric_composed);
  weighted("calLv", {"explicit", "composed"}, second_weighted_log, second_weighted_log_composed);
  weighted("Lv*", {"direct", "composed"}, weighted_log_dual, weighted_log_dual_composed);
  weighted("Iv*", {"direct", "composed"}, weighted_identric_dual,
           weighted_identric_dual_composed);
  weighted("calLv*", {"direct", "composed"}, second_weighted_log_dual,
           second_weighted_log_dual_composed);

  out.push_back({{"binomial", {"direct"}, false, true, false},
                 [](const std::string&, const Args& x) { return binomial(x.p, x.pair); }});
  out.push_back({{"binomial;v", {"direct"}, true, true, false},
                 [](const std::string&, const Args& x) {
                   return weighted_binomial(x.p, x.pair, Weight(x.v));
                 }});
  out.push_back({{"stolarsky", {"direct", "generic", "near_diagonal"}, false, true, true},
                 [](const std::string& k, const Args& x) {
                   const StolarskyParams params(x.p, x.q);
                   if (k == "generic") return stolarsky_generic_formula(params, x.pair);
                   if (k == "near_diagonal") return stolarsky_near_diagonal(params, x.pair);
                   return stolarsky(params, x.pair);
                 }});
  out.push_back({{"stolarsky;v", {"via_Bp", "via_Bq", "explicit_Bp", "explicit_Bq"}, true, true,
                  true},
                 [](const std::string& k, const Args& x) {
                   const StolarskyParams params(x.p, x.q);
                   const Weight w(x.v);
                   if (k.rfind("explicit", 0) == 0) {
                     return weighted_stolarsky_explicit(form_of(k), params, x.pair, w);
                   }
                   return weighted_stolarsky(form_of(k), params, x.pair, w);
                 }});
  add_power(out, "Lp", PowerKind::log);
  add_power(out, "Dp", PowerKind::difference);
  add_power(out, "Ip", PowerKind::exponential);
  add_power(out, "calLp", PowerKind::second_log);
  return out;
}

const std::vector<Family>& families() {
  static const std::vector<Family> table = build_families();
  return table;
}

const Family& find_family(std::string_view name) {
  for (const Family& f : families()) {
    if (f.info.name == name) return f;
  }
  throw ParseError(std::string(name), "unknown mean family '" + std::string(name) + "'");
}

double require(const std::optional<double>& x, const char* flag, const std::string& family) {
  if (!x) {
    throw ParseError(flag, std::string("mean '") + family + "' needs " + flag);
  }
  return *x;
}

}  // namespace

MeanSpec parse_mean_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view family_name = text.substr(0, colon);
  const Family& family = find_family(family_name);
  MeanSpec spec;
  spec.family = family.info.name;
  spec.kind = family.info.kinds.front();
  if (colon != std::string_view::npos) {
    const std::string kind(text.substr(colon + 1));
    bool known = false;
    for (const std::string& k : family.info.kinds) known = known || k == kind;
    if (!known) {
      throw ParseError(kind, "unknown kind '" + kind + "' for mean '" + spec.family + "'");
    }
    spec.kind = kind;
  }
  spec.needs_v = family.info.needs_v;
  spec.needs_p = family.info.needs_p;
  spec.needs_q = family.info.needs_q;
  return spec;
}

double evaluate_mean(const MeanSpec& spec, const MeanArgs& args) {
  const Family& family = find_family(spec.family);
  Args x{PositivePair(args.a, args.b), 0.5, 0.0, 0.0};
  if (spec.needs_v) x.v = require(args.v, "--v", spec.family);
  if (spec.needs_p) x.p = require(args.p, "--p", spec.family);
  if (spec.needs_q) x.q = require(args.q, "--q", spec.family);
  return family.eval(spec.kind, x);
}

const std::vector<FamilyInfo>& mean_families() {
  static const std::vector<FamilyInfo> infos = [] {
    std::vector<FamilyInfo> out;
    for (const Family& f : families()) out.push_back(f.info);
    return out;
  }();
  return infos;
}

SymmetricMean symmetric_mean_by_name(std::string_view name) {
  if (!name.empty() && name.back() == '*') {
    return dual(symmetric_mean_by_name(name.substr(0, name.size() - 1)));
  }
  if (const auto kind = parse_mean_kind(name)) return SymmetricMean::of(*kind);
  constexpr std::string_view prefix = "binomial:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string_view digits = name.substr(prefix.size());
    double p = 0.0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || end != digits.data() + digits.size() || !std::isfinite(p)) {
      throw ParseError(std::string(digits), "bad binomial exponent '" + std::string(digits) + "'");
    }
    return SymmetricMean(std::string(name), [p](double a, double b) {
      return kernel::binomial(p, a, b);
    });
  }
  throw ParseError(std::string(name), "unknown symmetric mean '" + std::string(name) + "'");
}

HPDMatrix operator_mean_by_spec(std::string_view spec, const HPDMatrix& a, const HPDMatrix& b,
                                double v) {
  const std::size_t colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const std::string kind = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
  auto bad_kind = [&]() {
    return ParseError(kind, "unknown kind '" + kind + "' for operator mean '" + name + "'");
  };
  if (name == "Lv" || name == "Iv") {
    OperatorMode mode = OperatorMode::representing;
    if (kind == "composed") {
      mode = OperatorMode::composed;
    } else if (!kind.empty() && kind != "representing") {
      throw bad_kind();
    }
    return name == "Lv" ? op_weighted_log(mode, a, b, v) : op_weighted_identric(mode, a, b, v);
  }
  if (name == "harm" && kind == "inversion") return op_weighted_harm_by_inversion(a, b, v);
  if (!kind.empty()) throw bad_kind();
  const auto mk = parse_mean_kind(name);
  if (!mk || *mk == MeanKind::min || *mk == MeanKind::max) {
    throw ParseError(name, "unknown operator mean '" + name + "'");
  }
  if (*mk == MeanKind::arith || *mk == MeanKind::geom || *mk == MeanKind::harm) {
    return op_weighted_standard(*mk, a, b, v);
  }
  return apply_mean(RepresentingFunction::of(SymmetricMean::of(*mk)), a, b);
}

}  // namespace meanforge
