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

#ifndef MEANFORGE_CORE_REGISTRY_HPP_
#define MEANFORGE_CORE_REGISTRY_HPP_

// Name-based access to every mean in the library. A mean spec has the form
//   <family>[:kind]
// where a trailing ";v" on the family selects the weighted variant, e.g.
// "Lv", "Iv:composed", "stolarsky", "Lp;v:explicit", "geom;v".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/operator.hpp"
#include "core/scalar.hpp"

namespace meanforge {

struct MeanSpec {
  std::string family;  // as written, including any ";v" suffix
  std::string kind;    // resolved; the family default when none was given
  bool needs_v = false;
  bool needs_p = false;
  bool needs_q = false;
};

struct MeanArgs {
  double a = 0.0;
  double b = 0.0;
  std::optional<double> v;
  std::optional<double> p;
  std::optional<double> q;
};

/// Throws ParseError naming the unknown family or kind.
MeanSpec parse_mean_spec(std::string_view text);

/// Throws ParseError("--v" etc.) for a missing parameter and DomainError for
/// values outside the mean's domain.
double evaluate_mean(const MeanSpec& spec, const MeanArgs& args);

struct FamilyInfo {
  std::string name;
  std::vector<std::string> kinds;  // first entry is the default
  bool needs_v;
  bool needs_p;
  bool needs_q;
};

const std::vector<FamilyInfo>& mean_families();

/// Symmetric means usable by the stabilizer: the classic kinds, their duals
/// written with a trailing '*', and "binomial:<p>".
SymmetricMean symmetric_mean_by_name(std::string_view name);

/// Operator means by name: "arith", "geom", "harm" and "harm:inversion"
/// (weighted by v), "Lv" and "Iv" with kind "representing" (default) or
/// "composed", and the symmetric kinds log, identric, log_dual and
/// identric_dual through their representing functions.
HPDMatrix operator_mean_by_spec(std::string_view spec, const HPDMatrix& a, const HPDMatrix& b,
                                double v);

}  // namespace meanforge

#endif  // MEANFORGE_CORE_REGISTRY_HPP_
