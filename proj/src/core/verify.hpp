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

// Randomized verification of every inequality chain and identity the
// library implements, with a deterministic seeded sampler and a JSON/text
// report.

#ifndef MEANFORGE_CORE_VERIFY_HPP_
#define MEANFORGE_CORE_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core/random.hpp"

namespace meanforge {

/// Named coordinates of a sample, e.g. {{"a", 1}, {"b", 4}, {"v", 0.25}}.
using SampleInput = std::vector<std::pair<std::string, double>>;

enum class ChainDomain { scalar, operator_ };

struct ChainSpec {
  std::string id;
  ChainDomain domain;
  std::vector<std::string> terms;
  /// Term values at (a, b, v). For operator chains this is the scalar
  /// reduction, i.e. the value on commuting operands.
  std::function<std::vector<double>(double, double, double)> evaluate;
};

/// Every chain id, in report order.
const std::vector<std::string>& chain_ids();

/// One spec per chain id. Throws std::logic_error if the table does not
/// cover chain_ids() exactly once each.
const std::vector<ChainSpec>& chain_specs();
const ChainSpec& chain_spec(const std::string& id);

struct ChainCheck {
  std::vector<double> values;
  std::vector<double> slacks;  // values[i+1] - values[i]
  bool passed = true;
};

/// Passes iff every slack >= -tol * max(a, b).
ChainCheck check_chain(const ChainSpec& spec, double a, double b, double v, double tol);

struct Tolerances {
  double scalar_chain = 1e-12;       // slack relative to max(a, b)
  double operator_chain = 1e-10;     // normalized Loewner witness
  double identity = 1e-12;           // scalar identities
  double exact_identity = 1e-14;     // H* = A and G* = G
  double algebra = 1e-11;            // resultant and power-mean identities
  double operator_identity = 1e-10;  // dual-path operator means
  double integral = 1e-8;            // integral forms of L(A, B)
  double stabilizer = 1e-8;          // fixed-point traces vs closed forms
  double commuting = 1e-12;          // operator means on commuting operands
};

struct SamplerConfig {
  double log_ratio_max = 14.0;  // |log(b/a)| bound, at most 690
  double log10_a_min = -6.0;
  double log10_a_max = 6.0;
  double v_min = 0.001;
  double v_max = 0.999;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 100000;           // scalar samples
  std::size_t power_samples = 10000;      // capped at samples
  std::size_t algebra_samples = 2000;     // capped at samples
  std::size_t operator_samples = 1000;    // random HPD pairs; 0 skips
  std::vector<int> operator_dims = {2, 3, 4, 5, 6, 7, 8};
  SamplerConfig sampler;
  Tolerances tolerances;

  /// Throws DomainError on an invalid configuration.
  void validate() const;
};

/// Draws (a, b, v) as the suite does. Sample i % 8 == 1, 2, 3 forces
/// v = 0, 1/2, 1; i % 8 == 4 forces b = a.
class ScalarSampler {
 public:
  ScalarSampler(const SamplerConfig& config, std::uint64_t seed);
  struct Sample {
    double a;
    double b;
    double v;
  };
  Sample next();

 private:
  SamplerConfig config_;
  Rng rng_;
  std::uint64_t index_ = 0;
};

struct ChainReport {
  std::string id;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst_slack = 0.0;  // smallest slack / max(a, b) or normalized witness
  SampleInput worst_input;

  bool operator==(const ChainReport&) const = default;
};

struct IdentityReport {
  std::string id;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool informational = false;  // reported, never fails the suite
  SampleInput worst_input;

  bool passed() const { return informational || max_residual <= tolerance; }
  bool operator==(const IdentityReport&) const = default;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::vector<ChainReport> chains;
  std::vector<IdentityReport> identities;
  double wall_seconds = 0.0;  // not part of the serialized body

  bool passed() const;
  const ChainReport* chain(const std::string& id) const;
  const IdentityReport* identity(const std::string& id) const;
};

SuiteReport run_suite(const SuiteConfig& config);

/// Deterministic JSON body (no wall time).
std::string report_to_json(const SuiteReport& report);
/// Inverse of report_to_json. Throws ParseError.
SuiteReport report_from_json(const std::string& json);
std::string report_to_text(const SuiteReport& report);

}  // namespace meanforge

#endif  // MEANFORGE_CORE_VERIFY_HPP_
