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

// meanforge command-line front end. Talks to the library through the C API
// only.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "meanforge/meanforge.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// Maps a library failure to an exit code after reporting it.
int report(mf_status status) {
  std::string message = mf_last_error();
  const std::string token = mf_last_error_token();
  std::cerr << "meanforge: " << mf_status_name(status) << ": " << message;
  if (status == MF_PARSE_ERROR && !token.empty() && message.find(token) == std::string::npos) {
    std::cerr << " (at '" << token << "')";
  }
  std::cerr << "\n";
  switch (status) {
    case MF_PARSE_ERROR:
    case MF_DOMAIN_ERROR:
    case MF_INVALID_ARGUMENT:
    case MF_IO_ERROR:
    case MF_DIMENSION_MISMATCH:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

struct Freer {
  void operator()(char* s) const { mf_string_free(s); }
  void operator()(mf_matrix* m) const { mf_matrix_free(m); }
  void operator()(mf_report* r) const { mf_report_free(r); }
  void operator()(mf_trace* t) const { mf_trace_free(t); }
};
template <typename T>
using Owned = std::unique_ptr<T, Freer>;

// ---------------------------------------------------------------- eval

struct EvalOptions {
  std::string spec;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> v, p, q;
};

int run_eval(const EvalOptions& o) {
  mf_eval_args args{};
  args.spec = o.spec.c_str();
  args.a = o.a;
  args.b = o.b;
  args.has_v = o.v.has_value();
  args.v = o.v.value_or(0.0);
  args.has_p = o.p.has_value();
  args.p = o.p.value_or(0.0);
  args.has_q = o.q.has_value();
  args.q = o.q.value_or(0.0);
  double value = 0.0;
  if (const mf_status s = mf_eval(&args, &value); s != MF_OK) return report(s);
  std::cout << fmt(value) << "\n";
  return 0;
}

// --------------------------------------------------------------- table

struct TableOptions {
  double a = 1.0;
  double b = 4.0;
  double v = 0.5;
  std::string format = "text";
};

int run_table(const TableOptions& o) {
  static const char* kLabels[3] = {"arith", "geom", "harm"};
  double t[9];
  if (const mf_status s = mf_weighted_table(o.a, o.b, o.v, t); s != MF_OK) return report(s);
  if (o.format == "csv") {
    std::cout << "p\\q,arith,geom,harm\n";
    for (int r = 0; r < 3; ++r) {
      std::cout << kLabels[r];
      for (int c = 0; c < 3; ++c) std::cout << "," << fmt(t[3 * r + c]);
      std::cout << "\n";
    }
  } else if (o.format == "json") {
    nlohmann::ordered_json j;
    j["a"] = o.a;
    j["b"] = o.b;
    j["v"] = o.v;
    j["labels"] = {"arith", "geom", "harm"};
    for (int r = 0; r < 3; ++r) {
      nlohmann::ordered_json names = nlohmann::ordered_json::array();
      nlohmann::ordered_json values = nlohmann::ordered_json::array();
      for (int c = 0; c < 3; ++c) {
        names.push_back(mf_weighted_table_name(r, c));
        values.push_back(t[3 * r + c]);
      }
      j["names"].push_back(names);
      j["values"].push_back(values);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%-8s", "p \\ q");
    for (const char* label : kLabels) std::printf("  %-26s", label);
    std::printf("\n");
    for (int r = 0; r < 3; ++r) {
      std::printf("%-8s", kLabels[r]);
      for (int c = 0; c < 3; ++c) {
        std::printf("  %-7s %-18s", mf_weighted_table_name(r, c), fmt(t[3 * r + c]).c_str());
      }
      std::printf("\n");
    }
  }
  return 0;
}

// -------------------------------------------------------------- verify

struct VerifyOptions {
  mf_verify_config config{};
  std::optional<double> tol;
  std::vector<int> dims;
  std::string format = "json";
};

int run_verify(VerifyOptions& o) {
  if (!o.dims.empty()) {
    if (o.dims.size() > 16) {
      std::cerr << "meanforge: at most 16 operator dimensions\n";
      return kExitUsage;
    }
    o.config.operator_dims_count = o.dims.size();
    for (std::size_t i = 0; i < o.dims.size(); ++i) o.config.operator_dims[i] = o.dims[i];
  }
  if (o.tol) o.config.tol_scalar_chain = *o.tol;
  mf_report* raw = nullptr;
  if (const mf_status s = mf_verify_run(&o.config, &raw); s != MF_OK) return report(s);
  const Owned<mf_report> r(raw);
  char* text = nullptr;
  const mf_status s =
      mf_report_render(r.get(), o.format == "text" ? MF_FORMAT_TEXT : MF_FORMAT_JSON, &text);
  if (s != MF_OK) return report(s);
  const Owned<char> owned(text);
  std::cout << text;
  std::cerr << "wall time: " << fmt(mf_report_wall_seconds(r.get())) << " s\n";
  return mf_report_passed(r.get()) ? 0 : kExitFail;
}

// ----------------------------------------------------------- stabilize

struct StabilizeOptions {
  std::string q;
  std::string p;
  std::string initial;
  mf_stabilize_options options{};
  std::vector<double> at;
  std::string out;
};

int run_stabilize(const StabilizeOptions& o) {
  mf_stabilize_options options = o.options;
  options.initial = o.initial.empty() ? nullptr : o.initial.c_str();
  mf_trace* raw = nullptr;
  if (const mf_status s = mf_stabilize(o.q.c_str(), o.p.c_str(), &options, &raw); s != MF_OK) {
    const int code = report(s);
    if (s == MF_NON_CONVERGENCE) {
      std::size_t n = 0;
      const double* history = mf_last_history(&n);
      std::cerr << "residual history:";
      for (std::size_t i = 0; i < n; ++i) std::cerr << " " << fmt(history[i]);
      std::cerr << "\n";
    }
    return code;
  }
  const Owned<mf_trace> trace(raw);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      std::cerr << "meanforge: cannot write '" << o.out << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  os << "x,f\n";
  if (o.at.empty()) {
    for (int i = 0; i < mf_trace_size(trace.get()); ++i) {
      double x = 0.0;
      double f = 0.0;
      mf_trace_point(trace.get(), i, &x, &f);
      os << fmt(x) << "," << fmt(f) << "\n";
    }
  } else {
    for (double x : o.at) {
      double f = 0.0;
      if (const mf_status s = mf_trace_eval(trace.get(), x, &f); s != MF_OK) return report(s);
      os << fmt(x) << "," << fmt(f) << "\n";
    }
  }
  std::cerr << "iterations: " << mf_trace_iterations(trace.get())
            << "\nresidual: " << fmt(mf_trace_residual(trace.get())) << "\n";
  return 0;
}

// ----------------------------------------------------- operator commands

int read_pair(const std::string& path_a, const std::string& path_b, Owned<mf_matrix>* a,
              Owned<mf_matrix>* b) {
  mf_matrix* raw = nullptr;
  if (const mf_status s = mf_matrix_read(path_a.c_str(), &raw); s != MF_OK) return report(s);
  a->reset(raw);
  if (const mf_status s = mf_matrix_read(path_b.c_str(), &raw); s != MF_OK) return report(s);
  b->reset(raw);
  return 0;
}

struct OperatorOptions {
  std::string spec = "geom";
  std::string path_a;
  std::string path_b;
  double v = 0.5;
  double tol = 1e-10;
};

int run_opmean(const OperatorOptions& o) {
  Owned<mf_matrix> a, b;
  if (const int code = read_pair(o.path_a, o.path_b, &a, &b)) return code;
  mf_matrix* raw = nullptr;
  if (const mf_status s = mf_operator_mean(o.spec.c_str(), a.get(), b.get(), o.v, &raw);
      s != MF_OK) {
    return report(s);
  }
  const Owned<mf_matrix> result(raw);
  char* text = nullptr;
  if (const mf_status s = mf_matrix_render(result.get(), &text); s != MF_OK) return report(s);
  const Owned<char> owned(text);
  std::cout << text;
  return 0;
}

int run_opcheck(const OperatorOptions& o) {
  Owned<mf_matrix> a, b;
  if (const int code = read_pair(o.path_a, o.path_b, &a, &b)) return code;
  int all_hold = 0;
  char* text = nullptr;
  if (const mf_status s = mf_operator_chains(a.get(), b.get(), o.v, o.tol, &all_hold, &text);
      s != MF_OK) {
    return report(s);
  }
  const Owned<char> owned(text);
  std::cout << text << (all_hold ? "PASS" : "FAIL") << "\n";
  return all_hold ? 0 : kExitFail;
}

int run_loewner(const OperatorOptions& o) {
  Owned<mf_matrix> a, b;
  if (const int code = read_pair(o.path_a, o.path_b, &a, &b)) return code;
  mf_loewner r{};
  if (const mf_status s = mf_loewner_leq(a.get(), b.get(), o.tol, &r); s != MF_OK) {
    return report(s);
  }
  std::cout << (r.holds ? "holds" : "fails") << " witness=" << fmt(r.witness)
            << " normalized=" << fmt(r.normalized) << "\n";
  return r.holds ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate, compare and verify two-variable and operator means."};
  app.set_version_flag("--version", std::string(mf_version()));
  app.require_subcommand(1);

  EvalOptions eval;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a mean at (a, b)");
  cmd_eval->add_option("spec", eval.spec, "Mean spec <family>[:kind], e.g. Lv, Iv:composed, Lp;v")
      ->required();
  cmd_eval->add_option("--a", eval.a, "First argument")->required();
  cmd_eval->add_option("--b", eval.b, "Second argument")->required();
  cmd_eval->add_option("--v", eval.v, "Weight in [0, 1]");
  cmd_eval->add_option("--p", eval.p, "First exponent");
  cmd_eval->add_option("--q", eval.q, "Second exponent");

  TableOptions table;
  auto* cmd_table = app.add_subcommand("table", "Weighted means built from arith, geom, harm");
  cmd_table->add_option("--a", table.a, "First argument")->capture_default_str();
  cmd_table->add_option("--b", table.b, "Second argument")->capture_default_str();
  cmd_table->add_option("--v", table.v, "Weight in [0, 1]")->capture_default_str();
  cmd_table->add_option("--format", table.format)
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();

  VerifyOptions verify;
  mf_verify_config_init(&verify.config);
  auto* cmd_verify = app.add_subcommand("verify", "Run the seeded verification suite");
  cmd_verify->add_option("--samples", verify.config.samples, "Scalar samples")
      ->capture_default_str();
  cmd_verify->add_option("--seed", verify.config.seed, "Random seed")
      ->envname("MEANFORGE_SEED")
      ->capture_default_str();
  cmd_verify->add_option("--tol", verify.tol, "Scalar chain slack tolerance, relative to max(a, b)");
  cmd_verify->add_option("--operator-dims", verify.dims, "Matrix dimensions, e.g. 2,3,4")
      ->delimiter(',');
  cmd_verify->add_option("--operator-samples", verify.config.operator_samples,
                         "Random HPD pairs; 0 skips the operator suite")
      ->capture_default_str();
  cmd_verify->add_option("--log-ratio-max", verify.config.log_ratio_max,
                         "Bound on |log(b/a)| for scalar samples")
      ->capture_default_str();
  cmd_verify->add_option("--format", verify.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  StabilizeOptions stab;
  mf_stabilize_options_init(&stab.options);
  auto* cmd_stab = app.add_subcommand("stabilize", "Solve R(q, M, p) = M for the trace of M");
  cmd_stab->add_option("--q", stab.q, "Outer symmetric mean")->required();
  cmd_stab->add_option("--p", stab.p, "Inner symmetric mean")->required();
  cmd_stab->add_option("--init", stab.initial, "Mean whose trace starts the iteration");
  cmd_stab->add_option("--points", stab.options.grid_points, "Grid points")
      ->capture_default_str();
  cmd_stab->add_option("--half-width", stab.options.half_width, "Grid covers |log x| <= this")
      ->capture_default_str();
  cmd_stab->add_option("--tol", stab.options.tolerance, "Stopping tolerance")
      ->capture_default_str();
  cmd_stab->add_option("--max-iter", stab.options.max_iter, "Iteration cap")
      ->capture_default_str();
  cmd_stab->add_option("--at", stab.at, "Print f at these x instead of the grid");
  cmd_stab->add_option("--out", stab.out, "Write the CSV here instead of stdout");

  OperatorOptions op;
  auto* cmd_opmean = app.add_subcommand("opmean", "Operator mean of two matrix files");
  cmd_opmean->add_option("spec", op.spec, "arith, geom, harm, harm:inversion, Lv[:composed], ...")
      ->required();
  cmd_opmean->add_option("A", op.path_a, "Matrix file")->required();
  cmd_opmean->add_option("B", op.path_b, "Matrix file")->required();
  cmd_opmean->add_option("--v", op.v, "Weight in [0, 1]")->capture_default_str();

  auto* cmd_opcheck = app.add_subcommand("opcheck", "Check every operator chain on two matrices");
  cmd_opcheck->add_option("A", op.path_a, "Matrix file")->required();
  cmd_opcheck->add_option("B", op.path_b, "Matrix file")->required();
  cmd_opcheck->add_option("--v", op.v, "Weight in [0, 1]")->capture_default_str();
  cmd_opcheck->add_option("--tol", op.tol, "Normalized Loewner tolerance")->capture_default_str();

  auto* cmd_loewner = app.add_subcommand("loewner", "Test A <= B in the Loewner order");
  cmd_loewner->add_option("A", op.path_a, "Matrix file")->required();
  cmd_loewner->add_option("B", op.path_b, "Matrix file")->required();
  cmd_loewner->add_option("--tol", op.tol, "Normalized tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cmd_eval->parsed()) return run_eval(eval);
  if (cmd_table->parsed()) return run_table(table);
  if (cmd_verify->parsed()) return run_verify(verify);
  if (cmd_stab->parsed()) return run_stabilize(stab);
  if (cmd_opmean->parsed()) return run_opmean(op);
  if (cmd_opcheck->parsed()) return run_opcheck(op);
  if (cmd_loewner->parsed()) return run_loewner(op);
  return kExitUsage;
}
