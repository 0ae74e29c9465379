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

#include "meanforge/meanforge.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/errors.hpp"
#include "core/matrix_io.hpp"
#include "core/operator.hpp"
#include "core/registry.hpp"
#include "core/verify.hpp"

struct mf_report {
  meanforge::SuiteReport report;
};

struct mf_trace {
  meanforge::StabilizeResult result;
};

struct mf_matrix {
  meanforge::ComplexMatrix m;
};

namespace {

using namespace meanforge;

thread_local std::string last_error;
thread_local std::string last_token;
thread_local std::vector<double> last_history;

void set_error(std::string message, std::string token = {}) {
  last_error = std::move(message);
  last_token = std::move(token);
}

template <typename Fn>
mf_status guarded(Fn&& fn) {
  set_error({});
  try {
    fn();
    return MF_OK;
  } catch (const ParseError& e) {
    set_error(e.what(), e.token());
    return MF_PARSE_ERROR;
  } catch (const NonConvergence& e) {
    last_history = e.history();
    set_error(e.what());
    return MF_NON_CONVERGENCE;
  } catch (const IoError& e) {
    set_error(e.what());
    return MF_IO_ERROR;
  } catch (const DimensionMismatch& e) {
    set_error(e.what());
    return MF_DIMENSION_MISMATCH;
  } catch (const NonPositive& e) {
    set_error(e.what());
    return MF_NON_POSITIVE;
  } catch (const DomainError& e) {
    set_error(e.what());
    return MF_DOMAIN_ERROR;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return MF_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MF_INTERNAL_ERROR;
  }
}

mf_status invalid(const char* message) {
  set_error(message);
  return MF_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* mf_status_name(mf_status status) {
  switch (status) {
    case MF_OK: return "ok";
    case MF_DOMAIN_ERROR: return "domain_error";
    case MF_PARSE_ERROR: return "parse_error";
    case MF_DIMENSION_MISMATCH: return "dimension_mismatch";
    case MF_NON_POSITIVE: return "non_positive";
    case MF_NON_CONVERGENCE: return "non_convergence";
    case MF_INVALID_ARGUMENT: return "invalid_argument";
    case MF_IO_ERROR: return "io_error";
    case MF_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* mf_last_error(void) { return last_error.c_str(); }
const char* mf_last_error_token(void) { return last_token.c_str(); }
const char* mf_version(void) { return MEANFORGE_VERSION; }
void mf_string_free(char* s) { std::free(s); }

mf_status mf_eval(const mf_eval_args* args, double* out) {
  if (args == nullptr || args->spec == nullptr || out == nullptr) {
    return invalid("mf_eval: null argument");
  }
  return guarded([&] {
    MeanArgs x;
    x.a = args->a;
    x.b = args->b;
    if (args->has_v) x.v = args->v;
    if (args->has_p) x.p = args->p;
    if (args->has_q) x.q = args->q;
    *out = evaluate_mean(parse_mean_spec(args->spec), x);
  });
}

mf_status mf_weighted_table(double a, double b, double v, double out[9]) {
  if (out == nullptr) return invalid("mf_weighted_table: null output");
  return guarded([&] {
    const WeightedTable t = weighted_table(PositivePair(a, b), Weight(v));
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) out[3 * r + c] = t[r][c];
    }
  });
}

const char* mf_weighted_table_name(int row, int col) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) out.push_back(weighted_table_name(r, c));
    }
    return out;
  }();
  if (row < 0 || row > 2 || col < 0 || col > 2) return nullptr;
  return names[3 * row + col].c_str();
}

void mf_verify_config_init(mf_verify_config* config) {
  if (config == nullptr) return;
  const SuiteConfig d;
  *config = mf_verify_config{};
  config->seed = d.seed;
  config->samples = d.samples;
  config->power_samples = d.power_samples;
  config->algebra_samples = d.algebra_samples;
  config->operator_samples = d.operator_samples;
  for (int n : d.operator_dims) config->operator_dims[config->operator_dims_count++] = n;
  config->log_ratio_max = d.sampler.log_ratio_max;
  const Tolerances& t = d.tolerances;
  config->tol_scalar_chain = t.scalar_chain;
  config->tol_operator_chain = t.operator_chain;
  config->tol_identity = t.identity;
  config->tol_exact_identity = t.exact_identity;
  config->tol_algebra = t.algebra;
  config->tol_operator_identity = t.operator_identity;
  config->tol_integral = t.integral;
  config->tol_stabilizer = t.stabilizer;
  config->tol_commuting = t.commuting;
}

mf_status mf_verify_run(const mf_verify_config* config, mf_report** out) {
  if (config == nullptr || out == nullptr) return invalid("mf_verify_run: null argument");
  if (config->operator_dims_count > 16) return invalid("mf_verify_run: too many operator dims");
  *out = nullptr;
  return guarded([&] {
    SuiteConfig c;
    c.seed = config->seed;
    c.samples = config->samples;
    c.power_samples = config->power_samples;
    c.algebra_samples = config->algebra_samples;
    c.operator_samples = config->operator_samples;
    c.operator_dims.assign(config->operator_dims,
                           config->operator_dims + config->operator_dims_count);
    c.sampler.log_ratio_max = config->log_ratio_max;
    Tolerances& t = c.tolerances;
    t.scalar_chain = config->tol_scalar_chain;
    t.operator_chain = config->tol_operator_chain;
    t.identity = config->tol_identity;
    t.exact_identity = config->tol_exact_identity;
    t.algebra = config->tol_algebra;
    t.operator_identity = config->tol_operator_identity;
    t.integral = config->tol_integral;
    t.stabilizer = config->tol_stabilizer;
    t.commuting = config->tol_commuting;
    *out = new mf_report{run_suite(c)};
  });
}

int mf_report_passed(const mf_report* report) {
  return report != nullptr && report->report.passed() ? 1 : 0;
}

double mf_report_wall_seconds(const mf_report* report) {
  return report == nullptr ? 0.0 : report->report.wall_seconds;
}

mf_status mf_report_render(const mf_report* report, mf_format format, char** out) {
  if (report == nullptr || out == nullptr) return invalid("mf_report_render: null argument");
  return guarded([&] {
    *out = copy_string(format == MF_FORMAT_TEXT ? report_to_text(report->report)
                                                : report_to_json(report->report));
  });
}

void mf_report_free(mf_report* report) { delete report; }

void mf_stabilize_options_init(mf_stabilize_options* options) {
  if (options == nullptr) return;
  const StabilizeOptions d;
  options->grid_points = d.grid.points;
  options->half_width = d.grid.half_width;
  options->tolerance = d.tolerance;
  options->max_iter = d.max_iter;
  options->initial = nullptr;
}

mf_status mf_stabilize(const char* q, const char* p, const mf_stabilize_options* options,
                       mf_trace** out) {
  if (q == nullptr || p == nullptr || out == nullptr) return invalid("mf_stabilize: null argument");
  *out = nullptr;
  last_history.clear();
  return guarded([&] {
    StabilizeOptions o;
    if (options != nullptr) {
      o.grid.points = options->grid_points;
      o.grid.half_width = options->half_width;
      o.tolerance = options->tolerance;
      o.max_iter = options->max_iter;
      if (options->initial != nullptr) o.initial = symmetric_mean_by_name(options->initial);
    }
    const SymmetricMean qm = symmetric_mean_by_name(q);
    const SymmetricMean pm = symmetric_mean_by_name(p);
    *out = new mf_trace{stabilize_fixed_point(qm, pm, o)};
  });
}

const double* mf_last_history(size_t* count) {
  if (count != nullptr) *count = last_history.size();
  return last_history.data();
}

int mf_trace_size(const mf_trace* trace) {
  return trace == nullptr ? 0 : trace->result.trace.size();
}

mf_status mf_trace_point(const mf_trace* trace, int i, double* x, double* f) {
  if (trace == nullptr || x == nullptr || f == nullptr) return invalid("mf_trace_point: null argument");
  if (i < 0 || i >= trace->result.trace.size()) return invalid("mf_trace_point: index out of range");
  *x = trace->result.trace.x(i);
  *f = trace->result.trace.f(i);
  return MF_OK;
}

mf_status mf_trace_eval(const mf_trace* trace, double x, double* out) {
  if (trace == nullptr || out == nullptr) return invalid("mf_trace_eval: null argument");
  if (!(x > 0.0) || !std::isfinite(x)) {
    set_error("mf_trace_eval: x must be positive and finite");
    return MF_DOMAIN_ERROR;
  }
  return guarded([&] { *out = trace->result.trace(x); });
}

int mf_trace_iterations(const mf_trace* trace) {
  return trace == nullptr ? 0 : trace->result.iterations;
}

double mf_trace_residual(const mf_trace* trace) {
  return trace == nullptr ? 0.0 : trace->result.residual;
}

void mf_trace_free(mf_trace* trace) { delete trace; }

mf_status mf_matrix_from_entries(size_t n, const double* re, const double* im, mf_matrix** out) {
  if (re == nullptr || out == nullptr) return invalid("mf_matrix_from_entries: null argument");
  if (n == 0) return invalid("mf_matrix_from_entries: empty matrix");
  *out = nullptr;
  return guarded([&] {
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const std::size_t k = static_cast<std::size_t>(i * dim + j);
        m(i, j) = {re[k], im == nullptr ? 0.0 : im[k]};
      }
    }
    *out = new mf_matrix{std::move(m)};
  });
}

mf_status mf_matrix_parse(const char* text, mf_matrix** out) {
  if (text == nullptr || out == nullptr) return invalid("mf_matrix_parse: null argument");
  *out = nullptr;
  return guarded([&] { *out = new mf_matrix{parse_matrix(text)}; });
}

mf_status mf_matrix_read(const char* path, mf_matrix** out) {
  if (path == nullptr || out == nullptr) return invalid("mf_matrix_read: null argument");
  *out = nullptr;
  return guarded([&] { *out = new mf_matrix{read_matrix_file(path)}; });
}

size_t mf_matrix_dim(const mf_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->m.rows());
}

mf_status mf_matrix_entry(const mf_matrix* m, size_t i, size_t j, double* re, double* im) {
  if (m == nullptr || re == nullptr || im == nullptr) return invalid("mf_matrix_entry: null argument");
  const auto n = static_cast<size_t>(m->m.rows());
  if (i >= n || j >= n) return invalid("mf_matrix_entry: index out of range");
  const std::complex<double> z = m->m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  *re = z.real();
  *im = z.imag();
  return MF_OK;
}

mf_status mf_matrix_render(const mf_matrix* m, char** out) {
  if (m == nullptr || out == nullptr) return invalid("mf_matrix_render: null argument");
  return guarded([&] { *out = copy_string(render_matrix(m->m)); });
}

void mf_matrix_free(mf_matrix* m) { delete m; }

mf_status mf_operator_mean(const char* spec, const mf_matrix* a, const mf_matrix* b, double v,
                           mf_matrix** out) {
  if (spec == nullptr || a == nullptr || b == nullptr || out == nullptr) {
    return invalid("mf_operator_mean: null argument");
  }
  *out = nullptr;
  return guarded([&] {
    const Weight w(v);
    const HPDMatrix result =
        operator_mean_by_spec(spec, HPDMatrix(a->m), HPDMatrix(b->m), w.value());
    *out = new mf_matrix{result.matrix()};
  });
}

mf_status mf_loewner_leq(const mf_matrix* a, const mf_matrix* b, double tol, mf_loewner* out) {
  if (a == nullptr || b == nullptr || out == nullptr) return invalid("mf_loewner_leq: null argument");
  return guarded([&] {
    if (a->m.rows() != b->m.rows()) throw DimensionMismatch("matrices differ in dimension");
    const LoewnerResult r = loewner_leq(a->m, b->m, tol);
    *out = {r.holds ? 1 : 0, r.witness, r.normalized};
  });
}

mf_status mf_operator_chains(const mf_matrix* a, const mf_matrix* b, double v, double tol,
                             int* all_hold, char** out) {
  if (a == nullptr || b == nullptr || all_hold == nullptr || out == nullptr) {
    return invalid("mf_operator_chains: null argument");
  }
  return guarded([&] {
    const Weight w(v);
    const std::vector<OperatorChain> chains =
        check_operator_chains(HPDMatrix(a->m), HPDMatrix(b->m), w.value(), tol);
    std::string text;
    bool ok = true;
    char line[256];
    for (const OperatorChain& chain : chains) {
      ok = ok && chain.holds();
      for (const OperatorChainLink& link : chain.links) {
        std::snprintf(line, sizeof line, "%-26s %-14s <= %-14s %-4s witness=%.6e\n",
                      chain.id.c_str(), link.lower.c_str(), link.upper.c_str(),
                      link.order.holds ? "ok" : "FAIL", link.order.normalized);
        text += line;
      }
    }
    *all_hold = ok ? 1 : 0;
    *out = copy_string(text);
  });
}

}  // extern "C"
