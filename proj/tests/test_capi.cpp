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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "meanforge/meanforge.h"

namespace {

mf_eval_args args(const char* spec, double a, double b) {
  mf_eval_args x{};
  x.spec = spec;
  x.a = a;
  x.b = b;
  return x;
}

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(mf_status_name(MF_OK), "ok");
  EXPECT_STREQ(mf_status_name(MF_PARSE_ERROR), "parse_error");
  EXPECT_STREQ(mf_status_name(static_cast<mf_status>(99)), "unknown");
  EXPECT_GT(std::strlen(mf_version()), 0u);
}

TEST(CApi, Eval) {
  mf_eval_args x = args("Lv", 1, 4);
  x.v = 0.25;
  x.has_v = 1;
  double out = 0;
  ASSERT_EQ(mf_eval(&x, &out), MF_OK);
  EXPECT_NEAR(out, 1.5181259901839691, 1e-15);

  mf_eval_args s = args("stolarsky", 2, 6);
  s.p = 1;
  s.q = 2;
  s.has_p = s.has_q = 1;
  ASSERT_EQ(mf_eval(&s, &out), MF_OK);
  EXPECT_DOUBLE_EQ(out, 4.0);

  mf_eval_args bad = args("Lq", 1, 2);
  EXPECT_EQ(mf_eval(&bad, &out), MF_PARSE_ERROR);
  EXPECT_STREQ(mf_last_error_token(), "Lq");
  EXPECT_NE(std::string(mf_last_error()).find("Lq"), std::string::npos);

  mf_eval_args negative = args("geom", -1, 2);
  EXPECT_EQ(mf_eval(&negative, &out), MF_DOMAIN_ERROR);
  EXPECT_EQ(mf_eval(nullptr, &out), MF_INVALID_ARGUMENT);

  // A success clears the previous error.
  mf_eval_args ok = args("geom", 2, 8);
  ASSERT_EQ(mf_eval(&ok, &out), MF_OK);
  EXPECT_STREQ(mf_last_error(), "");
}

TEST(CApi, WeightedTable) {
  double t[9];
  ASSERT_EQ(mf_weighted_table(1, 4, 0.5, t), MF_OK);
  EXPECT_DOUBLE_EQ(t[0], 2.5);
  EXPECT_DOUBLE_EQ(t[4], 2.0);
  EXPECT_DOUBLE_EQ(t[8], 1.6);
  EXPECT_STREQ(mf_weighted_table_name(1, 0), "Lv");
  EXPECT_EQ(mf_weighted_table_name(3, 0), nullptr);
  EXPECT_EQ(mf_weighted_table(1, 4, 2.0, t), MF_DOMAIN_ERROR);
}

TEST(CApi, VerifyRunAndRender) {
  mf_verify_config c;
  mf_verify_config_init(&c);
  EXPECT_EQ(c.samples, 100000u);
  EXPECT_EQ(c.operator_dims_count, 7u);
  c.samples = 500;
  c.operator_samples = 5;
  c.seed = 3;
  mf_report* r = nullptr;
  ASSERT_EQ(mf_verify_run(&c, &r), MF_OK);
  EXPECT_EQ(mf_report_passed(r), 1);
  EXPECT_GT(mf_report_wall_seconds(r), 0.0);
  char* json = nullptr;
  ASSERT_EQ(mf_report_render(r, MF_FORMAT_JSON, &json), MF_OK);
  EXPECT_EQ(std::string(json).substr(0, 13), "{\n  \"seed\": 3");
  mf_string_free(json);
  char* text = nullptr;
  ASSERT_EQ(mf_report_render(r, MF_FORMAT_TEXT, &text), MF_OK);
  EXPECT_NE(std::string(text).find("PASS"), std::string::npos);
  mf_string_free(text);
  mf_report_free(r);

  c.samples = 0;
  EXPECT_EQ(mf_verify_run(&c, &r), MF_DOMAIN_ERROR);
  EXPECT_EQ(r, nullptr);
}

TEST(CApi, Stabilize) {
  mf_stabilize_options o;
  mf_stabilize_options_init(&o);
  EXPECT_EQ(o.grid_points, 513);
  mf_trace* t = nullptr;
  ASSERT_EQ(mf_stabilize("arith", "geom", &o, &t), MF_OK);
  double f = 0;
  ASSERT_EQ(mf_trace_eval(t, 4.0, &f), MF_OK);
  EXPECT_NEAR(f, 3 / std::log(4.0), 1e-9);
  EXPECT_EQ(mf_trace_size(t), 513);
  double x = 0;
  ASSERT_EQ(mf_trace_point(t, 256, &x, &f), MF_OK);
  EXPECT_DOUBLE_EQ(x, 1.0);
  EXPECT_EQ(mf_trace_point(t, 513, &x, &f), MF_INVALID_ARGUMENT);
  EXPECT_EQ(mf_trace_eval(t, -1.0, &f), MF_DOMAIN_ERROR);
  EXPECT_GT(mf_trace_iterations(t), 0);
  EXPECT_LT(mf_trace_residual(t), 1e-12);
  mf_trace_free(t);

  o.max_iter = 2;
  EXPECT_EQ(mf_stabilize("arith", "geom", &o, &t), MF_NON_CONVERGENCE);
  size_t n = 0;
  const double* history = mf_last_history(&n);
  EXPECT_EQ(n, 2u);
  EXPECT_GT(history[1], 0.0);
  EXPECT_EQ(mf_stabilize("arith", "nonsense", nullptr, &t), MF_PARSE_ERROR);
  EXPECT_STREQ(mf_last_error_token(), "nonsense");
}

TEST(CApi, MatricesAndOperatorMeans) {
  const double a_re[] = {1, 0, 0, 4};
  mf_matrix* a = nullptr;
  mf_matrix* b = nullptr;
  ASSERT_EQ(mf_matrix_from_entries(2, a_re, nullptr, &a), MF_OK);
  ASSERT_EQ(mf_matrix_parse("2  4 0  0 1", &b), MF_OK);
  EXPECT_EQ(mf_matrix_dim(a), 2u);

  mf_matrix* g = nullptr;
  ASSERT_EQ(mf_operator_mean("geom", a, b, 0.5, &g), MF_OK);
  double re = 0, im = 0;
  ASSERT_EQ(mf_matrix_entry(g, 1, 1, &re, &im), MF_OK);
  EXPECT_NEAR(re, 2.0, 1e-15);
  EXPECT_EQ(mf_matrix_entry(g, 2, 0, &re, &im), MF_INVALID_ARGUMENT);
  char* text = nullptr;
  ASSERT_EQ(mf_matrix_render(g, &text), MF_OK);
  EXPECT_EQ(std::string(text).substr(0, 2), "2\n");
  mf_string_free(text);
  mf_matrix_free(g);

  mf_loewner l{};
  ASSERT_EQ(mf_loewner_leq(a, b, 1e-10, &l), MF_OK);
  EXPECT_EQ(l.holds, 0);
  EXPECT_NEAR(l.witness, -3.0, 1e-14);

  int all_hold = 0;
  ASSERT_EQ(mf_operator_chains(a, b, 0.3, 1e-10, &all_hold, &text), MF_OK);
  EXPECT_EQ(all_hold, 1);
  EXPECT_NE(std::string(text).find("op_weighted_log"), std::string::npos);
  mf_string_free(text);

  const double indefinite[] = {1, 2, 2, 1};
  mf_matrix* bad = nullptr;
  ASSERT_EQ(mf_matrix_from_entries(2, indefinite, nullptr, &bad), MF_OK);
  EXPECT_EQ(mf_operator_mean("geom", a, bad, 0.5, &g), MF_NON_POSITIVE);
  EXPECT_EQ(mf_operator_mean("bogus", a, b, 0.5, &g), MF_PARSE_ERROR);
  mf_matrix* three = nullptr;
  ASSERT_EQ(mf_matrix_parse("3 1 0 0 0 1 0 0 0 1", &three), MF_OK);
  EXPECT_EQ(mf_operator_mean("geom", a, three, 0.5, &g), MF_DIMENSION_MISMATCH);
  mf_matrix_free(three);
  EXPECT_EQ(mf_matrix_parse("2 1 0 0 x", &three), MF_PARSE_ERROR);
  EXPECT_STREQ(mf_last_error_token(), "x");
  EXPECT_EQ(mf_matrix_read("/nonexistent/m.txt", &three), MF_IO_ERROR);

  mf_matrix_free(bad);
  mf_matrix_free(a);
  mf_matrix_free(b);
  mf_matrix_free(nullptr);
}

}  // namespace
