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

#include "core/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace meanforge {

namespace {

bool parse_real(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(value)) return false;
  *out = value;
  return true;
}

std::complex<double> parse_entry(const std::string& token) {
  double re = 0.0;
  double im = 0.0;
  const char last = token.empty() ? '\0' : token.back();
  if (last != 'j' && last != 'i') {
    if (!parse_real(token, &re)) throw ParseError(token, "bad matrix entry '" + token + "'");
    return {re, 0.0};
  }
  const std::string body = token.substr(0, token.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  bool ok;
  if (split == std::string::npos) {
    ok = parse_real(body, &im);
  } else {
    ok = parse_real(body.substr(0, split), &re) && parse_real(body.substr(split), &im);
  }
  if (!ok) throw ParseError(token, "bad complex matrix entry '" + token + "'");
  return {re, im};
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) throw ParseError("", "empty matrix text");
  double n_value = 0.0;
  if (!parse_real(token, &n_value) || n_value < 1 || n_value != std::floor(n_value) ||
      n_value > 4096) {
    throw ParseError(token, "bad matrix dimension '" + token + "'");
  }
  const int n = static_cast<int>(n_value);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> token)) {
        throw ParseError("", "matrix ends after " + std::to_string(i * n + j) + " of " +
                                 std::to_string(n * n) + " entries");
      }
      m(i, j) = parse_entry(token);
    }
  }
  if (in >> token) throw ParseError(token, "unexpected trailing token '" + token + "'");
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open matrix file '" + path + "'");
  std::ostringstream contents;
  contents << file.rdbuf();
  return parse_matrix(contents.str());
}

std::string render_matrix(const ComplexMatrix& m) {
  std::string out = std::to_string(m.rows()) + "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::complex<double> z = m(i, j);
      if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
      } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
      }
      if (j > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace meanforge
