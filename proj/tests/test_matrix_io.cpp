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

#include <cstdio>
#include <fstream>
#include <string>

#include "core/errors.hpp"
#include "core/matrix_io.hpp"

namespace meanforge {
namespace {

TEST(MatrixIo, ParsesRealAndComplexEntries) {
  const ComplexMatrix m = parse_matrix("2\n 2 1-0.5j\n 1+0.5j 3e0\n");
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(0, 0), std::complex<double>(2, 0));
  EXPECT_EQ(m(0, 1), std::complex<double>(1, -0.5));
  EXPECT_EQ(m(1, 0), std::complex<double>(1, 0.5));
  EXPECT_EQ(m(1, 1), std::complex<double>(3, 0));
  const ComplexMatrix e = parse_matrix("1 1.5e-3-2E+2i");
  EXPECT_EQ(e(0, 0), std::complex<double>(1.5e-3, -200));
}

TEST(MatrixIo, RejectsBadInput) {
  auto token_of = [](const std::string& text) {
    try {
      parse_matrix(text);
    } catch (const ParseError& e) {
      return e.token();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(token_of("2 1 2 3 x"), "x");
  EXPECT_EQ(token_of("two 1 2 3 4"), "two");
  EXPECT_EQ(token_of("1 1 9"), "9");
  EXPECT_EQ(token_of("1 1+2k"), "1+2k");
  EXPECT_THROW(parse_matrix(""), ParseError);
  EXPECT_THROW(parse_matrix("3 1 2"), ParseError);
  EXPECT_THROW(parse_matrix("0"), ParseError);
  EXPECT_THROW(read_matrix_file("/nonexistent/matrix.txt"), IoError);
}

TEST(MatrixIo, RenderRoundTrips) {
  ComplexMatrix m(2, 2);
  m << std::complex<double>(0.1, 0), std::complex<double>(1.0 / 3, -2e-17),
      std::complex<double>(1.0 / 3, 2e-17), std::complex<double>(1e300, 0);
  EXPECT_EQ(parse_matrix(render_matrix(m)), m);
}

TEST(MatrixIo, ReadsFiles) {
  const std::string path = ::testing::TempDir() + "matrix_io_test.txt";
  {
    std::ofstream out(path);
    out << "2\n4 0\n0 9\n";
  }
  const ComplexMatrix m = read_matrix_file(path);
  EXPECT_EQ(m(1, 1), std::complex<double>(9, 0));
  std::remove(path.c_str());
}

}  // namespace
}  // namespace meanforge
