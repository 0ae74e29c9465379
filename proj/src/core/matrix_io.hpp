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

// Plain-text dense matrices: first line n, then n rows of n whitespace
// separated entries. An entry is a decimal real or a complex "re+imj".

#ifndef MEANFORGE_CORE_MATRIX_IO_HPP_
#define MEANFORGE_CORE_MATRIX_IO_HPP_

#include <string>
#include <string_view>

#include "core/operator.hpp"

namespace meanforge {

/// Throws ParseError naming the offending token.
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);

/// Inverse of parse_matrix; entries printed with 17 significant digits.
std::string render_matrix(const ComplexMatrix& m);

}  // namespace meanforge

#endif  // MEANFORGE_CORE_MATRIX_IO_HPP_
