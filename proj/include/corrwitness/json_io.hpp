// Copyright 2026 The corrwitness authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// json_io.hpp — Operator files.  Format:
//   {"dims": [d_system, d_env] or [d], "re": [[...]], "im": [[...]]}
// row-major in the computational basis, system-major ordering; "im" may be
// omitted for real operators.  Unknown keys are rejected.

#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "corrwitness/types.hpp"

namespace corrwitness::io {

struct OperatorFile {
  Matrix matrix;
  std::optional<SpaceDims> dims;  // present when the file had a two-entry dims
};

// Throws std::invalid_argument on malformed content, naming the defect.
OperatorFile parse_operator(const nlohmann::json& j);
OperatorFile load_operator(const std::string& path);

nlohmann::json operator_to_json(const Matrix& m, const std::optional<SpaceDims>& dims);

// %.16e — 17 significant digits, locale-independent.
std::string format_double(double x);

}  // namespace corrwitness::io
