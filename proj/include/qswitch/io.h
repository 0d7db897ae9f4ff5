// Copyright 2026 The qswitch Authors
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

/**
 * @file
 * JSON interchange for states and unitaries. A complex number is [re, im], a
 * vector an array of complex numbers and a matrix an array of rows.
 *
 * State document:    {"local_dim": d, "states": [{"vector": [...]} | {"matrix": [[...]]}, ...]}
 * Unitary document:  {"a": matrix, "b": matrix, "psi": vector (optional)}
 */

#ifndef QSWITCH_IO_H
#define QSWITCH_IO_H

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "qswitch/invariants.h"
#include "qswitch/linalg.h"

namespace qswitch {

/// Malformed document. The message carries a line:column or a field path.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(Complex z);
nlohmann::json to_json(std::span<const Complex> v);
nlohmann::json to_json(const ComplexMatrix &m);

/// Parses text, reporting syntax errors as "line L, column C: ...".
nlohmann::json parse_json_text(std::string_view text, std::string_view source = "<input>");
nlohmann::json read_json_file(const std::string &path);

Complex complex_from_json(const nlohmann::json &j, const std::string &path);
std::vector<Complex> vector_from_json(const nlohmann::json &j, const std::string &path);
ComplexMatrix matrix_from_json(const nlohmann::json &j, const std::string &path);

/// Field errors raise ParseError; states violating their invariants raise
/// ValidationError naming the state index.
StateTuple states_from_json(const nlohmann::json &doc);
nlohmann::json states_to_json(const StateTuple &t);

struct UnitaryInput {
    UnitaryMatrix a;
    UnitaryMatrix b;
    std::optional<PureState> psi;
};
UnitaryInput unitaries_from_json(const nlohmann::json &doc);

}  // namespace qswitch

#endif  // QSWITCH_IO_H
