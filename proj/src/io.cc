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

#include "qswitch/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace qswitch {

using nlohmann::json;

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(std::span<const Complex> v) {
    json out = json::array();
    for (Complex z : v) {
        out.push_back(to_json(z));
    }
    return out;
}

json to_json(const ComplexMatrix &m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(to_json(m.entries().subspan(r * m.cols(), m.cols())));
    }
    return out;
}

json parse_json_text(std::string_view text, std::string_view source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        const std::size_t cut = what.find(": ");
        throw ParseError(fmt::format("{}: line {}, column {}: {}", source, line, column,
                                     cut == std::string::npos ? what : what.substr(cut + 2)));
    }
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("cannot open '{}'", path));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

Complex complex_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(fmt::format("{}: expected a complex number [re, im], got {}", path, j.dump()));
    }
    const Complex z{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ParseError(fmt::format("{}: complex number must be finite", path));
    }
    return z;
}

std::vector<Complex> vector_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(fmt::format("{}: expected a non-empty array of [re, im] pairs", path));
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(complex_from_json(j[i], fmt::format("{}[{}]", path, i)));
    }
    return out;
}

ComplexMatrix matrix_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(fmt::format("{}: expected a non-empty array of rows", path));
    }
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    std::vector<Complex> entries;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<Complex> row = vector_from_json(j[r], fmt::format("{}[{}]", path, r));
        if (r == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw ParseError(fmt::format("{}[{}]: row has {} entries, expected {}", path, r, row.size(), cols));
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

StateTuple states_from_json(const json &doc) {
    if (!doc.is_object()) {
        throw ParseError("state document must be a JSON object");
    }
    if (!doc.contains("local_dim") || !doc["local_dim"].is_number_integer() || doc["local_dim"].get<long>() < 1) {
        throw ParseError("local_dim: expected a positive integer");
    }
    const auto d = doc["local_dim"].get<std::size_t>();
    if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty()) {
        throw ParseError("states: expected a non-empty array");
    }
    std::vector<QuantumState> states;
    const json &arr = doc["states"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = fmt::format("states[{}]", i);
        const json &entry = arr[i];
        const bool has_vector = entry.is_object() && entry.contains("vector");
        const bool has_matrix = entry.is_object() && entry.contains("matrix");
        if (has_vector == has_matrix) {
            throw ParseError(fmt::format("{}: expected exactly one of \"vector\" or \"matrix\"", path));
        }
        try {
            if (has_vector) {
                std::vector<Complex> v = vector_from_json(entry["vector"], path + ".vector");
                if (v.size() != d) {
                    throw ValidationError(fmt::format("dimension {} does not match local_dim {}", v.size(), d));
                }
                states.emplace_back(PureState(std::move(v)));
            } else {
                ComplexMatrix m = matrix_from_json(entry["matrix"], path + ".matrix");
                if (m.rows() != d || m.cols() != d) {
                    throw ValidationError(
                        fmt::format("shape {}x{} does not match local_dim {}", m.rows(), m.cols(), d));
                }
                states.emplace_back(DensityMatrix(std::move(m)));
            }
        } catch (const ValidationError &e) {
            throw ValidationError(fmt::format("state {} ({}): {}", i + 1, path, e.what()));
        }
    }
    return StateTuple(std::move(states));
}

json states_to_json(const StateTuple &t) {
    json states = json::array();
    for (const auto &s : t.states()) {
        if (const auto *psi = std::get_if<PureState>(&s)) {
            states.push_back({{"vector", to_json(psi->amplitudes())}});
        } else {
            states.push_back({{"matrix", to_json(std::get<DensityMatrix>(s).matrix())}});
        }
    }
    return {{"local_dim", t.local_dim()}, {"states", states}};
}

UnitaryInput unitaries_from_json(const json &doc) {
    if (!doc.is_object() || !doc.contains("a") || !doc.contains("b")) {
        throw ParseError("unitary document must be an object with fields \"a\" and \"b\"");
    }
    auto load = [&](const char *key) {
        try {
            return UnitaryMatrix(matrix_from_json(doc[key], key));
        } catch (const ValidationError &e) {
            throw ValidationError(fmt::format("{}: {}", key, e.what()));
        }
    };
    UnitaryInput out{load("a"), load("b"), std::nullopt};
    if (out.a.dim() != out.b.dim()) {
        throw ValidationError(fmt::format("a is {0}x{0} but b is {1}x{1}", out.a.dim(), out.b.dim()));
    }
    if (doc.contains("psi")) {
        try {
            out.psi = PureState(vector_from_json(doc["psi"], "psi"));
            if (out.psi->dim() != out.a.dim()) {
                throw ValidationError(fmt::format("dimension {} does not match the unitaries ({})", out.psi->dim(),
                                                  out.a.dim()));
            }
        } catch (const ValidationError &e) {
            throw ValidationError(fmt::format("psi: {}", e.what()));
        }
    }
    return out;
}

}  // namespace qswitch
