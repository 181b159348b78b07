// Copyright 2026 The nlg Authors
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

#pragma once

// JSON documents for games, matrices and advice/superposed-state specs.
//
// Game document: {"name": str (optional), "k": int, "l": int,
//   "p": k x k array of numbers, "V": nested array V[a][b][x][y] of 0/1}.

#include <json.hpp>
#include <string>

#include "nlg/games.hpp"
#include "nlg/linalg.hpp"
#include "nlg/sic.hpp"

namespace nlg {

using Json = nlohmann::ordered_json;

Json game_to_json(const Game& g);
/// Throws InputError naming the offending field.
Game game_from_json(const Json& doc);

/// {"name", "rows", "cols", "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const std::string& name, const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& doc);

/// Superposed-state spec: {"dim_a": int, "dim_b": int, "p": k x k array,
///   "advice": k x k array of dim_a*dim_b amplitude lists}, where
///   advice[x][y] lists the (A, B) amplitudes of the advice for inputs x, y.
/// Amplitudes must be normalized to 1e-9.
SuperposedState superposed_from_json(const Json& doc);
Json superposed_to_json(const SuperposedState& s);

/// Complex number from [re, im] or a bare real.
Complex complex_from_json(const Json& v, const std::string& where);

/// Parses text, converting parse errors to InputError with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Stable serialization used for every report file.
std::string dump_json(const Json& doc);

}  // namespace nlg
