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

#include "nlg/json_io.hpp"

#include <fstream>
#include <sstream>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw InputError("expected a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

std::size_t positive_count(const Json& v, const char* name) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(std::string("field '") + name + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

void require_array(const Json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) {
    throw InputError("field '" + where + "' must be an array of length " + std::to_string(n));
  }
}

}  // namespace

Json game_to_json(const Game& g) {
  const std::size_t k = g.k(), l = g.l();
  Json doc;
  if (!g.name().empty()) doc["name"] = g.name();
  doc["k"] = k;
  doc["l"] = l;
  Json p = Json::array();
  for (std::size_t x = 0; x < k; ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < k; ++y) row.push_back(g.p(x, y));
    p.push_back(std::move(row));
  }
  doc["p"] = std::move(p);
  Json v = Json::array();
  for (std::size_t a = 0; a < l; ++a) {
    Json va = Json::array();
    for (std::size_t b = 0; b < l; ++b) {
      Json vb = Json::array();
      for (std::size_t x = 0; x < k; ++x) {
        Json vx = Json::array();
        for (std::size_t y = 0; y < k; ++y) vx.push_back(g.wins(a, b, x, y) ? 1 : 0);
        vb.push_back(std::move(vx));
      }
      va.push_back(std::move(vb));
    }
    v.push_back(std::move(va));
  }
  doc["V"] = std::move(v);
  return doc;
}

Game game_from_json(const Json& doc) {
  const std::size_t k = positive_count(field(doc, "k"), "k");
  const std::size_t l = positive_count(field(doc, "l"), "l");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("field 'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  const Json& pj = field(doc, "p");
  require_array(pj, k, "p");
  std::vector<double> p(k * k);
  for (std::size_t x = 0; x < k; ++x) {
    const std::string where = "p[" + std::to_string(x) + "]";
    require_array(pj[x], k, where);
    for (std::size_t y = 0; y < k; ++y) {
      const Json& e = pj[x][y];
      if (!e.is_number()) throw InputError("field '" + where + "[" + std::to_string(y) + "]' must be a number");
      p[x * k + y] = e.get<double>();
    }
  }
  const Json& vj = field(doc, "V");
  require_array(vj, l, "V");
  std::vector<std::uint8_t> v(l * l * k * k);
  for (std::size_t a = 0; a < l; ++a) {
    const std::string wa = "V[" + std::to_string(a) + "]";
    require_array(vj[a], l, wa);
    for (std::size_t b = 0; b < l; ++b) {
      const std::string wb = wa + "[" + std::to_string(b) + "]";
      require_array(vj[a][b], k, wb);
      for (std::size_t x = 0; x < k; ++x) {
        const std::string wx = wb + "[" + std::to_string(x) + "]";
        require_array(vj[a][b][x], k, wx);
        for (std::size_t y = 0; y < k; ++y) {
          const Json& e = vj[a][b][x][y];
          if (!e.is_number_integer() || (e.get<long long>() != 0 && e.get<long long>() != 1)) {
            throw InputError("field '" + wx + "[" + std::to_string(y) + "]' must be 0 or 1");
          }
          v[((a * l + b) * k + x) * k + y] = static_cast<std::uint8_t>(e.get<int>());
        }
      }
    }
  }
  return Game(k, l, std::move(p), std::move(v), std::move(name));
}

Json matrix_to_json(const std::string& name, const ComplexMatrix& m) {
  Json doc;
  doc["name"] = name;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  Json data = Json::array();
  for (const Complex& z : m.entries()) data.push_back(Json::array({z.real(), z.imag()}));
  doc["data"] = std::move(data);
  return doc;
}

Complex complex_from_json(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError("field '" + where + "' must be a number or [re, im]");
}

ComplexMatrix matrix_from_json(const Json& doc) {
  const std::size_t rows = positive_count(field(doc, "rows"), "rows");
  const std::size_t cols = positive_count(field(doc, "cols"), "cols");
  const Json& data = field(doc, "data");
  require_array(data, rows * cols, "data");
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < data.size(); ++i) {
    entries.push_back(complex_from_json(data[i], "data[" + std::to_string(i) + "]"));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

SuperposedState superposed_from_json(const Json& doc) {
  const std::size_t da = positive_count(field(doc, "dim_a"), "dim_a");
  const std::size_t db = positive_count(field(doc, "dim_b"), "dim_b");
  const Json& pj = field(doc, "p");
  if (!pj.is_array() || pj.empty()) throw InputError("field 'p' must be a nonempty array");
  const std::size_t k = pj.size();
  std::vector<double> p(k * k);
  for (std::size_t x = 0; x < k; ++x) {
    const std::string where = "p[" + std::to_string(x) + "]";
    require_array(pj[x], k, where);
    for (std::size_t y = 0; y < k; ++y) {
      if (!pj[x][y].is_number()) {
        throw InputError("field '" + where + "[" + std::to_string(y) + "]' must be a number");
      }
      p[x * k + y] = pj[x][y].get<double>();
    }
  }
  const Json& aj = field(doc, "advice");
  require_array(aj, k, "advice");
  const RegisterLayout layout({da, db}, {"A", "B"});
  AdviceEnsemble adv{da, db, {}};
  for (std::size_t x = 0; x < k; ++x) {
    require_array(aj[x], k, "advice[" + std::to_string(x) + "]");
    for (std::size_t y = 0; y < k; ++y) {
      const std::string where = "advice[" + std::to_string(x) + "][" + std::to_string(y) + "]";
      require_array(aj[x][y], da * db, where);
      std::vector<Complex> amps;
      for (std::size_t i = 0; i < da * db; ++i) {
        amps.push_back(complex_from_json(aj[x][y][i], where + "[" + std::to_string(i) + "]"));
      }
      try {
        adv.states.emplace_back(std::move(amps), layout);
      } catch (const InputError& e) {
        throw InputError("field '" + where + "': " + e.what());
      }
    }
  }
  return make_superposed_state(k, std::move(p), std::move(adv));
}

Json superposed_to_json(const SuperposedState& s) {
  Json doc;
  doc["dim_a"] = s.advice.dim_a;
  doc["dim_b"] = s.advice.dim_b;
  Json p = Json::array(), adv = Json::array();
  for (std::size_t x = 0; x < s.k; ++x) {
    Json row = Json::array(), arow = Json::array();
    for (std::size_t y = 0; y < s.k; ++y) {
      row.push_back(s.p[x * s.k + y]);
      Json amps = Json::array();
      for (const auto& z : s.advice.states[x * s.k + y].amplitudes()) {
        amps.push_back(Json::array({z.real(), z.imag()}));
      }
      arow.push_back(std::move(amps));
    }
    p.push_back(std::move(row));
    adv.push_back(std::move(arow));
  }
  doc["p"] = std::move(p);
  doc["advice"] = std::move(adv);
  return doc;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON (" << e.what() << ")";
    throw InputError(msg.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace nlg
