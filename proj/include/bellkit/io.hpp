// Copyright 2026 The bellkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serialization: CSV probability tables, JSON documents for tables,
// correlation tensors, and functionals, and atomic file writes.
//
// Numbers are rendered with printf's %.17g, which round-trips every IEEE
// double exactly and — unlike shortest-representation printers — produces
// one fixed spelling per value, so regenerated files are byte-identical.
// The JSON writer is deliberately hand-rolled: it preserves insertion
// order, renders with that one number format, and emits the same bytes for
// the same data on every run.  Parsing uses a full JSON library; writing
// never does.
//
// Formats:
//
//   table CSV     header  m_1..m_N, alpha_1..alpha_N, p; one row per
//                 (setting tuple, outcome tuple) pair, setting tuples in
//                 lexicographic order outermost.
//
//   table JSON    { "scenario": {"parties","settings","outcomes"},
//                   "probabilities": { "m1,..,mN": [ p over outcome
//                   tuples in lexicographic order ] } }
//
//   tensor JSON   { "scenario", "sign": "+-..",
//                   "moments": { "n1,..,nN": { "m1,..,mN": [re, im] } } }
//                 with order tuples over the full {1..d}^N lattice.
//
//   functional    { "scenario", "sign", "name",
//       JSON        "weight": { "n1,..,nN": [re, im] }   (nonzero only),
//                   "coefficients": { "m1,..,mN": [ g over outcome tuples
//                   in lexicographic order ] } }
//                 On read, only scenario/sign/name/weight are consumed and
//                 the coefficients are rebuilt, so a file cannot smuggle in
//                 coefficients that disagree with its weight.
//
// Reader errors cite the row/column or JSON key that failed, and every
// parsed object passes through the same validating constructors as
// programmatically built ones.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bellkit/correlation.hpp"
#include "bellkit/functional.hpp"
#include "bellkit/probability.hpp"
#include "bellkit/scenario.hpp"

namespace bellkit {

// Thrown for file-system and parse-level failures (semantic failures keep
// using ValidationError).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// One fixed spelling per double: %.17g round-trips exactly and never
// varies between runs.
inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return std::string(buffer);
}

// --- Minimal ordered JSON writer ------------------------------------------

class JsonValue {
 public:
  enum class Kind { Null, Boolean, Integer, Real, String, Array, Object };

  JsonValue() : kind_(Kind::Null) {}

  static JsonValue boolean(bool v) {
    JsonValue j;
    j.kind_ = Kind::Boolean;
    j.bool_ = v;
    return j;
  }
  static JsonValue integer(std::int64_t v) {
    JsonValue j;
    j.kind_ = Kind::Integer;
    j.int_ = v;
    return j;
  }
  static JsonValue real(double v) {
    JsonValue j;
    j.kind_ = Kind::Real;
    j.real_ = v;
    return j;
  }
  static JsonValue string(std::string v) {
    JsonValue j;
    j.kind_ = Kind::String;
    j.str_ = std::move(v);
    return j;
  }
  static JsonValue array() {
    JsonValue j;
    j.kind_ = Kind::Array;
    return j;
  }
  static JsonValue object() {
    JsonValue j;
    j.kind_ = Kind::Object;
    return j;
  }
  // [re, im] pair for one complex number.
  static JsonValue complex_pair(std::complex<double> z) {
    JsonValue j = array();
    j.push(real(z.real()));
    j.push(real(z.imag()));
    return j;
  }

  JsonValue& push(JsonValue v) {
    items_.push_back(std::move(v));
    return *this;
  }
  JsonValue& add(std::string key, JsonValue v) {
    members_.emplace_back(std::move(key), std::move(v));
    return *this;
  }

  // Pretty-printed document with two-space indentation, keys in insertion
  // order, and a trailing newline.
  std::string dump() const {
    std::string out;
    write(out, 0);
    out.push_back('\n');
    return out;
  }

 private:
  static void write_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  void write(std::string& out, int depth) const {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (kind_) {
      case Kind::Null: out += "null"; break;
      case Kind::Boolean: out += bool_ ? "true" : "false"; break;
      case Kind::Integer: out += std::to_string(int_); break;
      case Kind::Real: out += format_double(real_); break;
      case Kind::String: write_escaped(out, str_); break;
      case Kind::Array: {
        // Arrays of scalars stay on one line; nested containers break.
        bool scalar_only = true;
        for (const JsonValue& v : items_) {
          if (v.kind_ == Kind::Array || v.kind_ == Kind::Object) {
            scalar_only = false;
            break;
          }
        }
        if (items_.empty()) {
          out += "[]";
        } else if (scalar_only) {
          out.push_back('[');
          for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i != 0) out += ", ";
            items_[i].write(out, depth);
          }
          out.push_back(']');
        } else {
          out += "[\n";
          for (std::size_t i = 0; i < items_.size(); ++i) {
            out += pad_in;
            items_[i].write(out, depth + 1);
            if (i + 1 != items_.size()) out.push_back(',');
            out.push_back('\n');
          }
          out += pad + "]";
        }
        break;
      }
      case Kind::Object: {
        if (members_.empty()) {
          out += "{}";
          break;
        }
        out += "{\n";
        for (std::size_t i = 0; i < members_.size(); ++i) {
          out += pad_in;
          write_escaped(out, members_[i].first);
          out += ": ";
          members_[i].second.write(out, depth + 1);
          if (i + 1 != members_.size()) out.push_back(',');
          out.push_back('\n');
        }
        out += pad + "}";
        break;
      }
    }
  }

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double real_ = 0.0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

// --- Files -----------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path + " for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes via a temporary file in the same directory, then renames it over
// the target, so readers never observe a half-written file.
inline void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + temp + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw IoError("short write to " + temp);
    }
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot rename " + temp + " to " + path);
  }
}

// --- Key and sign helpers ----------------------------------------------------

// "first,second,..." key for an int tuple.
inline std::string tuple_key(const std::vector<int>& tuple) {
  std::string key;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i != 0) key.push_back(',');
    key += std::to_string(tuple[i]);
  }
  return key;
}

inline std::vector<int> parse_tuple_key(const std::string& key, int expected,
                                        const std::string& what) {
  std::vector<int> tuple;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = key.find(',', pos);
    const std::string item =
        key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      tuple.push_back(value);
    } catch (const std::exception&) {
      throw IoError(what + ": key \"" + key + "\" has non-integer entry \"" +
                    item + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(tuple.size()) != expected) {
    throw IoError(what + ": key \"" + key + "\" has " +
                  std::to_string(tuple.size()) + " entries, expected " +
                  std::to_string(expected));
  }
  return tuple;
}

// Accepts "+-+" or the comma form "1,-1,1".
inline SignVector parse_sign_vector(const std::string& text) {
  if (text.empty()) {
    throw IoError("sign vector: empty specification");
  }
  if (text.find(',') == std::string::npos &&
      text.find_first_not_of("+-") == std::string::npos) {
    std::vector<int> signs;
    signs.reserve(text.size());
    for (char c : text) signs.push_back(c == '+' ? +1 : -1);
    return SignVector(std::move(signs));
  }
  std::vector<int> signs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item == "1" || item == "+1") {
      signs.push_back(+1);
    } else if (item == "-1") {
      signs.push_back(-1);
    } else {
      throw IoError("sign vector: entry \"" + item +
                    "\" is not one of +1, 1, -1 (or use the compact \"+-\" form)");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return SignVector(std::move(signs));
}

// --- Scenario JSON -----------------------------------------------------------

inline JsonValue json_from_scenario(const Scenario& s) {
  JsonValue j = JsonValue::object();
  j.add("parties", JsonValue::integer(s.parties()));
  j.add("settings", JsonValue::integer(s.settings()));
  j.add("outcomes", JsonValue::integer(s.outcomes()));
  return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("parties") || !j.contains("settings") ||
      !j.contains("outcomes")) {
    throw IoError(what + ": scenario must be an object with parties, settings, "
                         "outcomes");
  }
  return Scenario(j.at("parties").get<int>(), j.at("settings").get<int>(),
                  j.at("outcomes").get<int>());
}

// --- Probability tables -------------------------------------------------------

inline std::string csv_from_table(const ProbabilityTable& table) {
  const Scenario& s = table.scenario();
  std::string out;
  for (int j = 1; j <= s.parties(); ++j) out += "m_" + std::to_string(j) + ",";
  for (int j = 1; j <= s.parties(); ++j) out += "alpha_" + std::to_string(j) + ",";
  out += "p\n";
  const std::uint64_t cols = s.setting_tuple_count();
  const std::uint64_t rows = s.outcome_tuple_count();
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    const std::vector<int> m = settings_from_index(s, mi);
    for (std::uint64_t ai = 0; ai < rows; ++ai) {
      const std::vector<int> alpha = outcomes_from_index(s, ai);
      for (int v : m) out += std::to_string(v) + ",";
      for (int v : alpha) out += std::to_string(v) + ",";
      out += format_double(table.at(ai, mi)) + "\n";
    }
  }
  return out;
}

inline ProbabilityTable table_from_csv(const std::string& content,
                                       const Scenario& scenario) {
  const int parties = scenario.parties();
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("table CSV: empty input");
  }
  // Validate the header shape.
  {
    std::string expected;
    for (int j = 1; j <= parties; ++j) expected += "m_" + std::to_string(j) + ",";
    for (int j = 1; j <= parties; ++j) expected += "alpha_" + std::to_string(j) + ",";
    expected += "p";
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) {
      throw IoError("table CSV: header \"" + line + "\" does not match \"" +
                    expected + "\"");
    }
  }
  const std::uint64_t rows = scenario.outcome_tuple_count();
  const std::uint64_t cols = scenario.setting_tuple_count();
  const double unset = -2.0;  // outside any legal probability
  std::vector<double> values(static_cast<std::size_t>(rows * cols), unset);
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(fields.size()) != 2 * parties + 1) {
      throw IoError("table CSV line " + std::to_string(line_number) + ": has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(2 * parties + 1));
    }
    std::vector<int> m(static_cast<std::size_t>(parties));
    std::vector<int> alpha(static_cast<std::size_t>(parties));
    double p = 0.0;
    try {
      for (int j = 0; j < parties; ++j) {
        m[static_cast<std::size_t>(j)] = std::stoi(fields[static_cast<std::size_t>(j)]);
      }
      for (int j = 0; j < parties; ++j) {
        alpha[static_cast<std::size_t>(j)] =
            std::stoi(fields[static_cast<std::size_t>(parties + j)]);
      }
      p = std::stod(fields[static_cast<std::size_t>(2 * parties)]);
    } catch (const std::exception&) {
      throw IoError("table CSV line " + std::to_string(line_number) +
                    ": non-numeric field");
    }
    std::uint64_t mi = 0;
    std::uint64_t ai = 0;
    try {
      mi = settings_to_index(scenario, m);
      ai = outcomes_to_index(scenario, alpha);
    } catch (const ValidationError& err) {
      throw IoError("table CSV line " + std::to_string(line_number) + ": " +
                    err.what());
    }
    double& slot = values[static_cast<std::size_t>(ai * cols + mi)];
    if (slot != unset) {
      throw IoError("table CSV line " + std::to_string(line_number) +
                    ": duplicate entry for this setting/outcome pair");
    }
    slot = p;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == unset) {
      throw IoError("table CSV: missing entry at flat index " + std::to_string(i) +
                    " (expected " + std::to_string(values.size()) + " rows)");
    }
  }
  return ProbabilityTable(scenario, std::move(values));
}

inline JsonValue json_from_table(const ProbabilityTable& table) {
  const Scenario& s = table.scenario();
  JsonValue root = JsonValue::object();
  root.add("scenario", json_from_scenario(s));
  JsonValue probs = JsonValue::object();
  const std::uint64_t cols = s.setting_tuple_count();
  const std::uint64_t rows = s.outcome_tuple_count();
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    JsonValue column = JsonValue::array();
    for (std::uint64_t ai = 0; ai < rows; ++ai) {
      column.push(JsonValue::real(table.at(ai, mi)));
    }
    probs.add(tuple_key(settings_from_index(s, mi)), std::move(column));
  }
  root.add("probabilities", std::move(probs));
  return root;
}

inline ProbabilityTable table_from_json(const nlohmann::json& j) {
  const Scenario s = scenario_from_json(j.value("scenario", nlohmann::json()),
                                        "table JSON");
  if (!j.contains("probabilities") || !j.at("probabilities").is_object()) {
    throw IoError("table JSON: missing probabilities object");
  }
  const std::uint64_t cols = s.setting_tuple_count();
  const std::uint64_t rows = s.outcome_tuple_count();
  const double unset = -2.0;
  std::vector<double> values(static_cast<std::size_t>(rows * cols), unset);
  for (const auto& [key, column] : j.at("probabilities").items()) {
    const std::vector<int> m = parse_tuple_key(key, s.parties(), "table JSON");
    const std::uint64_t mi = settings_to_index(s, m);
    if (!column.is_array() || column.size() != rows) {
      throw IoError("table JSON: probabilities[\"" + key + "\"] must be an array "
                    "of " + std::to_string(rows) + " numbers");
    }
    for (std::uint64_t ai = 0; ai < rows; ++ai) {
      values[static_cast<std::size_t>(ai * cols + mi)] =
          column.at(ai).get<double>();
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == unset) {
      throw IoError("table JSON: missing setting column (flat index " +
                    std::to_string(i) + " unfilled)");
    }
  }
  return ProbabilityTable(s, std::move(values));
}

// --- Correlation tensors -------------------------------------------------------

inline JsonValue json_from_tensor(const CorrelationTensor& tensor) {
  const Scenario& s = tensor.scenario();
  JsonValue root = JsonValue::object();
  root.add("scenario", json_from_scenario(s));
  root.add("sign", JsonValue::string(tensor.sign().to_string()));
  JsonValue moments = JsonValue::object();
  const std::uint64_t orders = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  for (std::uint64_t ni = 0; ni < orders; ++ni) {
    JsonValue row = JsonValue::object();
    for (std::uint64_t mi = 0; mi < cols; ++mi) {
      row.add(tuple_key(settings_from_index(s, mi)),
              JsonValue::complex_pair(tensor.at(ni, mi)));
    }
    moments.add(tuple_key(outcomes_from_index(s, ni)), std::move(row));
  }
  root.add("moments", std::move(moments));
  return root;
}

inline CorrelationTensor tensor_from_json(const nlohmann::json& j) {
  const Scenario s = scenario_from_json(j.value("scenario", nlohmann::json()),
                                        "tensor JSON");
  if (!j.contains("sign") || !j.at("sign").is_string()) {
    throw IoError("tensor JSON: missing sign string");
  }
  const SignVector sign = parse_sign_vector(j.at("sign").get<std::string>());
  if (!j.contains("moments") || !j.at("moments").is_object()) {
    throw IoError("tensor JSON: missing moments object");
  }
  const std::uint64_t orders = s.outcome_tuple_count();
  const std::uint64_t cols = s.setting_tuple_count();
  std::vector<std::complex<double>> values(static_cast<std::size_t>(orders * cols),
                                           std::complex<double>(0.0, 0.0));
  std::vector<bool> seen(static_cast<std::size_t>(orders * cols), false);
  for (const auto& [n_key, row] : j.at("moments").items()) {
    const std::vector<int> n = parse_tuple_key(n_key, s.parties(), "tensor JSON");
    const std::uint64_t ni = outcomes_to_index(s, n);
    if (!row.is_object()) {
      throw IoError("tensor JSON: moments[\"" + n_key + "\"] must be an object");
    }
    for (const auto& [m_key, pair] : row.items()) {
      const std::vector<int> m = parse_tuple_key(m_key, s.parties(), "tensor JSON");
      const std::uint64_t mi = settings_to_index(s, m);
      if (!pair.is_array() || pair.size() != 2) {
        throw IoError("tensor JSON: moments[\"" + n_key + "\"][\"" + m_key +
                      "\"] must be an [re, im] pair");
      }
      values[static_cast<std::size_t>(ni * cols + mi)] =
          std::complex<double>(pair.at(0).get<double>(), pair.at(1).get<double>());
      seen[static_cast<std::size_t>(ni * cols + mi)] = true;
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw IoError("tensor JSON: missing component (flat index " +
                    std::to_string(i) + " unfilled)");
    }
  }
  return CorrelationTensor(s, sign, std::move(values));
}

// --- Functionals -----------------------------------------------------------------

inline JsonValue json_from_functional(const BellFunctional& fn) {
  const Scenario& s = fn.scenario();
  JsonValue root = JsonValue::object();
  root.add("scenario", json_from_scenario(s));
  root.add("sign", JsonValue::string(fn.sign().to_string()));
  root.add("name", JsonValue::string(fn.name()));
  JsonValue weight = JsonValue::object();
  const std::uint64_t orders = s.moment_tuple_count();
  for (std::uint64_t oi = 0; oi < orders; ++oi) {
    const std::complex<double> f = fn.weight().at(oi);
    if (f != std::complex<double>(0.0, 0.0)) {
      weight.add(tuple_key(moments_from_index(s, oi)), JsonValue::complex_pair(f));
    }
  }
  root.add("weight", std::move(weight));
  JsonValue coefficients = JsonValue::object();
  const std::uint64_t cols = s.setting_tuple_count();
  const std::uint64_t rows = s.outcome_tuple_count();
  for (std::uint64_t mi = 0; mi < cols; ++mi) {
    JsonValue column = JsonValue::array();
    for (std::uint64_t ai = 0; ai < rows; ++ai) {
      column.push(JsonValue::real(fn.coefficient(ai, mi)));
    }
    coefficients.add(tuple_key(settings_from_index(s, mi)), std::move(column));
  }
  root.add("coefficients", std::move(coefficients));
  return root;
}

inline BellFunctional functional_from_json(const nlohmann::json& j) {
  const Scenario s = scenario_from_json(j.value("scenario", nlohmann::json()),
                                        "functional JSON");
  if (!j.contains("sign") || !j.at("sign").is_string()) {
    throw IoError("functional JSON: missing sign string");
  }
  const SignVector sign = parse_sign_vector(j.at("sign").get<std::string>());
  if (!j.contains("weight") || !j.at("weight").is_object()) {
    throw IoError("functional JSON: missing weight object");
  }
  WeightFunction weight = WeightFunction::zero(s);
  for (const auto& [key, pair] : j.at("weight").items()) {
    const std::vector<int> n = parse_tuple_key(key, s.parties(), "functional JSON");
    if (!pair.is_array() || pair.size() != 2) {
      throw IoError("functional JSON: weight[\"" + key +
                    "\"] must be an [re, im] pair");
    }
    weight.set(n, std::complex<double>(pair.at(0).get<double>(),
                                       pair.at(1).get<double>()));
  }
  const std::string name = j.value("name", std::string("custom"));
  return BellFunctional(s, sign, std::move(weight), name);
}

// Parses a JSON document with file/positional diagnostics.
inline nlohmann::json parse_json_text(const std::string& content,
                                      const std::string& origin) {
  try {
    return nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& err) {
    throw IoError(origin + ": " + err.what());
  }
}

}  // namespace bellkit
