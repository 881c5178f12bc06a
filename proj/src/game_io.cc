// Copyright 2026 The ogda-markov Authors
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

#include "ogda/game_io.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace ogda {
namespace {

using nlohmann::json;

void AppendArray(std::string& out, const std::vector<double>& values) {
  out += "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatDouble(values[i]);
  }
  out += "]";
}

void AppendRows(std::string& out, const std::vector<std::vector<double>>& rows) {
  out += "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += ", ";
    AppendArray(out, rows[i]);
  }
  out += "]";
}

const json& Field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw Error(fmt::format("game file: missing field '{}'", name));
  return *it;
}

int IntField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(fmt::format("game file: field '{}' must be a positive integer", name));
  }
  return v.get<int>();
}

double NumberField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_number()) throw Error(fmt::format("game file: field '{}' must be a number", name));
  return v.get<double>();
}

std::vector<double> ArrayField(const json& obj, const char* name) {
  const json& v = Field(obj, name);
  if (!v.is_array()) throw Error(fmt::format("game file: field '{}' must be an array", name));
  std::vector<double> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw Error(fmt::format("game file: field '{}' entry {} is not a number", name, i));
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<std::vector<double>> RowsField(const json& v, const std::string& name) {
  if (!v.is_array()) throw Error(fmt::format("policy file: '{}' must be an array of rows", name));
  std::vector<std::vector<double>> rows;
  for (const auto& row : v) {
    if (!row.is_array()) throw Error(fmt::format("policy file: '{}' rows must be arrays", name));
    std::vector<double> r;
    for (const auto& e : row) {
      if (!e.is_number()) throw Error(fmt::format("policy file: '{}' has a non-number", name));
      r.push_back(e.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

json ParseJson(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(fmt::format("{}: parse error: {}", what, e.what()));
  }
}

}  // namespace

std::string FormatDouble(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  return fmt::format("{:.17g}", v);
}

std::string GameToText(const MarkovGame& game, const GeneratorInfo& generator) {
  std::string out = "{\n";
  out += fmt::format("  \"schema\": \"ogda-game\",\n  \"version\": {},\n", kGameSchemaVersion);
  out += fmt::format("  \"num_states\": {},\n  \"num_actions_p1\": {},\n  \"num_actions_p2\": {},\n",
                     game.num_states(), game.num_actions_p1(), game.num_actions_p2());
  out += fmt::format("  \"gamma\": {},\n", FormatDouble(game.gamma()));
  out += "  \"loss\": ";
  AppendArray(out, game.loss_data());
  out += ",\n  \"transition\": ";
  AppendArray(out, game.transition_data());
  out += ",\n  \"generator\": {";
  out += fmt::format("\"family\": {}", json(generator.family).dump());
  if (generator.seed) out += fmt::format(", \"seed\": {}", *generator.seed);
  if (generator.kappa) out += fmt::format(", \"kappa\": {}", FormatDouble(*generator.kappa));
  out += "}\n}\n";
  return out;
}

GameSpecFile ParseGame(const std::string& text) {
  const json doc = ParseJson(text, "game file");
  if (!doc.is_object()) throw Error("game file: top level must be an object");
  const json& schema = Field(doc, "schema");
  if (!schema.is_string() || schema.get<std::string>() != "ogda-game") {
    throw Error("game file: field 'schema' must be \"ogda-game\"");
  }
  const json& version = Field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kGameSchemaVersion) {
    throw Error(fmt::format("game file: schema version mismatch (found {}, expected {})",
                            version.dump(), kGameSchemaVersion));
  }
  const int S = IntField(doc, "num_states");
  const int A = IntField(doc, "num_actions_p1");
  const int B = IntField(doc, "num_actions_p2");
  const double gamma = NumberField(doc, "gamma");
  std::vector<double> loss = ArrayField(doc, "loss");
  std::vector<double> transition = ArrayField(doc, "transition");

  GameSpecFile spec;
  if (auto it = doc.find("generator"); it != doc.end() && it->is_object()) {
    if (auto f = it->find("family"); f != it->end() && f->is_string()) {
      spec.generator.family = f->get<std::string>();
    }
    if (auto f = it->find("seed"); f != it->end() && f->is_number_unsigned()) {
      spec.generator.seed = f->get<uint64_t>();
    }
    if (auto f = it->find("kappa"); f != it->end() && f->is_number()) {
      spec.generator.kappa = f->get<double>();
    }
  }
  try {
    spec.game = MarkovGame(S, A, B, gamma, std::move(loss), std::move(transition));
  } catch (const Error& e) {
    throw Error(fmt::format("game file: validation failure: {}", e.what()));
  }
  const ValidationReport report = ValidateGame(spec.game);
  if (!report.ok()) {
    throw Error("game file: validation failure: " + report.ToString());
  }
  return spec;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}' for reading", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path));
  out << contents;
  if (!out) throw Error(fmt::format("failed writing '{}'", path));
}

void SaveGame(const MarkovGame& game, const std::string& path, const GeneratorInfo& generator) {
  WriteFile(path, GameToText(game, generator));
}

GameSpecFile LoadGameSpec(const std::string& path) {
  try {
    return ParseGame(ReadFile(path));
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", path, e.what()));
  }
}

MarkovGame LoadGame(const std::string& path) { return LoadGameSpec(path).game; }

std::string PolicyToText(const JointPolicy& policy) {
  std::string out = "{\n  \"x\": ";
  AppendRows(out, policy.x.Rows());
  out += ",\n  \"y\": ";
  AppendRows(out, policy.y.Rows());
  out += "\n}\n";
  return out;
}

Policy LoadPolicySide(const std::string& path, const std::string& key) {
  const json doc = ParseJson(ReadFile(path), path);
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(fmt::format("{}: missing field '{}'", path, key));
  Policy p = Policy::FromRows(RowsField(*it, key));
  if (auto msg = CheckDistribution(p, 1e-9); !msg.empty()) {
    throw Error(fmt::format("{}: '{}' is not a distribution: {}", path, key, msg));
  }
  return p;
}

std::string GroundTruthToText(const GroundTruth& truth) {
  std::string out = "{\n  \"schema\": \"ogda-solution\",\n  \"version\": 1,\n";
  out += fmt::format("  \"tolerance\": {},\n  \"iterations\": {},\n",
                     FormatDouble(truth.tolerance), truth.iterations);
  out += "  \"v_star\": ";
  AppendArray(out, truth.v_star);
  out += ",\n  \"q_star\": [";
  for (size_t s = 0; s < truth.q_star.size(); ++s) {
    if (s > 0) out += ", ";
    const Matrix& m = truth.q_star[s];
    std::vector<std::vector<double>> rows;
    for (int a = 0; a < m.rows(); ++a) {
      std::vector<double> row;
      for (int b = 0; b < m.cols(); ++b) row.push_back(m(a, b));
      rows.push_back(std::move(row));
    }
    AppendRows(out, rows);
  }
  out += "],\n  \"x_star\": ";
  AppendRows(out, truth.witnesses.x.Rows());
  out += ",\n  \"y_star\": ";
  AppendRows(out, truth.witnesses.y.Rows());
  out += "\n}\n";
  return out;
}

}  // namespace ogda
