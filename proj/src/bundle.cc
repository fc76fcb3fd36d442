/*
 * Copyright 2026 The fairverify Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairverify/bundle.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fairverify/error.h"
#include "json.hpp"

namespace fairverify {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// TOML subset -> JSON object

class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : text_(text) {}

  json Parse() {
    json root = json::object();
    json* table = &root;
    for (;;) {
      SkipBlank();
      if (AtEnd()) break;
      if (Cur() == '[') {
        table = &OpenTable(root);
      } else {
        ParseKeyValue(*table);
      }
      ExpectLineEnd();
    }
    return root;
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Cur() const { return AtEnd() ? '\0' : text_[pos_]; }
  void Bump() {
    if (Cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(message, line_, col_);
  }

  void SkipSpaces() {
    while (Cur() == ' ' || Cur() == '\t') Bump();
  }
  void SkipComment() {
    if (Cur() == '#') {
      while (!AtEnd() && Cur() != '\n') Bump();
    }
  }
  // Whitespace, comments and newlines.
  void SkipBlank() {
    for (;;) {
      SkipSpaces();
      SkipComment();
      if (Cur() == '\n' || Cur() == '\r') {
        Bump();
        continue;
      }
      return;
    }
  }
  void ExpectLineEnd() {
    SkipSpaces();
    SkipComment();
    if (Cur() == '\r') Bump();
    if (AtEnd()) return;
    if (Cur() != '\n') Fail(std::string("unexpected '") + Cur() + "'");
    Bump();
  }

  std::string Key() {
    std::string key;
    while (std::isalnum(static_cast<unsigned char>(Cur())) || Cur() == '_' ||
           Cur() == '-') {
      key += Cur();
      Bump();
    }
    if (key.empty()) Fail("expected a key");
    return key;
  }

  json& OpenTable(json& root) {
    Bump();  // '['
    json* table = &root;
    for (;;) {
      SkipSpaces();
      const std::string key = Key();
      json& next = (*table)[key];
      if (next.is_null()) next = json::object();
      if (!next.is_object()) Fail("'" + key + "' is not a table");
      table = &next;
      SkipSpaces();
      if (Cur() == '.') {
        Bump();
        continue;
      }
      if (Cur() != ']') Fail("expected ']'");
      Bump();
      return *table;
    }
  }

  void ParseKeyValue(json& table) {
    const int line = line_;
    const int col = col_;
    const std::string key = Key();
    SkipSpaces();
    if (Cur() != '=') Fail("expected '=' after '" + key + "'");
    Bump();
    SkipSpaces();
    json value = Value();
    if (table.contains(key)) {
      throw ParseError("duplicate key '" + key + "'", line, col);
    }
    table[key] = std::move(value);
  }

  json Value() {
    const char c = Cur();
    if (c == '"') return BasicString();
    if (c == '\'') return LiteralString();
    if (c == '[') return Array();
    return Scalar();
  }

  json BasicString() {
    Bump();
    std::string out;
    for (;;) {
      if (AtEnd() || Cur() == '\n') Fail("unterminated string");
      const char c = Cur();
      Bump();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      const char e = Cur();
      Bump();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: Fail(std::string("unsupported escape '\\") + e + "'");
      }
    }
  }

  json LiteralString() {
    Bump();
    std::string out;
    for (;;) {
      if (AtEnd() || Cur() == '\n') Fail("unterminated string");
      const char c = Cur();
      Bump();
      if (c == '\'') return out;
      out += c;
    }
  }

  json Array() {
    Bump();
    json out = json::array();
    for (;;) {
      SkipBlank();
      if (Cur() == ']') {
        Bump();
        return out;
      }
      out.push_back(Value());
      SkipBlank();
      if (Cur() == ',') {
        Bump();
        continue;
      }
      if (Cur() != ']') Fail("expected ',' or ']' in array");
    }
  }

  json Scalar() {
    std::string word;
    while (!AtEnd() && (std::isalnum(static_cast<unsigned char>(Cur())) ||
                        Cur() == '.' || Cur() == '+' || Cur() == '-' ||
                        Cur() == '_')) {
      word += Cur();
      Bump();
    }
    if (word.empty()) Fail("expected a value");
    if (word == "true") return true;
    if (word == "false") return false;
    std::string digits;
    for (char ch : word) {
      if (ch != '_') digits += ch;
    }
    const bool negative = !digits.empty() && digits[0] == '-';
    std::string body = digits;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) body.erase(0, 1);
    if (body == "inf") {
      return negative ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
    }
    if (body == "nan") return std::numeric_limits<double>::quiet_NaN();
    const bool is_float = body.find_first_of(".eE") != std::string::npos;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    if (is_float) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) Fail("invalid number '" + word + "'");
      return negative ? -v : v;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) Fail("invalid value '" + word + "'");
    if (negative) {
      if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        Fail("integer out of range");
      }
      return -static_cast<std::int64_t>(v);
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Bundle interpretation

std::string ReadFile(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + what + " file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class BundleBuilder {
 public:
  BundleBuilder(json doc, std::string base_dir, const BundleOverrides& overrides)
      : doc_(std::move(doc)), base_dir_(std::move(base_dir)) {
    if (doc_.contains("options")) {
      const json options = doc_.at("options");
      if (!options.is_object()) throw ConfigError("[options] must be a table");
      doc_.erase("options");
      for (const auto& [key, value] : options.items()) {
        if (doc_.contains(key)) {
          throw ConfigError("'" + key + "' given both at top level and in [options]");
        }
        doc_[key] = value;
      }
    }
    if (overrides.c) doc_["c"] = *overrides.c;
  }

  Bundle Build() {
    static const std::set<std::string> kKnown = {
        "model", "classifier", "property", "spec", "spec_text", "c", "delta",
        "majority", "minority", "minorities", "qualified",
        "mediator_attribute", "mediator_value", "lambda", "form", "variables",
        "batch", "seed", "max_samples", "timeout_secs",
        "rejection_max_attempts", "workers"};
    for (const auto& [key, value] : doc_.items()) {
      if (!kKnown.count(key)) throw ConfigError("unknown bundle key '" + key + "'");
    }

    VerifierConfig config;
    config.delta = Number("delta", config.delta);
    config.batch_size = Count("batch", config.batch_size);
    config.seed = Count("seed", config.seed);
    config.max_samples = Count("max_samples", config.max_samples);
    config.rejection_max_attempts =
        Count("rejection_max_attempts", config.rejection_max_attempts);
    config.workers = static_cast<unsigned>(Count("workers", config.workers));
    if (doc_.contains("timeout_secs")) {
      config.timeout_seconds = Number("timeout_secs", 0.0);
    }

    const bool has_property = doc_.contains("property");
    const bool has_spec = doc_.contains("spec") || doc_.contains("spec_text");
    if (has_property == has_spec) {
      throw ConfigError("a bundle needs exactly one of 'property' or 'spec'");
    }
    if (doc_.contains("spec") && doc_.contains("spec_text")) {
      throw ConfigError("'spec' and 'spec_text' are mutually exclusive");
    }
    if (has_property) {
      const std::string property = String("property");
      return Bundle{BuildProperty(property), config, property};
    }
    return Bundle{BuildExplicit(), config, "spec"};
  }

 private:
  std::string Resolve(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir_.empty()) return p.string();
    return (std::filesystem::path(base_dir_) / p).string();
  }

  const PopulationModel& Model(const std::string& path) {
    const std::string full = Resolve(path);
    auto it = models_.find(full);
    if (it == models_.end()) {
      const std::string text = ReadFile(full, "model");
      try {
        it = models_.emplace(full, ParseModel(text)).first;
      } catch (const ParseError& e) {
        throw ParseError(full + ": " + e.what(), 0, 0);
      }
    }
    return it->second;
  }

  ClassifierPtr Classifier(const std::string& path) {
    const std::string full = Resolve(path);
    auto it = classifiers_.find(full);
    if (it == classifiers_.end()) {
      const std::string text = ReadFile(full, "classifier");
      try {
        it = classifiers_.emplace(full, ParseClassifierJson(text)).first;
      } catch (const ConfigError& e) {
        throw ConfigError(full + ": " + e.what());
      }
    }
    return it->second;
  }

  const json& Require(const json& table, const std::string& key,
                      const std::string& where) const {
    if (!table.contains(key)) {
      throw ConfigError("missing '" + key + "'" + where);
    }
    return table.at(key);
  }

  std::string StringIn(const json& table, const std::string& key,
                       const std::string& where = "") const {
    const json& v = Require(table, key, where);
    if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
    return v.get<std::string>();
  }
  std::string String(const std::string& key) const { return StringIn(doc_, key); }

  double NumberIn(const json& table, const std::string& key,
                  double fallback) const {
    if (!table.contains(key)) return fallback;
    const json& v = table.at(key);
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    return v.get<double>();
  }
  double Number(const std::string& key, double fallback) const {
    return NumberIn(doc_, key, fallback);
  }
  double RequiredNumber(const std::string& key) const {
    Require(doc_, key, "");
    return Number(key, 0.0);
  }

  std::uint64_t Count(const std::string& key, std::uint64_t fallback) const {
    if (!doc_.contains(key)) return fallback;
    const json& v = doc_.at(key);
    if (!v.is_number_unsigned()) {
      throw ConfigError("'" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  Predicate PredicateFrom(const PopulationModel& model, const std::string& text,
                          const std::string& key) const {
    try {
      return model.CompilePredicate(text);
    } catch (const ParseError& e) {
      throw ParseError("predicate '" + key + "': " + e.what(), 0, 0);
    }
  }

  Predicate NamedPredicate(const PopulationModel& model,
                           const std::string& key) const {
    return PredicateFrom(model, String(key), key);
  }

  ParityForm Form() const {
    if (!doc_.contains("form")) return ParityForm::kRatio;
    const std::string form = String("form");
    if (form == "ratio") return ParityForm::kRatio;
    if (form == "difference") return ParityForm::kDifference;
    throw ConfigError("form must be 'ratio' or 'difference'");
  }

  FairnessProblem BuildProperty(const std::string& property) {
    const PopulationModel& model = Model(String("model"));
    ClassifierPtr classifier = Classifier(String("classifier"));
    const double c = RequiredNumber("c");
    if (property == "parity") {
      return BuildDemographicParity(c, NamedPredicate(model, "majority"),
                                    NamedPredicate(model, "minority"), model,
                                    classifier, Form());
    }
    if (property == "equal-opportunity") {
      return BuildEqualOpportunity(c, NamedPredicate(model, "majority"),
                                   NamedPredicate(model, "minority"),
                                   NamedPredicate(model, "qualified"), model,
                                   classifier, Form());
    }
    if (property == "causal") {
      MediatorOverride override_spec{String("mediator_attribute"),
                                     RequiredNumber("mediator_value")};
      return BuildPathSpecific(c, NamedPredicate(model, "majority"),
                               NamedPredicate(model, "minority"), override_spec,
                               model, classifier);
    }
    if (property == "group") {
      const json& list = Require(doc_, "minorities", "");
      if (!list.is_array()) throw ConfigError("'minorities' must be a list");
      std::vector<Predicate> minorities;
      for (const json& item : list) {
        if (!item.is_string()) throw ConfigError("'minorities' must hold strings");
        minorities.push_back(
            PredicateFrom(model, item.get<std::string>(), "minorities"));
      }
      return BuildGroupParity(c, NamedPredicate(model, "majority"), minorities,
                              model, classifier);
    }
    if (property == "regression") {
      return BuildRegressionParity(c, NamedPredicate(model, "majority"),
                                   NamedPredicate(model, "minority"), model,
                                   classifier);
    }
    if (property == "individual") {
      return BuildIndividualFairness(c, Number("lambda", 1.0), model,
                                     classifier);
    }
    throw ConfigError("unknown property '" + property + "'");
  }

  FairnessProblem BuildExplicit() {
    const std::string spec_text =
        doc_.contains("spec") ? ReadFile(Resolve(String("spec")), "spec")
                              : String("spec_text");
    FairnessProblem problem{ParseSpec(spec_text), {},
                            Number("c", 0.0)};
    const json variables =
        doc_.contains("variables") ? doc_.at("variables") : json::object();
    if (!variables.is_object()) throw ConfigError("'variables' must be a table");
    static const std::set<std::string> kVariableKeys = {
        "model", "classifier", "condition", "mediator_attribute",
        "mediator_value", "pairwise", "lambda"};
    for (const std::string& name : FreeVariables(problem.spec)) {
      const json table =
          variables.contains(name) ? variables.at(name) : json::object();
      const std::string where = " for variable '" + name + "'";
      for (const auto& [key, value] : table.items()) {
        if (!kVariableKeys.count(key)) {
          throw ConfigError("unknown key '" + key + "'" + where);
        }
      }
      const PopulationModel& model =
          Model(table.contains("model") ? StringIn(table, "model", where)
                                        : String("model"));
      ClassifierPtr classifier = Classifier(
          table.contains("classifier") ? StringIn(table, "classifier", where)
                                       : String("classifier"));
      SampledVariable var{model, Predicate(), std::nullopt, classifier, false,
                          NumberIn(table, "lambda", 1.0)};
      if (table.contains("condition")) {
        var.condition =
            PredicateFrom(model, StringIn(table, "condition", where), name);
      }
      if (table.contains("mediator_attribute")) {
        var.mediator_override = MediatorOverride{
            StringIn(table, "mediator_attribute", where),
            NumberIn(table, "mediator_value", 0.0)};
      }
      if (table.contains("pairwise")) {
        if (!table.at("pairwise").is_boolean()) {
          throw ConfigError("'pairwise' must be true or false" + where);
        }
        var.pairwise = table.at("pairwise").get<bool>();
      }
      problem.bindings.emplace(name, std::move(var));
    }
    for (const auto& [name, value] : variables.items()) {
      if (!problem.bindings.count(name)) {
        throw ConfigError("variable '" + name +
                          "' does not occur in the specification");
      }
    }
    return problem;
  }

  json doc_;
  std::string base_dir_;
  std::map<std::string, PopulationModel> models_;
  std::map<std::string, ClassifierPtr> classifiers_;
};

}  // namespace

Bundle ParseBundle(std::string_view text, const std::string& base_dir,
                   const BundleOverrides& overrides) {
  return BundleBuilder(TomlReader(text).Parse(), base_dir, overrides).Build();
}

Bundle LoadBundle(const std::string& path, const BundleOverrides& overrides) {
  const std::string text = ReadFile(path, "bundle");
  const std::string base =
      std::filesystem::path(path).parent_path().string();
  try {
    return ParseBundle(text, base, overrides);
  } catch (const ParseError& e) {
    if (e.line() > 0) throw ParseError(path + ":" + e.what(), 0, 0);
    throw;
  }
}

}  // namespace fairverify
