// Copyright 2026 The fibwrt Authors
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

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fibwrt {

enum class GeneratorKind { A, B, C };
enum class Ordering { Interleaved, Grouped };
enum class BNormalization { Raw, AnomalyFree };

struct SuffixLetter {
  GeneratorKind kind;
  int sign;  // +1 or -1
  bool operator==(const SuffixLetter&) const = default;
};

/// Handle-local generator: kind plus 1-based handle (for C: the bridge index).
struct GeneratorId {
  GeneratorKind kind;
  int handle;
  bool operator==(const GeneratorId&) const = default;
};

/**
 * Every convention choice the invariant depends on, plus resource caps.
 * Stored as one versioned JSON document.
 */
struct Conventions {
  static constexpr int kVersion = 1;

  std::string dataset = "standard";
  Ordering ordering = Ordering::Interleaved;
  std::vector<SuffixLetter> suffix = {
      {GeneratorKind::A, 1}, {GeneratorKind::B, 1}, {GeneratorKind::A, -1}};
  BNormalization b_normalization = BNormalization::AnomalyFree;
  int log_base = 2;
  long max_dense_dim = 2000;  // full_matrix budget
  int wire_cap = 20;
  int countsat_cap = 24;
  int net_length = 5;  // genus-2 net depth for the compile pipeline

  bool operator==(const Conventions&) const = default;
};

inline std::string to_string(Ordering o) {
  return o == Ordering::Interleaved ? "interleaved" : "grouped";
}
inline std::string to_string(BNormalization b) {
  return b == BNormalization::Raw ? "raw" : "anomaly-free";
}
inline std::string to_string(const SuffixLetter& l) {
  std::string s = l.kind == GeneratorKind::A ? "a" : l.kind == GeneratorKind::B ? "b" : "c";
  return l.sign < 0 ? s + "^-1" : s;
}
inline std::string suffix_to_string(const std::vector<SuffixLetter>& s) {
  std::string out;
  for (const auto& l : s) {
    if (!out.empty()) out += ' ';
    out += to_string(l);
  }
  return out;
}
inline std::vector<SuffixLetter> parse_suffix(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<SuffixLetter> out;
  while (is >> tok) {
    SuffixLetter l{GeneratorKind::A, 1};
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      l.sign = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok == "a") l.kind = GeneratorKind::A;
    else if (tok == "b") l.kind = GeneratorKind::B;
    else throw std::invalid_argument("suffix letters must be a or b: " + tok);
    out.push_back(l);
  }
  if (out.empty()) throw std::invalid_argument("empty stabilization suffix");
  return out;
}

inline nlohmann::json conventions_to_json(const Conventions& c) {
  return {{"version", Conventions::kVersion},
          {"dataset", c.dataset},
          {"ordering", to_string(c.ordering)},
          {"suffix", suffix_to_string(c.suffix)},
          {"b_normalization", to_string(c.b_normalization)},
          {"log_base", c.log_base},
          {"max_dense_dim", c.max_dense_dim},
          {"wire_cap", c.wire_cap},
          {"countsat_cap", c.countsat_cap},
          {"net_length", c.net_length}};
}

inline Conventions conventions_from_json(const nlohmann::json& j) {
  if (j.value("version", 0) != Conventions::kVersion)
    throw std::invalid_argument("unsupported config version");
  Conventions c;
  c.dataset = j.value("dataset", c.dataset);
  const std::string ord = j.value("ordering", to_string(c.ordering));
  if (ord == "interleaved") c.ordering = Ordering::Interleaved;
  else if (ord == "grouped") c.ordering = Ordering::Grouped;
  else throw std::invalid_argument("unknown ordering " + ord);
  if (j.contains("suffix")) c.suffix = parse_suffix(j.at("suffix").get<std::string>());
  const std::string bn = j.value("b_normalization", to_string(c.b_normalization));
  if (bn == "raw") c.b_normalization = BNormalization::Raw;
  else if (bn == "anomaly-free") c.b_normalization = BNormalization::AnomalyFree;
  else throw std::invalid_argument("unknown b_normalization " + bn);
  c.log_base = j.value("log_base", c.log_base);
  if (c.log_base < 2) throw std::invalid_argument("log_base must be at least 2");
  c.max_dense_dim = j.value("max_dense_dim", c.max_dense_dim);
  c.wire_cap = j.value("wire_cap", c.wire_cap);
  c.countsat_cap = j.value("countsat_cap", c.countsat_cap);
  c.net_length = j.value("net_length", c.net_length);
  return c;
}

inline Conventions load_conventions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return conventions_from_json(nlohmann::json::parse(in));
}

inline void save_conventions(const Conventions& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config " + path);
  out << conventions_to_json(c).dump(2) << "\n";
}

/// Number of Dehn-twist generators at genus g.
inline int generator_count(int g) { return 3 * g - 1; }

/// 1-based generator index of a handle-local generator.
inline int generator_index(GeneratorId id, int g, Ordering ord) {
  const int h = id.handle;
  if (ord == Ordering::Interleaved) {
    switch (id.kind) {
      case GeneratorKind::A: return 3 * (h - 1) + 1;
      case GeneratorKind::B: return 3 * (h - 1) + 2;
      case GeneratorKind::C: return 3 * (h - 1) + 3;
    }
  }
  switch (id.kind) {
    case GeneratorKind::A: return h;
    case GeneratorKind::B: return g + h;
    case GeneratorKind::C: return 2 * g + h;
  }
  return 0;
}

inline GeneratorId generator_at(int index, int g, Ordering ord) {
  if (index < 1 || index > generator_count(g))
    throw std::out_of_range("generator index " + std::to_string(index) + " out of range for genus " +
                            std::to_string(g));
  if (ord == Ordering::Interleaved) {
    const int h = (index - 1) / 3 + 1, r = (index - 1) % 3;
    return {r == 0 ? GeneratorKind::A : r == 1 ? GeneratorKind::B : GeneratorKind::C, h};
  }
  if (index <= g) return {GeneratorKind::A, index};
  if (index <= 2 * g) return {GeneratorKind::B, index - g};
  return {GeneratorKind::C, index - 2 * g};
}

}  // namespace fibwrt
