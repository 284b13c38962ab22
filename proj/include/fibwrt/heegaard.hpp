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

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibwrt/conventions.hpp"

namespace fibwrt {

using Word = std::vector<int>;

/// Genus plus a signed Dehn-twist word over generators 1..3g-1.
struct Splitting {
  int genus = 1;
  Word word;
  bool operator==(const Splitting&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Move rejection. position is the 1-based move index inside a certificate, 0 for a lone move.
class Rejection : public std::runtime_error {
 public:
  Rejection(std::string reason_code, const std::string& detail, int pos = 0)
      : std::runtime_error(detail), reason(std::move(reason_code)), position(pos) {}
  std::string reason;
  int position;
};

inline Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

inline void check_word_range(const Word& w, int g) {
  for (int x : w)
    if (x == 0 || std::abs(x) > generator_count(g))
      throw std::out_of_range("generator index " + std::to_string(x) + " out of range for genus " +
                              std::to_string(g));
}

namespace detail {

inline bool is_space(unsigned char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n'; }

}  // namespace detail

/**
 * Grammar: <genus> '|' <signed ints separated by spaces>. A leading U+2212
 * minus sign is accepted as well as '-'.
 */
inline Splitting parse_splitting(const std::string& text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip = [&] {
    while (i < n && detail::is_space(text[i])) ++i;
  };
  auto read_int = [&](bool allow_sign) -> long {
    const std::size_t start = i;
    bool neg = false;
    if (allow_sign && i < n && text[i] == '-') {
      neg = true;
      ++i;
    } else if (allow_sign && text.compare(i, 3, "\xE2\x88\x92") == 0) {
      neg = true;
      i += 3;
    }
    if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected integer", start);
    long v = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000000000L) throw ParseError("integer too large", start);
      ++i;
    }
    if (i < n && !detail::is_space(text[i]) && text[i] != '|')
      throw ParseError("malformed token", i);
    return neg ? -v : v;
  };
  skip();
  const std::size_t gpos = i;
  const long g = read_int(false);
  if (g < 1) throw ParseError("genus must be positive", gpos);
  skip();
  if (i >= n || text[i] != '|') throw ParseError("expected '|'", i);
  ++i;
  Splitting s;
  s.genus = static_cast<int>(g);
  skip();
  while (i < n) {
    const std::size_t pos = i;
    const long v = read_int(true);
    if (v == 0 || std::abs(v) > generator_count(s.genus))
      throw ParseError("generator index " + std::to_string(v) + " out of range for genus " +
                           std::to_string(g),
                       pos);
    s.word.push_back(static_cast<int>(v));
    skip();
  }
  return s;
}

inline std::string serialize_splitting(const Splitting& s) {
  std::string out = std::to_string(s.genus) + " |";
  for (int x : s.word) out += " " + std::to_string(x);
  return out;
}

inline long input_length(const Splitting& s) { return s.genus + static_cast<long>(s.word.size()); }

enum class MoveKind { Stabilize, Destabilize, HandleSlide };

struct Move {
  MoveKind kind = MoveKind::Stabilize;
  Word y, z;  // slide payloads: signed 1-based indices into the declared handlebody generators
  bool operator==(const Move&) const = default;

  static Move stab() { return {MoveKind::Stabilize, {}, {}}; }
  static Move destab() { return {MoveKind::Destabilize, {}, {}}; }
  static Move slide(Word y, Word z) { return {MoveKind::HandleSlide, std::move(y), std::move(z)}; }
};

struct Certificate {
  std::vector<Move> moves;
  bool operator==(const Certificate&) const = default;
};

inline long move_length(const Move& m) {
  if (m.kind == MoveKind::HandleSlide) return static_cast<long>(m.y.size() + m.z.size());
  return 1;
}

inline long certificate_length(const Certificate& c) {
  long n = 0;
  for (const auto& m : c.moves) n += move_length(m);
  return n;
}

inline nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : c.moves) {
    switch (m.kind) {
      case MoveKind::Stabilize: arr.push_back({{"move", "stab"}}); break;
      case MoveKind::Destabilize: arr.push_back({{"move", "destab"}}); break;
      case MoveKind::HandleSlide: arr.push_back({{"move", "slide"}, {"y", m.y}, {"z", m.z}}); break;
    }
  }
  return arr;
}

inline std::string serialize_certificate(const Certificate& c) { return certificate_to_json(c).dump(); }

inline Certificate parse_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_array()) throw ParseError("certificate must be a JSON array", 0);
  Certificate c;
  std::size_t idx = 0;
  for (const auto& item : j) {
    ++idx;
    auto bad = [&](const std::string& why) {
      return ParseError("certificate entry " + std::to_string(idx) + ": " + why, idx);
    };
    if (!item.is_object() || !item.contains("move") || !item["move"].is_string())
      throw bad("missing \"move\"");
    const std::string kind = item["move"];
    Move m;
    if (kind == "stab" || kind == "destab") {
      if (item.size() != 1) throw bad("stabilization moves carry no payload");
      m.kind = kind == "stab" ? MoveKind::Stabilize : MoveKind::Destabilize;
    } else if (kind == "slide") {
      m.kind = MoveKind::HandleSlide;
      for (const char* key : {"y", "z"}) {
        if (!item.contains(key) || !item[key].is_array()) throw bad(std::string("slide needs array ") + key);
        for (const auto& v : item[key]) {
          if (!v.is_number_integer() || v.get<long>() == 0) throw bad("slide payload must be nonzero integers");
          (std::string(key) == "y" ? m.y : m.z).push_back(v.get<int>());
        }
      }
      if (item.size() != 3) throw bad("unexpected keys in slide");
    } else {
      throw bad("unknown move " + kind);
    }
    c.moves.push_back(std::move(m));
  }
  return c;
}

/**
 * Declared generating set of the handlebody subgroup, per genus.
 * Element j (1-based) of genus g is a Dehn-twist word; the meridian twists
 * a_1..a_g come first, followed by any registered extras.
 */
class HandlebodyGenerators {
 public:
  explicit HandlebodyGenerators(Ordering ord = Ordering::Interleaved) : ord_(ord) {}

  void add(int genus, Word w) {
    check_word_range(w, genus);
    extras_[genus].push_back(std::move(w));
  }

  std::vector<Word> elements(int g) const {
    std::vector<Word> out;
    for (int h = 1; h <= g; ++h) out.push_back({generator_index({GeneratorKind::A, h}, g, ord_)});
    auto it = extras_.find(g);
    if (it != extras_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    return out;
  }

  Word expand(const Word& payload, int g) const {
    const auto els = elements(g);
    Word out;
    for (int x : payload) {
      if (x == 0 || std::abs(x) > static_cast<int>(els.size()))
        throw Rejection("slide-index-out-of-range",
                        "slide payload index " + std::to_string(x) + " outside the " +
                            std::to_string(els.size()) + " declared handlebody generators at genus " +
                            std::to_string(g));
      const Word& e = els[std::abs(x) - 1];
      const Word piece = x > 0 ? e : inverse_word(e);
      out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
  }

  Ordering ordering() const { return ord_; }

 private:
  Ordering ord_;
  std::map<int, std::vector<Word>> extras_;
};

/// Suffix indices at genus g for the configured suffix on handle g.
inline Word suffix_word(int g, const Conventions& conv) {
  Word w;
  for (const auto& l : conv.suffix) w.push_back(l.sign * generator_index({l.kind, g}, g, conv.ordering));
  return w;
}

inline Splitting apply_stabilize(const Splitting& s, const Conventions& conv) {
  Splitting r;
  r.genus = s.genus + 1;
  r.word = s.word;  // tau fixes every old index
  const Word suf = suffix_word(r.genus, conv);
  r.word.insert(r.word.end(), suf.begin(), suf.end());
  return r;
}

inline Splitting apply_destabilize(const Splitting& s, const Conventions& conv) {
  if (s.genus <= 1) throw Rejection("genus-one", "cannot destabilize a genus-one splitting");
  const Word suf = suffix_word(s.genus, conv);
  if (s.word.size() < suf.size() || !std::equal(suf.begin(), suf.end(), s.word.end() - suf.size()))
    throw Rejection("suffix-absent", "word does not end with the stabilization suffix");
  std::set<int> reserved;
  for (int x : suf) reserved.insert(std::abs(x));
  const int limit = generator_count(s.genus - 1);
  Splitting r;
  r.genus = s.genus - 1;
  r.word.assign(s.word.begin(), s.word.end() - suf.size());
  for (std::size_t i = 0; i < r.word.size(); ++i) {
    const int a = std::abs(r.word[i]);
    if (reserved.count(a))
      throw Rejection("generator-reused", "suffix generator " + std::to_string(a) +
                                              " also appears at word position " + std::to_string(i + 1));
    if (a > limit)
      throw Rejection("generator-reused", "generator " + std::to_string(a) +
                                              " touches the removed handle at word position " +
                                              std::to_string(i + 1));
  }
  return r;
}

/// Free reduction: cancel adjacent inverse pairs until none remain.
inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

/// (g, x) -> (g, y x z), freely reduced.
inline Splitting apply_handle_slide(const Splitting& s, const Move& m, const HandlebodyGenerators& gens) {
  if (m.kind != MoveKind::HandleSlide) throw Rejection("not-a-slide", "move is not a handle slide");
  Word w = gens.expand(m.y, s.genus);
  w.insert(w.end(), s.word.begin(), s.word.end());
  const Word z = gens.expand(m.z, s.genus);
  w.insert(w.end(), z.begin(), z.end());
  return {s.genus, free_reduce(w)};
}

inline Splitting apply_move(const Splitting& s, const Move& m, const HandlebodyGenerators& gens,
                            const Conventions& conv) {
  switch (m.kind) {
    case MoveKind::Stabilize: return apply_stabilize(s, conv);
    case MoveKind::Destabilize: return apply_destabilize(s, conv);
    case MoveKind::HandleSlide: return apply_handle_slide(s, m, gens);
  }
  return s;
}

/// Folds the moves left to right; a failure carries the 1-based move position.
inline Splitting apply_certificate(const Splitting& s, const Certificate& c, const HandlebodyGenerators& gens,
                                   const Conventions& conv) {
  Splitting cur = s;
  for (std::size_t i = 0; i < c.moves.size(); ++i) {
    try {
      cur = apply_move(cur, c.moves[i], gens, conv);
    } catch (const Rejection& r) {
      throw Rejection(r.reason, r.what(), static_cast<int>(i + 1));
    }
  }
  return cur;
}

}  // namespace fibwrt
