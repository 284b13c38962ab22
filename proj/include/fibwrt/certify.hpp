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

#include <gmpxx.h>

#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fibwrt/wrt.hpp"

namespace fibwrt {

/// Genus bound g' < log_base q(n), checked exactly as base^g' < q(n).
struct GenusBoundPolicy {
  std::vector<mpz_class> q;  // coefficients, constant term first
  int log_base = 2;

  GenusBoundPolicy() : q{0, 0, 0, 1} {}
  explicit GenusBoundPolicy(std::vector<mpz_class> coeffs, int base = 2) : q(std::move(coeffs)), log_base(base) {
    validate();
  }

  void validate() const {
    if (log_base < 2) throw std::invalid_argument("log base must be at least 2");
    bool any = false;
    for (const auto& c : q) {
      if (c < 0) throw std::invalid_argument("bound polynomial coefficients must be nonnegative");
      if (c > 0) any = true;
    }
    if (!any) throw std::invalid_argument("bound polynomial is identically zero");
  }

  mpz_class eval(long n) const {
    mpz_class acc = 0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * n + *it;
    return acc;
  }

  bool allows(int genus, long n) const {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(log_base), static_cast<unsigned long>(genus));
    return p < eval(n);
  }

  /// Dense budget for stage 2: q(n)^2, clipped to the configured cap.
  long dimension_cap(long n, long config_cap) const {
    const mpz_class v = eval(n);
    const mpz_class sq = v * v;
    if (sq.fits_slong_p() && sq.get_si() < config_cap) return sq.get_si();
    return config_cap;
  }

  /// "c0,c1,..." with c0 the constant term.
  static GenusBoundPolicy parse(const std::string& text, int base = 2) {
    std::vector<mpz_class> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) throw std::invalid_argument("empty coefficient in \"" + text + "\"");
      mpz_class c;
      if (c.set_str(item.substr(b, e - b + 1), 10) != 0)
        throw std::invalid_argument("bad coefficient \"" + item + "\"");
      coeffs.push_back(c);
    }
    return GenusBoundPolicy(std::move(coeffs), base);
  }
};

struct VerifierOutcome {
  enum class Kind { Value, Reject, Error };
  Kind kind = Kind::Error;
  WrtValue value;
  Splitting final_splitting;
  int stage = 0;
  std::string reason;
  int position = 0;
  std::string message;

  int exit_code() const { return kind == Kind::Value ? 0 : kind == Kind::Reject ? 1 : 2; }

  std::string render(mpfr_prec_t bits = 53) const {
    switch (kind) {
      case Kind::Value:
        return "VALUE " + exact_text(value.value) + " \xE2\x89\x88 " + render_float(value.value, bits);
      case Kind::Reject:
        return "REJECT " + std::to_string(stage) + " " + reason + " " + std::to_string(position);
      case Kind::Error:
        return "ERROR " + message;
    }
    return {};
  }
};

/**
 * Stage 1 replays the certificate and checks the final genus against the
 * policy; stage 2 reads the vacuum entry off the dense matrix of the final
 * word. A genus-bound reject reports position 0 (the whole certificate).
 */
inline VerifierOutcome verify_and_eval(const Representation& rep, const Splitting& s, const Certificate& c,
                                       const GenusBoundPolicy& policy, const HandlebodyGenerators& gens) {
  VerifierOutcome out;
  const long n = input_length(s);
  Splitting fin;
  try {
    fin = apply_certificate(s, c, gens, rep.conventions());
  } catch (const Rejection& r) {
    out.kind = VerifierOutcome::Kind::Reject;
    out.stage = 1;
    out.reason = r.reason;
    out.position = r.position;
    out.message = r.what();
    return out;
  }
  out.final_splitting = fin;
  if (!policy.allows(fin.genus, n)) {
    out.kind = VerifierOutcome::Kind::Reject;
    out.stage = 1;
    out.reason = "genus-bound";
    out.position = 0;
    out.message = "final genus " + std::to_string(fin.genus) + " is not below log q(" + std::to_string(n) + ")";
    return out;
  }
  try {
    const long cap = policy.dimension_cap(n, rep.conventions().max_dense_dim);
    const auto m = rep.full_matrix(fin.genus, fin.word, cap);
    out.value = {DScaledValue(m[0][0], fin.genus - 1).canonical(), fin.genus};
    out.kind = VerifierOutcome::Kind::Value;
    out.stage = 2;
  } catch (const std::exception& e) {
    out.kind = VerifierOutcome::Kind::Error;
    out.stage = 2;
    out.message = e.what();
  }
  return out;
}

inline Move inverse_move(const Move& m) {
  switch (m.kind) {
    case MoveKind::Stabilize: return Move::destab();
    case MoveKind::Destabilize: return Move::stab();
    case MoveKind::HandleSlide: return Move::slide(inverse_word(m.y), inverse_word(m.z));
  }
  return m;
}

/**
 * Thickens a splitting with a freely reduced word by random stabilizations
 * and meridian slides. Returns the thick splitting and a certificate taking
 * it back to s.
 */
inline std::pair<Splitting, Certificate> thicken(std::mt19937_64& rng, const Splitting& s, int moves,
                                                 const HandlebodyGenerators& gens, const Conventions& conv,
                                                 int max_genus = 4) {
  Splitting cur{s.genus, free_reduce(s.word)};
  std::vector<Move> done;
  std::uniform_int_distribution<int> coin(0, 2), plen(0, 2), sg(0, 1);
  for (int i = 0; i < moves; ++i) {
    Move m;
    if (coin(rng) == 0 && cur.genus < max_genus) {
      m = Move::stab();
    } else {
      const int ne = static_cast<int>(gens.elements(cur.genus).size());
      std::uniform_int_distribution<int> e(1, ne);
      for (int k = plen(rng); k > 0; --k) m.y.push_back(sg(rng) ? e(rng) : -e(rng));
      for (int k = plen(rng); k > 0; --k) m.z.push_back(sg(rng) ? e(rng) : -e(rng));
      m = Move::slide(free_reduce(m.y), free_reduce(m.z));
    }
    cur = apply_move(cur, m, gens, conv);
    done.push_back(m);
  }
  Certificate back;
  for (auto it = done.rbegin(); it != done.rend(); ++it) back.moves.push_back(inverse_move(*it));
  return {cur, back};
}

}  // namespace fibwrt
