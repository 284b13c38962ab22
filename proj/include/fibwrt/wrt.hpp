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
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fibwrt/heegaard.hpp"
#include "fibwrt/rep.hpp"

namespace fibwrt {

struct WrtValue {
  DScaledValue value;
  int genus = 1;
};

/// D^{g-1} <0| rho(word) |0>.
inline WrtValue wrt_eval(const Representation& rep, const Splitting& s) {
  const GenusRep& r = rep.at(s.genus);
  const auto v = r.apply_word(r.vacuum(), s.word);
  return {DScaledValue(v[0], s.genus - 1).canonical(), s.genus};
}

inline BigComplex wrt_float(const Representation& rep, const Splitting& s, mpfr_prec_t bits = 53) {
  return wrt_eval(rep, s).value.to_complex(bits);
}

inline std::string format_complex(std::complex<double> z, int digits = 12) {
  if (std::abs(z.real()) < 1e-300) z.real(0.0);
  if (std::abs(z.imag()) < 1e-300) z.imag(0.0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
  return buf;
}

inline int render_digits(mpfr_prec_t bits) {
  return std::max(6, static_cast<int>(static_cast<double>(bits) * 0.30103));
}

inline std::string format_complex(const std::string& re_in, const std::string& im_in) {
  std::string re = re_in == "-0" ? "0" : re_in, im = im_in == "-0" ? "0" : im_in;
  if (im.front() != '-') im = "+" + im;
  return re + im + "i";
}

/// "a+bi" with about bits * log10(2) significant digits.
inline std::string format_complex(const BigComplex& z, mpfr_prec_t bits) {
  return format_complex(z.re.to_string(render_digits(bits)), z.im.to_string(render_digits(bits)));
}

/// Real and imaginary parts computed with guard bits; parts that vanish exactly are "0".
inline std::pair<std::string, std::string> float_parts(const DScaledValue& v, mpfr_prec_t bits) {
  const BigComplex z = v.to_complex(bits + 32);
  const DScaledValue c = v.conj();
  std::string re = v == -c ? "0" : z.re.to_string(render_digits(bits));
  std::string im = v == c ? "0" : z.im.to_string(render_digits(bits));
  return {re == "-0" ? "0" : re, im == "-0" ? "0" : im};
}

inline std::string render_float(const DScaledValue& v, mpfr_prec_t bits) {
  const auto [re, im] = float_parts(v, bits);
  return format_complex(re, im);
}

/// Exact coordinates, folded into the field when D lies in it.
inline std::string exact_text(const DScaledValue& v) {
  if (const auto f = v.as_field()) return f->to_string();
  return v.canonical().to_string();
}

inline std::string render_wrt(const WrtValue& w, mpfr_prec_t bits = 53) {
  return "WRT = " + exact_text(w.value) + " \xE2\x89\x88 " + render_float(w.value, bits) + " (genus " +
         std::to_string(w.genus) + ")";
}

enum class InvarianceKind { Exact, UpToScalar, Unequal };

inline std::string to_string(InvarianceKind k) {
  switch (k) {
    case InvarianceKind::Exact: return "exact";
    case InvarianceKind::UpToScalar: return "up-to-scalar";
    case InvarianceKind::Unequal: return "unequal";
  }
  return "?";
}

struct InvarianceReport {
  WrtValue before;
  WrtValue after;
  Splitting final_splitting;
  InvarianceKind kind = InvarianceKind::Exact;
  std::optional<DScaledValue> kappa;  // after / before when the moduli agree
};

inline InvarianceReport compare_values(const WrtValue& before, const WrtValue& after) {
  InvarianceReport r;
  r.before = before;
  r.after = after;
  if (before.value == after.value) {
    r.kind = InvarianceKind::Exact;
    if (!before.value.is_zero()) r.kappa = DScaledValue(FieldElement(1));
    return r;
  }
  const DScaledValue n1 = before.value * before.value.conj();
  const DScaledValue n2 = after.value * after.value.conj();
  if (n1 == n2 && !before.value.is_zero()) {
    r.kind = InvarianceKind::UpToScalar;
    r.kappa = after.value * before.value.inverse();
  } else {
    r.kind = InvarianceKind::Unequal;
  }
  return r;
}

/// Applies c to s (a Rejection propagates) and compares the invariant before and after.
inline InvarianceReport invariance_report(const Representation& rep, const Splitting& s, const Certificate& c,
                                          const HandlebodyGenerators& gens) {
  const Splitting t = apply_certificate(s, c, gens, rep.conventions());
  InvarianceReport r = compare_values(wrt_eval(rep, s), wrt_eval(rep, t));
  r.final_splitting = t;
  return r;
}

/// Uniform random freely reduced word.
inline Word random_reduced_word(std::mt19937_64& rng, int g, int len) {
  std::uniform_int_distribution<int> idx(1, generator_count(g)), sign(0, 1);
  Word w;
  while (static_cast<int>(w.size()) < len) {
    const int x = sign(rng) ? idx(rng) : -idx(rng);
    if (!w.empty() && w.back() == -x) continue;
    w.push_back(x);
  }
  return w;
}

/**
 * Random certificate of stabilizations and meridian slides, valid for s.
 * Destabilizations are only emitted right after a matching stabilization.
 */
inline Certificate random_certificate(std::mt19937_64& rng, const Splitting& s, const HandlebodyGenerators& gens,
                                      const Conventions& conv, int moves, int max_genus) {
  Certificate c;
  Splitting cur = s;
  std::uniform_int_distribution<int> kind(0, 2), plen(0, 2);
  for (int m = 0; m < moves; ++m) {
    const int k = kind(rng);
    if (k == 0 && cur.genus < max_genus) {
      c.moves.push_back(Move::stab());
    } else if (k == 1 && cur.genus > 1) {
      try {
        apply_destabilize(cur, conv);
        c.moves.push_back(Move::destab());
      } catch (const Rejection&) {
        c.moves.push_back(Move::stab());
        if (cur.genus >= max_genus) c.moves.back() = Move::slide({1}, {});
      }
    } else {
      const int ne = static_cast<int>(gens.elements(cur.genus).size());
      std::uniform_int_distribution<int> e(1, ne), sg(0, 1);
      Word y, z;
      for (int i = plen(rng); i > 0; --i) y.push_back(sg(rng) ? e(rng) : -e(rng));
      for (int i = plen(rng); i > 0; --i) z.push_back(sg(rng) ? e(rng) : -e(rng));
      c.moves.push_back(Move::slide(y, z));
    }
    cur = apply_move(cur, c.moves.back(), gens, conv);
  }
  return c;
}

/// Outcome of running the invariance suite on one convention set.
struct ConventionTrial {
  Conventions conventions;
  bool passed = false;
  bool kappa_constant = false;
  std::optional<DScaledValue> kappa;
  std::string failure;
};

struct SearchOptions {
  int cases = 24;
  int max_genus = 2;
  int max_word = 6;
  std::uint64_t seed = 2026;
};

/**
 * Runs one convention set through: dataset unitarity, generator unitarity,
 * exact slide invariance, and stabilization with a constant scalar kappa
 * that must equal 1.
 */
inline ConventionTrial run_convention_trial(const Conventions& conv, const SearchOptions& opt = {}) {
  ConventionTrial t;
  t.conventions = conv;
  try {
    const CategoryData cat = dataset_by_name(conv.dataset);
    const UnitarityReport ur = check_unitary(cat);
    if (!ur.ok()) {
      t.failure = "dataset: " + ur.violations.front();
      return t;
    }
    const Representation rep(cat, conv);
    for (int g = 1; g <= 2; ++g)
      for (int i = 1; i <= generator_count(g); ++i) {
        const GenusRep& r = rep.at(g);
        const auto& m = r.generator(i).matrix;
        for (std::size_t j = 0; j < r.dim(); ++j) {
          std::vector<FieldElement> e(r.dim());
          e[j] = FieldElement(1);
          const auto back = r.generator(i).inverse.apply(m.apply(e));
          if (back != e) {
            t.failure = "generator " + std::to_string(i) + " at genus " + std::to_string(g) + " is not unitary";
            return t;
          }
        }
      }
    std::mt19937_64 rng(opt.seed);
    HandlebodyGenerators gens(conv.ordering);
    std::uniform_int_distribution<int> gd(1, opt.max_genus), ld(0, opt.max_word);
    std::optional<DScaledValue> kappa;
    bool constant = true;
    for (int k = 0; k < opt.cases; ++k) {
      const int g = gd(rng);
      const Splitting s{g, random_reduced_word(rng, g, ld(rng))};
      const InvarianceReport slide =
          invariance_report(rep, s, Certificate{{Move::slide({1}, {g})}}, gens);
      if (slide.kind != InvarianceKind::Exact) {
        t.failure = "meridian slide changed the value of " + serialize_splitting(s);
        return t;
      }
      const InvarianceReport st = invariance_report(rep, s, Certificate{{Move::stab()}}, gens);
      if (st.kind == InvarianceKind::Unequal) {
        t.failure = "stabilization changed |WRT| of " + serialize_splitting(s);
        return t;
      }
      if (!st.kappa) continue;  // vanishing value carries no scalar information
      if (!kappa) kappa = st.kappa;
      else if (*kappa != *st.kappa) constant = false;
    }
    t.kappa_constant = constant;
    t.kappa = kappa;
    if (!constant) {
      t.failure = "stabilization scalar varies with the input";
      return t;
    }
    if (!kappa || *kappa != DScaledValue(FieldElement(1))) {
      t.failure = "stabilization scalar is constant but not 1";
      return t;
    }
    t.passed = true;
  } catch (const std::exception& e) {
    t.failure = e.what();
  }
  return t;
}

/// All candidate convention sets in search order.
inline std::vector<Conventions> candidate_conventions(const Conventions& base = {}) {
  std::vector<Conventions> out;
  const std::vector<std::vector<SuffixLetter>> suffixes = {
      {{GeneratorKind::B, 1}, {GeneratorKind::A, 1}, {GeneratorKind::B, -1}},
      {{GeneratorKind::A, 1}, {GeneratorKind::B, 1}, {GeneratorKind::A, -1}}};
  for (const auto& ds : dataset_names())
    for (Ordering ord : {Ordering::Interleaved, Ordering::Grouped})
      for (const auto& suf : suffixes)
        for (BNormalization bn : {BNormalization::Raw, BNormalization::AnomalyFree}) {
          Conventions c = base;
          c.dataset = ds;
          c.ordering = ord;
          c.suffix = suf;
          c.b_normalization = bn;
          out.push_back(c);
        }
  return out;
}

struct SearchResult {
  std::vector<ConventionTrial> trials;
  std::optional<Conventions> selected;
  std::optional<DScaledValue> kappa;
};

/// First candidate passing the suite; trials after the first success are not run.
inline SearchResult search_conventions(const SearchOptions& opt = {}, const Conventions& base = {}) {
  SearchResult res;
  for (const auto& c : candidate_conventions(base)) {
    res.trials.push_back(run_convention_trial(c, opt));
    if (res.trials.back().passed) {
      res.selected = c;
      res.kappa = res.trials.back().kappa;
      break;
    }
  }
  return res;
}

}  // namespace fibwrt
