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

#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibwrt/exactnum.hpp"

namespace fibwrt {

using Label = int;
using Triple = std::array<Label, 3>;
using Sextuple = std::array<Label, 6>;

/**
 * Multiplicity-free fusion category data over the field.
 *
 * f holds F^{abc}_{d;ef} under the key (a, b, c, d, e, f); the four triples
 * (a,b,e), (e,c,d), (b,c,f), (a,f,d) must be admissible for a nonzero entry.
 * r holds the phase of R_l^{jk} under the key (l, j, k).
 */
struct CategoryData {
  std::string name;
  int rank = 0;
  std::vector<Label> dual;
  std::vector<FieldElement> qdim;
  std::set<Triple> fusion;
  std::map<Triple, FieldElement> r;
  std::map<Triple, std::string> r_exponent;  // documentation only
  std::map<Sextuple, FieldElement> f;

  bool fusion_ok(Label a, Label b, Label c) const { return fusion.count({a, b, c}) > 0; }

  FieldElement f_at(Label a, Label b, Label c, Label d, Label e, Label ff) const {
    auto it = f.find({a, b, c, d, e, ff});
    return it == f.end() ? FieldElement() : it->second;
  }
  FieldElement r_at(Label l, Label j, Label k) const {
    auto it = r.find({l, j, k});
    return it == r.end() ? FieldElement() : it->second;
  }
  /// Twist phase of a label: the phase of R_0^{a a*}.
  FieldElement theta(Label a) const { return r_at(0, a, dual[a]); }

  bool f_block_admissible(Label a, Label b, Label c, Label d, Label e, Label ff) const {
    return fusion_ok(a, b, e) && fusion_ok(e, c, d) && fusion_ok(b, c, ff) && fusion_ok(a, ff, d);
  }
};

namespace detail {

inline FieldElement inv_phi() { return FieldElement::phi() - FieldElement(1); }
inline FieldElement inv_sqrt_phi() { return FieldElement::sqrt_phi() * inv_phi(); }

// Shared Fibonacci skeleton with the given R_0^{11} and R_1^{11} phases.
inline CategoryData fibonacci_with(const std::string& name, const FieldElement& r0,
                                   const FieldElement& r1, const std::string& r0_doc,
                                   const std::string& r1_doc) {
  CategoryData c;
  c.name = name;
  c.rank = 2;
  c.dual = {0, 1};
  c.qdim = {FieldElement(1), FieldElement::phi()};
  for (Label a = 0; a < 2; ++a)
    for (Label b = 0; b < 2; ++b)
      for (Label x = 0; x < 2; ++x)
        if (a + b + x != 1) c.fusion.insert({a, b, x});
  for (const Triple& t : c.fusion) {
    const auto [l, j, k] = t;
    if (j == 1 && k == 1) {
      c.r[t] = l == 0 ? r0 : r1;
      c.r_exponent[t] = l == 0 ? r0_doc : r1_doc;
    } else {
      c.r[t] = FieldElement(1);
      c.r_exponent[t] = "0";
    }
  }
  const FieldElement m[2][2] = {{inv_phi(), inv_sqrt_phi()}, {inv_sqrt_phi(), -inv_phi()}};
  for (Label a = 0; a < 2; ++a)
    for (Label b = 0; b < 2; ++b)
      for (Label cc = 0; cc < 2; ++cc)
        for (Label d = 0; d < 2; ++d)
          for (Label e = 0; e < 2; ++e)
            for (Label ff = 0; ff < 2; ++ff) {
              if (!c.f_block_admissible(a, b, cc, d, e, ff)) continue;
              if (a == 1 && b == 1 && cc == 1 && d == 1)
                c.f[{a, b, cc, d, e, ff}] = m[e][ff];
              else
                c.f[{a, b, cc, d, e, ff}] = FieldElement(1);
            }
  return c;
}

}  // namespace detail

/// Fibonacci data with the twist phase exactly as printed: R_0^{11} = e^{3 pi i/5}, R_1^{11} = 1.
inline CategoryData verbatim_fibonacci() {
  return detail::fibonacci_with("verbatim", FieldElement::zeta(6), FieldElement(1),
                                "3*pi*i/5", "0");
}

/// Textbook Fibonacci braiding: R_0^{11} = e^{-4 pi i/5}, R_1^{11} = e^{3 pi i/5}.
inline CategoryData standard_fibonacci() {
  return detail::fibonacci_with("standard", FieldElement::zeta(-8), FieldElement::zeta(6),
                                "-4*pi*i/5", "3*pi*i/5");
}

/// Complex conjugate of the standard data.
inline CategoryData standard_conjugate() {
  return detail::fibonacci_with("standard-conjugate", FieldElement::zeta(8),
                                FieldElement::zeta(-6), "4*pi*i/5", "-3*pi*i/5");
}

inline CategoryData fibonacci() { return verbatim_fibonacci(); }

inline std::vector<std::string> dataset_names() {
  return {"verbatim", "standard", "standard-conjugate"};
}

inline CategoryData dataset_by_name(const std::string& name) {
  if (name == "verbatim") return verbatim_fibonacci();
  if (name == "standard") return standard_fibonacci();
  if (name == "standard-conjugate") return standard_conjugate();
  throw std::invalid_argument("unknown dataset: " + name);
}

/**
 * Quantities derived from the category data.
 *
 * s holds D * S^i_{jk} keyed by (i, j, k); s_tensor() returns the same value
 * as a DScaledValue with exponent -1.
 */
struct DerivedData {
  DScaledValue total_d = DScaledValue::d();
  FieldElement d_squared;
  std::map<Triple, FieldElement> s;

  FieldElement ds(Label i, Label j, Label k) const {
    auto it = s.find({i, j, k});
    return it == s.end() ? FieldElement() : it->second;
  }
  DScaledValue s_tensor(Label i, Label j, Label k) const { return DScaledValue(ds(i, j, k), -1); }
};

inline FieldElement sqrt_or_throw(const FieldElement& x) {
  auto r = sqrt_in_field(x);
  if (!r) throw std::domain_error("square root not in field: " + x.to_string());
  // Prefer the root that is positive real or in the upper half plane.
  const auto z = r->to_complex_double();
  if (z.real() < -1e-12 || (std::abs(z.real()) <= 1e-12 && z.imag() < 0)) return -*r;
  return *r;
}

inline DerivedData compute_derived(const CategoryData& c) {
  DerivedData out;
  out.d_squared = FieldElement();
  for (const auto& d : c.qdim) out.d_squared += d * d;
  std::vector<FieldElement> inv_sqrt_d;
  for (const auto& d : c.qdim) inv_sqrt_d.push_back(sqrt_or_throw(d).inverse());
  for (Label i = 0; i < c.rank; ++i)
    for (Label j = 0; j < c.rank; ++j)
      for (Label k = 0; k < c.rank; ++k) {
        FieldElement acc;
        for (Label l = 0; l < c.rank; ++l) {
          if (!c.fusion_ok(j, k, l)) continue;
          const FieldElement fv = c.f_at(i, j, l, k, j, k);
          if (fv.is_zero()) continue;
          acc += c.qdim[l] * inv_sqrt_d[i] * fv * c.r_at(l, k, j) * c.r_at(l, j, k);
        }
        if (!acc.is_zero()) out.s[{i, j, k}] = acc;
      }
  return out;
}

struct UnitarityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Exact check of every F block and of the genus-1 S matrix.
inline UnitarityReport check_unitary(const CategoryData& c) {
  UnitarityReport rep;
  for (Label a = 0; a < c.rank; ++a)
    for (Label b = 0; b < c.rank; ++b)
      for (Label cc = 0; cc < c.rank; ++cc)
        for (Label d = 0; d < c.rank; ++d) {
          std::vector<Label> es, fs;
          for (Label x = 0; x < c.rank; ++x) {
            if (c.fusion_ok(a, b, x) && c.fusion_ok(x, cc, d)) es.push_back(x);
            if (c.fusion_ok(b, cc, x) && c.fusion_ok(a, x, d)) fs.push_back(x);
          }
          if (es.empty() && fs.empty()) continue;
          std::ostringstream where;
          where << "F block (" << a << "," << b << "," << cc << "," << d << ")";
          if (es.size() != fs.size()) {
            rep.violations.push_back(where.str() + " is not square");
            continue;
          }
          bool good = true;
          for (Label e1 : es)
            for (Label e2 : es) {
              FieldElement acc;
              for (Label ff : fs) acc += c.f_at(a, b, cc, d, e1, ff) * c.f_at(a, b, cc, d, e2, ff).conj();
              if (acc != FieldElement(e1 == e2 ? 1 : 0)) good = false;
            }
          if (!good) rep.violations.push_back(where.str() + " is not unitary");
        }
  const DerivedData dd = compute_derived(c);
  for (Label j1 = 0; j1 < c.rank; ++j1)
    for (Label j2 = 0; j2 < c.rank; ++j2) {
      FieldElement acc;
      for (Label k = 0; k < c.rank; ++k) acc += dd.ds(0, j1, k) * dd.ds(0, j2, k).conj();
      const FieldElement want = j1 == j2 ? dd.d_squared : FieldElement();
      if (acc != want) {
        std::ostringstream os;
        os << "genus-1 S matrix rows " << j1 << "," << j2 << " are not orthonormal";
        rep.violations.push_back(os.str());
      }
    }
  return rep;
}

/// Key-value text form of a dataset.
inline std::string export_dataset(const CategoryData& c) {
  std::ostringstream os;
  os << "fibwrt-category 1\n";
  os << "name " << c.name << "\n";
  os << "labels " << c.rank << "\n";
  os << "dual";
  for (Label d : c.dual) os << ' ' << d;
  os << "\n";
  for (Label a = 0; a < c.rank; ++a) os << "dim " << a << ' ' << c.qdim[a].to_string() << "\n";
  for (const Triple& t : c.fusion) os << "fusion " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
  for (const auto& [t, v] : c.r) {
    os << "r " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << v.to_string();
    auto it = c.r_exponent.find(t);
    if (it != c.r_exponent.end()) os << " # " << it->second;
    os << "\n";
  }
  for (const auto& [k, v] : c.f) {
    os << "f";
    for (Label x : k) os << ' ' << x;
    os << ' ' << v.to_string() << "\n";
  }
  return os.str();
}

inline CategoryData import_dataset(const std::string& text) {
  CategoryData c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("dataset line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string doc;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      doc = line.substr(hash + 1);
      while (!doc.empty() && doc.front() == ' ') doc.erase(doc.begin());
      line = line.substr(0, hash);
    }
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "fibwrt-category") {
      int v = 0;
      ls >> v;
      if (v != 1) fail("unsupported version");
      header = true;
      continue;
    }
    if (!header) fail("missing header");
    if (key == "name") {
      ls >> c.name;
    } else if (key == "labels") {
      ls >> c.rank;
      if (c.rank <= 0) fail("bad label count");
      c.qdim.assign(c.rank, FieldElement());
    } else if (key == "dual") {
      Label d;
      while (ls >> d) c.dual.push_back(d);
    } else if (key == "dim") {
      Label a;
      ls >> a;
      std::string rest;
      std::getline(ls, rest);
      if (a < 0 || a >= c.rank) fail("label out of range");
      c.qdim[a] = FieldElement::parse(rest);
    } else if (key == "fusion") {
      Triple t;
      if (!(ls >> t[0] >> t[1] >> t[2])) fail("fusion needs three labels");
      c.fusion.insert(t);
    } else if (key == "r") {
      Triple t;
      if (!(ls >> t[0] >> t[1] >> t[2])) fail("r needs three labels");
      std::string rest;
      std::getline(ls, rest);
      c.r[t] = FieldElement::parse(rest);
      if (!doc.empty()) c.r_exponent[t] = doc;
    } else if (key == "f") {
      Sextuple s;
      for (auto& x : s)
        if (!(ls >> x)) fail("f needs six labels");
      std::string rest;
      std::getline(ls, rest);
      c.f[s] = FieldElement::parse(rest);
    } else {
      fail("unknown key " + key);
    }
  }
  if (c.rank == 0) fail("no labels");
  if (static_cast<int>(c.dual.size()) != c.rank) fail("dual list has wrong length");
  for (const auto& [t, v] : c.r)
    if (!c.fusion_ok(t[0], t[1], t[2]) && !v.is_zero()) fail("R entry outside fusion rules");
  return c;
}

inline CategoryData load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return import_dataset(ss.str());
}

}  // namespace fibwrt
