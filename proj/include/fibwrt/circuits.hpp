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

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibwrt/exactnum.hpp"
#include <json.hpp>

namespace fibwrt {

/// 3-CNF. Literal +v / -v for variable v in 1..num_vars.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  bool operator==(const CnfFormula&) const = default;
};

class DimacsError : public std::runtime_error {
 public:
  DimacsError(const std::string& what, int line_no) : std::runtime_error(what), line(line_no) {}
  int line;
};

inline CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula f;
  bool header = false;
  long declared = 0;
  std::vector<int> pending;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long n = -1, m = -1;
      std::string extra;
      if (header || !(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0 || (ls >> extra))
        throw DimacsError("bad header: " + line, line_no);
      header = true;
      f.num_vars = static_cast<int>(n);
      declared = m;
      continue;
    }
    if (!header) throw DimacsError("clause before header", line_no);
    ls.clear();
    ls.str(line);
    while (ls >> tok) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw DimacsError("bad literal \"" + tok + "\"", line_no);
      if (v == 0) {
        if (pending.size() != 3)
          throw DimacsError("clause has " + std::to_string(pending.size()) + " literals, expected 3", line_no);
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (std::labs(v) > f.num_vars) throw DimacsError("variable out of range: " + tok, line_no);
      pending.push_back(static_cast<int>(v));
    }
  }
  if (!header) throw DimacsError("missing header", line_no);
  if (!pending.empty()) throw DimacsError("unterminated clause", line_no);
  if (static_cast<long>(f.clauses.size()) != declared)
    throw DimacsError("header declares " + std::to_string(declared) + " clauses, found " +
                          std::to_string(f.clauses.size()),
                      line_no);
  return f;
}

inline std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) os << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return os.str();
}

/// Assignment bit v-1 holds variable v.
inline bool satisfies(const CnfFormula& f, std::uint64_t x) {
  for (const auto& c : f.clauses) {
    bool ok = false;
    for (int l : c) {
      const bool bit = (x >> (std::abs(l) - 1)) & 1U;
      if (bit == (l > 0)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

inline mpz_class count_sat_bruteforce(const CnfFormula& f, int cap = 24) {
  if (f.num_vars > cap)
    throw std::length_error(std::to_string(f.num_vars) + " variables exceed the brute-force cap " +
                            std::to_string(cap));
  mpz_class count = 0;
  const std::uint64_t total = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t x = 0; x < total; ++x)
    if (satisfies(f, x)) ++count;
  return count;
}

struct Gate {
  enum class Kind { H, X, CCX };
  Kind kind;
  int a = 0, b = 0, t = 0;  // H/X act on t

  static Gate h(int w) { return {Kind::H, 0, 0, w}; }
  static Gate x(int w) { return {Kind::X, 0, 0, w}; }
  static Gate ccx(int c1, int c2, int target) { return {Kind::CCX, c1, c2, target}; }
  bool operator==(const Gate&) const = default;
};

struct Circuit {
  int wires = 0;
  std::vector<int> init;  // per-wire input bit
  std::vector<Gate> gates;

  bool operator==(const Circuit&) const = default;

  void validate() const {
    if (wires < 1) throw std::invalid_argument("circuit needs at least one wire");
    if (static_cast<int>(init.size()) != wires) throw std::invalid_argument("init length differs from wire count");
    for (int b : init)
      if (b != 0 && b != 1) throw std::invalid_argument("init bits must be 0 or 1");
    auto in_range = [&](int w) { return w >= 0 && w < wires; };
    for (const auto& g : gates) {
      if (!in_range(g.t)) throw std::invalid_argument("gate wire out of range");
      if (g.kind == Gate::Kind::CCX) {
        if (!in_range(g.a) || !in_range(g.b)) throw std::invalid_argument("gate wire out of range");
        if (g.a == g.b || g.a == g.t || g.b == g.t) throw std::invalid_argument("Toffoli wires must be distinct");
      }
    }
  }
};

inline nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case Gate::Kind::H: gates.push_back({"H", g.t}); break;
      case Gate::Kind::X: gates.push_back({"X", g.t}); break;
      case Gate::Kind::CCX: gates.push_back({"CCX", g.a, g.b, g.t}); break;
    }
  }
  return {{"wires", c.wires}, {"init", c.init}, {"gates", gates}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  try {
    c.wires = j.at("wires").get<int>();
    c.init = j.contains("init") ? j.at("init").get<std::vector<int>>() : std::vector<int>(std::max(c.wires, 0), 0);
    for (const auto& g : j.at("gates")) {
      const std::string name = g.at(0).get<std::string>();
      if (name == "H" && g.size() == 2) c.gates.push_back(Gate::h(g.at(1).get<int>()));
      else if (name == "X" && g.size() == 2) c.gates.push_back(Gate::x(g.at(1).get<int>()));
      else if (name == "CCX" && g.size() == 4)
        c.gates.push_back(Gate::ccx(g.at(1).get<int>(), g.at(2).get<int>(), g.at(3).get<int>()));
      else throw std::invalid_argument("unknown gate " + g.dump());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad circuit JSON: ") + e.what());
  }
  c.validate();
  return c;
}

/// Dense state with amplitudes amp[i] / sqrt(2)^k. Wire w is bit w of the index.
struct ExactState {
  int wires = 0;
  int k = 0;
  std::vector<mpz_class> amp;

  RootTwoInteger amplitude(std::size_t i) const { return RootTwoInteger(amp.at(i), k); }

  /// sum m^2 == 2^k
  bool is_normalized() const {
    mpz_class s = 0;
    for (const auto& m : amp) s += m * m;
    mpz_class p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return s == p;
  }

  void apply(const Gate& g) {
    const std::size_t n = amp.size();
    const std::size_t tb = std::size_t{1} << g.t;
    switch (g.kind) {
      case Gate::Kind::H: {
        for (std::size_t i = 0; i < n; ++i) {
          if (i & tb) continue;
          mpz_class lo = amp[i] + amp[i | tb];
          amp[i | tb] = amp[i] - amp[i | tb];
          amp[i] = std::move(lo);
        }
        ++k;
        reduce();
        break;
      }
      case Gate::Kind::X:
        for (std::size_t i = 0; i < n; ++i)
          if (!(i & tb)) mpz_swap(amp[i].get_mpz_t(), amp[i | tb].get_mpz_t());
        break;
      case Gate::Kind::CCX: {
        const std::size_t cm = (std::size_t{1} << g.a) | (std::size_t{1} << g.b);
        for (std::size_t i = 0; i < n; ++i)
          if ((i & cm) == cm && !(i & tb)) mpz_swap(amp[i].get_mpz_t(), amp[i | tb].get_mpz_t());
        break;
      }
    }
  }

 private:
  void reduce() {
    while (k >= 2) {
      for (const auto& m : amp)
        if (mpz_odd_p(m.get_mpz_t())) return;
      for (auto& m : amp) m /= 2;
      k -= 2;
    }
  }
};

inline std::size_t basis_index(const std::vector<int>& bits) {
  std::size_t idx = 0;
  for (std::size_t w = 0; w < bits.size(); ++w)
    if (bits[w]) idx |= std::size_t{1} << w;
  return idx;
}

inline ExactState simulate(const Circuit& c, int wire_cap = 20) {
  c.validate();
  if (c.wires > wire_cap)
    throw std::length_error(std::to_string(c.wires) + " wires exceed the simulation cap " + std::to_string(wire_cap));
  ExactState s;
  s.wires = c.wires;
  s.amp.assign(std::size_t{1} << c.wires, 0);
  s.amp[basis_index(c.init)] = 1;
  for (const auto& g : c.gates) s.apply(g);
  return s;
}

/// <0...0| C |init>
inline RootTwoInteger matrix_entry(const Circuit& c, int wire_cap = 20) { return simulate(c, wire_cap).amplitude(0); }

/// Wire map for the formula oracle. ancillas are every wire past the flag.
struct CnfLayout {
  int n = 0;
  int flag = 0;
  int temp = 0;
  std::vector<int> clause;
  std::vector<int> ladder;
  int wires = 0;
};

inline CnfLayout cnf_layout(const CnfFormula& f) {
  CnfLayout l;
  l.n = f.num_vars;
  l.flag = l.n;
  l.temp = l.n + 1;
  int next = l.n + 2;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) l.clause.push_back(next++);
  for (std::size_t j = 2; j < f.clauses.size(); ++j) l.ladder.push_back(next++);
  l.wires = next;
  return l;
}

namespace detail {

// clause wire ^= OR of literals; temp enters and leaves at 0
inline void compute_clause(const std::array<int, 3>& cl, int out, int temp, std::vector<Gate>& g) {
  std::set<int> lits(cl.begin(), cl.end());
  for (int l : lits)
    if (lits.count(-l)) {
      g.push_back(Gate::x(out));  // tautology
      return;
    }
  std::vector<int> neg;  // wires carrying the negated literals after the X layer
  std::vector<Gate> flips;
  for (int l : lits) {
    const int w = std::abs(l) - 1;
    if (l > 0) flips.push_back(Gate::x(w));
    neg.push_back(w);
  }
  g.insert(g.end(), flips.begin(), flips.end());
  if (neg.size() == 1) {
    g.push_back(Gate::x(temp));
    g.push_back(Gate::ccx(neg[0], temp, out));
    g.push_back(Gate::x(temp));
  } else if (neg.size() == 2) {
    g.push_back(Gate::ccx(neg[0], neg[1], out));
  } else {
    g.push_back(Gate::ccx(neg[0], neg[1], temp));
    g.push_back(Gate::ccx(temp, neg[2], out));
    g.push_back(Gate::ccx(neg[0], neg[1], temp));
  }
  g.insert(g.end(), flips.begin(), flips.end());
  g.push_back(Gate::x(out));
}

}  // namespace detail

/// |x, t, 0...> -> |x, t xor f(x), 0...> over the cnf_layout wires.
inline std::vector<Gate> compile_cnf(const CnfFormula& f) {
  const CnfLayout l = cnf_layout(f);
  std::vector<Gate> compute;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) detail::compute_clause(f.clauses[j], l.clause[j], l.temp, compute);

  std::vector<Gate> ladder;
  const std::size_t m = f.clauses.size();
  if (m >= 3) {
    ladder.push_back(Gate::ccx(l.clause[0], l.clause[1], l.ladder[0]));
    for (std::size_t j = 2; j + 1 < m; ++j) ladder.push_back(Gate::ccx(l.ladder[j - 2], l.clause[j], l.ladder[j - 1]));
  }

  std::vector<Gate> out = compute;
  out.insert(out.end(), ladder.begin(), ladder.end());
  if (m == 0) {
    out.push_back(Gate::x(l.flag));
  } else if (m == 1) {
    out.push_back(Gate::x(l.temp));
    out.push_back(Gate::ccx(l.clause[0], l.temp, l.flag));
    out.push_back(Gate::x(l.temp));
  } else if (m == 2) {
    out.push_back(Gate::ccx(l.clause[0], l.clause[1], l.flag));
  } else {
    out.push_back(Gate::ccx(l.ladder[m - 3], l.clause[m - 1], l.flag));
  }
  out.insert(out.end(), ladder.rbegin(), ladder.rend());
  out.insert(out.end(), compute.rbegin(), compute.rend());
  return out;
}

/// <0| H^n H X ... C_f ... H^{n+1} |0^n, 1, 0^a> = 1 - #f / 2^{n-1}
inline Circuit build_hardness_circuit(const CnfFormula& f) {
  if (f.num_vars < 1) throw std::invalid_argument("formula needs at least one variable");
  const CnfLayout l = cnf_layout(f);
  Circuit c;
  c.wires = l.wires;
  c.init.assign(l.wires, 0);
  c.init[l.flag] = 1;
  for (int w = 0; w <= l.n; ++w) c.gates.push_back(Gate::h(w));
  const auto body = compile_cnf(f);
  c.gates.insert(c.gates.end(), body.begin(), body.end());
  for (int w = 0; w < l.n; ++w) c.gates.push_back(Gate::h(w));
  c.gates.push_back(Gate::h(l.flag));
  c.gates.push_back(Gate::x(l.flag));
  return c;
}

/// Nearest integer to 2^{n-1} (1 - r).
inline long recover_count(double r, int n) { return std::lround(std::ldexp(1.0 - r, n - 1)); }

inline long recover_count(const RootTwoInteger& r, int n) {
  const BigFloat v = r.to_bigfloat(128);
  return recover_count(v.to_double(), n);
}

}  // namespace fibwrt
