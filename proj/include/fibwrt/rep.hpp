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
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fibwrt/category.hpp"
#include "fibwrt/conventions.hpp"
#include "fibwrt/heegaard.hpp"
#include "fibwrt/parallel.hpp"

namespace fibwrt {

/// Edge roles in the chain spine.
enum class EdgeRole { Loop, Parallel, Bridge };

struct SpineEdge {
  std::string name;
  EdgeRole role;
  int handle;  // handle for Loop/Parallel edges, bridge index for Bridge edges
};

/**
 * Chain spine of the genus-g surface.
 *
 * Edges in basis order: L1, Y1, P2, Q2, Y2, ..., P_{g-1}, Q_{g-1}, Y_{g-1}, Lg.
 * End handles are loops, middle handles are the parallel pair (P_i, Q_i),
 * and Y_i bridges handle i to handle i+1. Genus 1 is the single loop L1.
 */
struct Spine {
  int genus = 1;
  std::vector<SpineEdge> edges;
  std::vector<std::array<int, 3>> vertices;

  int edge(const std::string& name) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].name == name) return static_cast<int>(i);
    throw std::out_of_range("no spine edge " + name);
  }
  /// Edge carrying the meridian of handle h (the loop, or P_h in the middle).
  int handle_edge(int h) const {
    if (h == 1) return edge("L1");
    if (h == genus) return edge("L" + std::to_string(genus));
    return edge("P" + std::to_string(h));
  }
  int bridge_edge(int i) const { return edge("Y" + std::to_string(i)); }
};

inline Spine build_spine(int g) {
  if (g < 1) throw std::invalid_argument("genus must be at least 1");
  Spine s;
  s.genus = g;
  if (g == 1) {
    s.edges.push_back({"L1", EdgeRole::Loop, 1});
    return s;
  }
  s.edges.push_back({"L1", EdgeRole::Loop, 1});
  s.edges.push_back({"Y1", EdgeRole::Bridge, 1});
  for (int h = 2; h < g; ++h) {
    s.edges.push_back({"P" + std::to_string(h), EdgeRole::Parallel, h});
    s.edges.push_back({"Q" + std::to_string(h), EdgeRole::Parallel, h});
    s.edges.push_back({"Y" + std::to_string(h), EdgeRole::Bridge, h});
  }
  s.edges.push_back({"L" + std::to_string(g), EdgeRole::Loop, g});
  const int l1 = s.edge("L1"), lg = s.edge("L" + std::to_string(g));
  s.vertices.push_back({l1, l1, s.bridge_edge(1)});
  for (int h = 2; h < g; ++h) {
    const int p = s.edge("P" + std::to_string(h)), q = s.edge("Q" + std::to_string(h));
    s.vertices.push_back({s.bridge_edge(h - 1), p, q});
    s.vertices.push_back({p, q, s.bridge_edge(h)});
  }
  s.vertices.push_back({lg, lg, s.bridge_edge(g - 1)});
  return s;
}

using Labeling = std::vector<Label>;

/// Fusion-consistent labelings of the spine, lexicographic, vacuum first.
class FusionBasis {
 public:
  FusionBasis(const Spine& spine, const CategoryData& cat) : rank_(cat.rank) {
    const std::size_t ne = spine.edges.size();
    Labeling cur(ne, 0);
    // Depth-first over edges in order; check every vertex once all its edges are set.
    std::vector<std::vector<int>> closes(ne);
    for (std::size_t v = 0; v < spine.vertices.size(); ++v) {
      const auto& t = spine.vertices[v];
      closes[std::max({t[0], t[1], t[2]})].push_back(static_cast<int>(v));
    }
    std::function<void(std::size_t)> rec = [&](std::size_t e) {
      if (e == ne) {
        index_.emplace(key(cur), states_.size());
        states_.push_back(cur);
        return;
      }
      for (Label a = 0; a < cat.rank; ++a) {
        cur[e] = a;
        bool ok = true;
        for (int v : closes[e]) {
          const auto& t = spine.vertices[v];
          if (!cat.fusion_ok(cur[t[0]], cur[t[1]], cur[t[2]])) {
            ok = false;
            break;
          }
        }
        if (ok) rec(e + 1);
      }
      cur[e] = 0;
    };
    rec(0);
  }

  std::size_t size() const { return states_.size(); }
  const Labeling& state(std::size_t i) const { return states_.at(i); }
  const std::vector<Labeling>& states() const { return states_; }

  /// Index of a labeling, or -1 if it is not fusion-consistent.
  long index_of(const Labeling& l) const {
    auto it = index_.find(key(l));
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }

  std::string label_string(std::size_t i) const {
    std::string s;
    for (Label a : states_.at(i)) s += std::to_string(a);
    return s;
  }

 private:
  std::uint64_t key(const Labeling& l) const {
    std::uint64_t k = 0;
    for (Label a : l) k = k * static_cast<std::uint64_t>(rank_) + static_cast<std::uint64_t>(a);
    return k;
  }

  int rank_;
  std::vector<Labeling> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

inline std::vector<Labeling> enumerate_basis(int g, const CategoryData& cat) {
  return FusionBasis(build_spine(g), cat).states();
}

/**
 * Dimension from the Verlinde formula (phi+2)^{g-1} * sum_a d_a^{2-2g},
 * evaluated exactly; throws if the result is not a rational integer.
 */
inline long verlinde_dim(int g, const CategoryData& cat) {
  if (g < 1) throw std::invalid_argument("genus must be at least 1");
  const FieldElement d2 = compute_derived(cat).d_squared;
  FieldElement sum;
  for (const auto& d : cat.qdim) sum += d.pow(2 - 2 * g);
  const FieldElement v = d2.pow(g - 1) * sum;
  if (!v.is_rational() || v.coord(0).get_den() != 1)
    throw std::domain_error("Verlinde evaluation is not an integer: " + v.to_string());
  return v.coord(0).get_num().get_si();
}

/// Column-major sparse matrix over the field.
struct SparseMatrix {
  std::size_t dim = 0;
  std::vector<std::vector<std::pair<std::size_t, FieldElement>>> cols;

  SparseMatrix adjoint() const {
    SparseMatrix r;
    r.dim = dim;
    r.cols.assign(dim, {});
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& [i, v] : cols[j]) r.cols[i].push_back({j, v.conj()});
    return r;
  }

  std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const {
    std::vector<FieldElement> out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (v[j].is_zero()) continue;
      for (const auto& [i, c] : cols[j]) out[i] += c * v[j];
    }
    return out;
  }

  FieldElement at(std::size_t i, std::size_t j) const {
    for (const auto& [r, v] : cols.at(j))
      if (r == i) return v;
    return FieldElement();
  }
};

/**
 * Operator acting on a few spine edges. action maps a local label pattern
 * on the support to the patterns it is sent to, with coefficients.
 */
struct LocalOperator {
  std::vector<int> support;
  std::map<Labeling, std::vector<std::pair<Labeling, FieldElement>>> action;

  SparseMatrix expand(const FusionBasis& basis) const {
    SparseMatrix m;
    m.dim = basis.size();
    m.cols.assign(m.dim, {});
    for (std::size_t j = 0; j < m.dim; ++j) {
      const Labeling& st = basis.state(j);
      Labeling pat;
      for (int e : support) pat.push_back(st[e]);
      auto it = action.find(pat);
      if (it == action.end()) throw std::logic_error("local operator undefined on a basis pattern");
      for (const auto& [out, c] : it->second) {
        if (c.is_zero()) continue;
        Labeling nxt = st;
        for (std::size_t k = 0; k < support.size(); ++k) nxt[support[k]] = out[k];
        const long i = basis.index_of(nxt);
        if (i < 0) throw std::logic_error("local operator leaves the fusion-consistent subspace");
        m.cols[j].push_back({static_cast<std::size_t>(i), c});
      }
    }
    return m;
  }
};

namespace detail {

using FieldMatrix = std::vector<std::vector<FieldElement>>;

inline FieldMatrix field_inverse(FieldMatrix a) {
  const std::size_t n = a.size();
  FieldMatrix inv(n, std::vector<FieldElement>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = FieldElement(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("singular S block");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const FieldElement piv = a[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= piv;
      inv[c][j] *= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const FieldElement f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/**
 * Twist on a loop edge with boundary label z, in the loop-label basis:
 * B^{(z)} = M_z^{-1} diag(theta) M_z, M_z = (D S^z_{jk}) over labels x with
 * (x, x, z) admissible. Entries outside that set are absent.
 */
struct LoopTwist {
  std::vector<Label> labels;
  std::map<std::pair<Label, Label>, FieldElement> entry;  // (row, col)

  FieldElement at(Label r, Label c) const {
    auto it = entry.find({r, c});
    return it == entry.end() ? FieldElement() : it->second;
  }
};

inline LoopTwist loop_twist(const CategoryData& cat, const DerivedData& dd, Label z) {
  LoopTwist t;
  for (Label x = 0; x < cat.rank; ++x)
    if (cat.fusion_ok(x, x, z)) t.labels.push_back(x);
  const std::size_t n = t.labels.size();
  detail::FieldMatrix m(n, std::vector<FieldElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = dd.ds(z, t.labels[i], t.labels[j]);
  const detail::FieldMatrix mi = detail::field_inverse(m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      FieldElement acc;
      for (std::size_t k = 0; k < n; ++k) acc += mi[r][k] * cat.theta(t.labels[k]) * m[k][c];
      t.entry[{t.labels[r], t.labels[c]}] = acc;
    }
  return t;
}

struct CompiledGenerator {
  GeneratorId id;
  LocalOperator local;
  SparseMatrix matrix;
  SparseMatrix inverse;
};

/**
 * The representation at one genus: basis plus the 3g-1 compiled generators
 * in the configured order. Immutable once built.
 */
class GenusRep {
 public:
  GenusRep(int g, const CategoryData& cat, const DerivedData& dd, const Conventions& conv,
           const std::vector<LoopTwist>& twists, const FieldElement& b_scale)
      : spine_(build_spine(g)), basis_(spine_, cat) {
    for (int idx = 1; idx <= fibwrt::generator_count(g); ++idx) {
      const GeneratorId id = generator_at(idx, g, conv.ordering);
      CompiledGenerator cg;
      cg.id = id;
      cg.local = build_local(id, cat, twists, b_scale);
      cg.matrix = cg.local.expand(basis_);
      cg.inverse = cg.matrix.adjoint();
      gens_.push_back(std::move(cg));
    }
    (void)dd;
  }

  int genus() const { return spine_.genus; }
  const Spine& spine() const { return spine_; }
  const FusionBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const CompiledGenerator& generator(int index) const { return gens_.at(static_cast<std::size_t>(index - 1)); }
  int generator_count() const { return static_cast<int>(gens_.size()); }

  /// rho(w1) rho(w2) ... rho(wm) applied to v; the rightmost letter acts first.
  std::vector<FieldElement> apply_word(std::vector<FieldElement> v, const Word& w) const {
    if (v.size() != dim()) throw std::invalid_argument("state has wrong dimension");
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const int x = *it;
      if (x == 0 || std::abs(x) > generator_count())
        throw std::out_of_range("generator index " + std::to_string(x) + " out of range");
      const CompiledGenerator& g = gens_[static_cast<std::size_t>(std::abs(x) - 1)];
      v = (x > 0 ? g.matrix : g.inverse).apply(v);
    }
    return v;
  }

  std::vector<FieldElement> vacuum() const {
    std::vector<FieldElement> v(dim());
    v[0] = FieldElement(1);
    return v;
  }

 private:
  LocalOperator build_local(GeneratorId id, const CategoryData& cat, const std::vector<LoopTwist>& twists,
                            const FieldElement& b_scale) const {
    const int g = spine_.genus;
    LocalOperator op;
    switch (id.kind) {
      case GeneratorKind::A: {
        op.support = {spine_.handle_edge(id.handle)};
        for (Label x = 0; x < cat.rank; ++x) op.action[{x}] = {{{x}, cat.theta(x)}};
        break;
      }
      case GeneratorKind::B: {
        const bool end = id.handle == 1 || id.handle == g;
        if (end) {
          const int loop = spine_.handle_edge(id.handle);
          if (g == 1) {
            op.support = {loop};
            for (Label x = 0; x < cat.rank; ++x) {
              auto& outs = op.action[{x}];
              for (Label x2 = 0; x2 < cat.rank; ++x2)
                outs.push_back({{x2}, b_scale * twists[0].at(x2, x)});
            }
          } else {
            const int y = spine_.bridge_edge(id.handle == 1 ? 1 : g - 1);
            op.support = {loop, y};
            for (Label x = 0; x < cat.rank; ++x)
              for (Label z = 0; z < cat.rank; ++z) {
                auto& outs = op.action[{x, z}];
                for (Label x2 = 0; x2 < cat.rank; ++x2)
                  outs.push_back({{x2, z}, b_scale * twists[z].at(x2, x)});
              }
          }
        } else {
          const int h = id.handle;
          const int y1 = spine_.bridge_edge(h - 1), y2 = spine_.bridge_edge(h);
          const int p = spine_.edge("P" + std::to_string(h)), q = spine_.edge("Q" + std::to_string(h));
          op.support = {y1, p, q, y2};
          for (Label a = 0; a < cat.rank; ++a)
            for (Label b = 0; b < cat.rank; ++b)
              for (Label pp = 0; pp < cat.rank; ++pp)
                for (Label qq = 0; qq < cat.rank; ++qq) {
                  auto& outs = op.action[{a, pp, qq, b}];
                  for (Label p2 = 0; p2 < cat.rank; ++p2)
                    for (Label q2 = 0; q2 < cat.rank; ++q2) {
                      FieldElement acc;
                      for (Label z = 0; z < cat.rank; ++z) {
                        const FieldElement bz = twists[z].at(p2, pp);
                        if (bz.is_zero()) continue;
                        const FieldElement fin = cat.f_at(a, pp, pp, b, qq, z);
                        if (fin.is_zero()) continue;
                        acc += cat.f_at(a, p2, p2, b, q2, z).conj() * bz * fin;
                      }
                      if (!acc.is_zero()) outs.push_back({{a, p2, q2, b}, b_scale * acc});
                    }
                }
        }
        break;
      }
      case GeneratorKind::C: {
        const int i = id.handle;
        const int l = i == 1 ? spine_.edge("L1") : spine_.edge("P" + std::to_string(i));
        const int l2 = i == 1 ? l : spine_.edge("Q" + std::to_string(i));
        const int r = i + 1 == g ? spine_.edge("L" + std::to_string(g)) : spine_.edge("P" + std::to_string(i + 1));
        const int r2 = i + 1 == g ? r : spine_.edge("Q" + std::to_string(i + 1));
        const int y = spine_.bridge_edge(i);
        // distinct support edges; loops contribute one edge for both legs
        op.support = {l};
        if (l2 != l) op.support.push_back(l2);
        op.support.push_back(y);
        op.support.push_back(r);
        if (r2 != r) op.support.push_back(r2);
        const std::size_t ns = op.support.size();
        std::vector<Label> pat(ns, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
          if (k == ns) {
            std::map<int, Label> lab;
            for (std::size_t t = 0; t < ns; ++t) lab[op.support[t]] = pat[t];
            const Label A = lab[l], B = lab[l2], C = lab[r], Dd = lab[r2], Y = lab[y];
            auto& outs = op.action[pat];
            for (Label y2 = 0; y2 < cat.rank; ++y2) {
              FieldElement acc;
              for (Label c = 0; c < cat.rank; ++c) {
                const FieldElement fin = cat.f_at(A, B, C, Dd, Y, c);
                if (fin.is_zero()) continue;
                acc += cat.f_at(A, B, C, Dd, y2, c).conj() * cat.theta(c) * fin;
              }
              if (acc.is_zero()) continue;
              std::vector<Label> o = pat;
              for (std::size_t t = 0; t < ns; ++t)
                if (op.support[t] == y) o[t] = y2;
              outs.push_back({o, acc});
            }
            return;
          }
          for (Label a = 0; a < cat.rank; ++a) {
            pat[k] = a;
            rec(k + 1);
          }
        };
        rec(0);
        break;
      }
    }
    return op;
  }

  Spine spine_;
  FusionBasis basis_;
  std::vector<CompiledGenerator> gens_;
};

/**
 * Representation over all genera for one dataset and convention set.
 * Genus tables are built lazily and cached; safe for concurrent reads.
 */
class Representation {
 public:
  Representation(CategoryData cat, Conventions conv)
      : cat_(std::move(cat)), conv_(std::move(conv)), dd_(compute_derived(cat_)) {
    for (Label z = 0; z < cat_.rank; ++z) twists_.push_back(loop_twist(cat_, dd_, z));
    // lambda = D <0| B^{(0)} |0>, the vacuum expectation of a genus-1 b-twist.
    const auto& d = total_dimension_in_field();
    if (d) {
      lambda_ = *d * twists_[0].at(0, 0);
    }
    if (conv_.b_normalization == BNormalization::AnomalyFree) {
      if (!lambda_) throw std::domain_error("anomaly-free normalization needs D in the field");
      if (lambda_->norm2() != FieldElement(1))
        throw std::domain_error("b-twist vacuum phase is not unimodular for dataset " + cat_.name);
      b_scale_ = lambda_->conj();
    }
  }

  explicit Representation(const Conventions& conv) : Representation(dataset_by_name(conv.dataset), conv) {}

  const CategoryData& category() const { return cat_; }
  const DerivedData& derived() const { return dd_; }
  const Conventions& conventions() const { return conv_; }
  const std::optional<FieldElement>& lambda() const { return lambda_; }
  const FieldElement& b_scale() const { return b_scale_; }
  const LoopTwist& loop_twist_block(Label z) const { return twists_.at(z); }

  const GenusRep& at(int g) const {
    if (g < 1) throw std::invalid_argument("genus must be at least 1");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(g);
    if (it == cache_.end())
      it = cache_.emplace(g, std::make_unique<GenusRep>(g, cat_, dd_, conv_, twists_, b_scale_)).first;
    return *it->second;
  }

  std::vector<FieldElement> apply_word(int g, const std::vector<FieldElement>& v, const Word& w) const {
    return at(g).apply_word(v, w);
  }

  /// Same action on DScaledValue states; every entry must share one D-parity or D must lie in the field.
  std::vector<DScaledValue> apply_word(int g, const std::vector<DScaledValue>& v, const Word& w) const {
    int p = 0;
    bool fold = false;
    for (const auto& x : v)
      if (!x.is_zero()) p = x.canonical().dpow();
    for (const auto& x : v)
      if (!x.is_zero() && x.canonical().dpow() != p) fold = true;
    std::vector<FieldElement> m;
    for (const auto& x : v) {
      if (fold) {
        auto f = x.as_field();
        if (!f) throw std::domain_error("state mixes D parities");
        m.push_back(*f);
      } else {
        m.push_back(x.canonical().mantissa());
      }
    }
    const auto out = apply_word(g, m, w);
    std::vector<DScaledValue> r;
    for (const auto& x : out) r.push_back(DScaledValue(x, fold ? 0 : p).canonical());
    return r;
  }

  using DenseMatrix = std::vector<std::vector<FieldElement>>;  // [row][col]

  /// Dense rho(w), built column by column from apply_word.
  DenseMatrix full_matrix(int g, const Word& w, long max_dim = -1) const {
    const GenusRep& r = at(g);
    const long cap = max_dim < 0 ? conv_.max_dense_dim : max_dim;
    if (static_cast<long>(r.dim()) > cap)
      throw std::length_error("dimension " + std::to_string(r.dim()) + " at genus " + std::to_string(g) +
                              " exceeds the dense budget " + std::to_string(cap) + "; use vector mode");
    const std::size_t n = r.dim();
    DenseMatrix m(n, std::vector<FieldElement>(n));
    std::vector<std::vector<FieldElement>> cols(n);
    parallel_for(n, [&](std::size_t j) {
      std::vector<FieldElement> e(n);
      e[j] = FieldElement(1);
      cols[j] = r.apply_word(std::move(e), w);
    });
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) m[i][j] = std::move(cols[j][i]);
    return m;
  }

  /// Triplet dump of one generator: row labels, column labels, coefficient.
  std::string dump_operator(int g, int index) const {
    const GenusRep& r = at(g);
    const SparseMatrix& m = r.generator(index).matrix;
    std::ostringstream os;
    for (std::size_t j = 0; j < m.dim; ++j) {
      auto col = m.cols[j];
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [i, v] : col)
        os << r.basis().label_string(i) << ' ' << r.basis().label_string(j) << ' ' << v.to_string() << "\n";
    }
    return os.str();
  }

 private:
  CategoryData cat_;
  Conventions conv_;
  DerivedData dd_;
  std::vector<LoopTwist> twists_;
  std::optional<FieldElement> lambda_;
  FieldElement b_scale_ = FieldElement(1);
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<GenusRep>> cache_;
};

}  // namespace fibwrt
