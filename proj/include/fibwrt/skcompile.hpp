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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fibwrt/circuits.hpp"
#include "fibwrt/heegaard.hpp"
#include "fibwrt/parallel.hpp"
#include "fibwrt/rep.hpp"

namespace fibwrt {

using CMatrix = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

/**
 * Distance used for approximation. Projective mode quotients the global
 * phase by aligning with arg tr(V^dagger U); the value is then the operator
 * norm at that phase, an upper bound on the phase-minimized distance.
 * A nonempty column list measures ||(U - V) P|| for the coordinate
 * projector P onto those columns.
 */
struct Metric {
  bool projective = true;
  std::vector<int> columns;

  CMatrix restrict_cols(const CMatrix& m) const {
    if (columns.empty()) return m;
    CMatrix r(m.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) r.col(static_cast<Eigen::Index>(j)) = m.col(columns[j]);
    return r;
  }

  cplx phase(const CMatrix& u, const CMatrix& v) const {
    if (!projective) return 1.0;
    const cplx t = (restrict_cols(v).adjoint() * restrict_cols(u)).trace();
    return std::abs(t) < 1e-300 ? cplx(1.0) : t / std::abs(t);
  }

  double distance(const CMatrix& u, const CMatrix& v) const {
    return op_norm(restrict_cols(u) - phase(u, v) * restrict_cols(v));
  }

  /// Cheap lower bound on distance(): Frobenius norm over sqrt(columns).
  double lower_bound(const CMatrix& u, const CMatrix& v) const {
    const CMatrix d = restrict_cols(u) - phase(u, v) * restrict_cols(v);
    return d.norm() / std::sqrt(static_cast<double>(d.cols()));
  }
};

struct Generator {
  std::string label;
  CMatrix u;
  bool exact = false;  // an exact form exists upstream
  int twist = 0;       // Dehn twist letter when the set comes from a representation
  int inverse = -1;
};

using GenWord = std::vector<int>;  // indices into a GeneratorSet; leftmost factor first

class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::vector<Generator> gens, bool projective) : gens_(std::move(gens)), projective_(projective) {
    finalize();
  }

  const std::vector<Generator>& gens() const { return gens_; }
  const Generator& operator[](std::size_t i) const { return gens_.at(i); }
  std::size_t size() const { return gens_.size(); }
  Eigen::Index dim() const { return gens_.empty() ? 0 : gens_.front().u.rows(); }
  bool projective() const { return projective_; }

  CMatrix identity() const { return CMatrix::Identity(dim(), dim()); }

  CMatrix evaluate(const GenWord& w) const {
    CMatrix m = identity();
    for (int i : w) m = m * gens_.at(static_cast<std::size_t>(i)).u;
    return m;
  }

  GenWord inverse_of(const GenWord& w) const {
    GenWord r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(gens_.at(static_cast<std::size_t>(*it)).inverse);
    return r;
  }

  /// Cancels adjacent inverse pairs.
  GenWord reduce(const GenWord& w) const {
    GenWord out;
    for (int i : w) {
      if (!out.empty() && gens_[static_cast<std::size_t>(out.back())].inverse == i) out.pop_back();
      else out.push_back(i);
    }
    return out;
  }

  std::string to_string(const GenWord& w) const {
    std::string s;
    for (int i : w) {
      if (!s.empty()) s += ' ';
      s += gens_.at(static_cast<std::size_t>(i)).label;
    }
    return s;
  }

  /// FNV-1a over the labels, mode and entries printed to 12 digits.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&h](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
    };
    feed(projective_ ? "P" : "E");
    char buf[64];
    for (const auto& g : gens_) {
      feed(g.label);
      for (Eigen::Index i = 0; i < g.u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e;", g.u(i).real() + 0.0, g.u(i).imag() + 0.0);
        feed(buf);
      }
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  void finalize() {
    if (gens_.empty()) throw std::invalid_argument("empty generator set");
    const Metric m{projective_, {}};
    const CMatrix id = identity();
    for (auto& g : gens_) {
      if (g.u.rows() != dim() || g.u.cols() != dim()) throw std::invalid_argument("generator dimensions differ");
      const double det = std::abs(g.u.determinant());
      if (std::abs(det - 1.0) > 1e-9) throw std::invalid_argument("generator " + g.label + " is not unit-determinant");
      if (op_norm(g.u.adjoint() * g.u - id) > 1e-9) throw std::invalid_argument("generator " + g.label + " is not unitary");
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      gens_[i].inverse = -1;
      for (std::size_t j = 0; j < gens_.size(); ++j)
        if (m.distance(gens_[i].u * gens_[j].u, id) < 1e-9) {
          gens_[i].inverse = static_cast<int>(j);
          break;
        }
      if (gens_[i].inverse < 0) throw std::invalid_argument("generator set is not closed under inverses: " + gens_[i].label);
    }
  }

  std::vector<Generator> gens_;
  bool projective_ = true;
};

/// {H, T, T^-1} on one qubit, compared projectively.
inline GeneratorSet toy_su2_set() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix h(2, 2), t(2, 2);
  h << r, r, r, -r;
  t << 1, 0, 0, std::polar(1.0, M_PI / 4);
  return GeneratorSet({{"H", h, true, 0, -1}, {"T", t, true, 0, -1}, {"T^-1", t.adjoint(), true, 0, -1}}, true);
}

inline CMatrix to_cmatrix(const std::vector<std::vector<FieldElement>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j].to_complex_double();
  return out;
}

/// Dehn twists and inverses at genus g as float matrices; compared exactly (no phase quotient).
inline GeneratorSet mcg_generator_set(const Representation& rep, int g) {
  std::vector<Generator> gens;
  for (int i = 1; i <= generator_count(g); ++i)
    for (int s : {1, -1}) {
      const int letter = s * i;
      gens.push_back({std::to_string(letter), to_cmatrix(rep.full_matrix(g, {letter})), true, letter, -1});
    }
  return GeneratorSet(std::move(gens), false);
}

inline Word twist_word(const GeneratorSet& set, const GenWord& w) {
  Word out;
  for (int i : w) {
    const int t = set[static_cast<std::size_t>(i)].twist;
    if (t == 0) throw std::invalid_argument("generator " + set[static_cast<std::size_t>(i)].label + " is not a Dehn twist");
    out.push_back(t);
  }
  return out;
}

/**
 * Words up to length L, built breadth-first; a word is kept only if no
 * earlier word lies within dedup_radius of it.
 *
 * Cache file (text): "fibwrt-net 1", "hash <hex>", "length <L>",
 * "radius <r>", "count <N>", then one word per line as generator indices
 * ("-" for the empty word). Matrices are recomputed on load.
 */
class NetCache {
 public:
  struct Entry {
    GenWord word;
    CMatrix u;
  };

  NetCache(const GeneratorSet& set, int max_length, double dedup_radius = 1e-7)
      : set_(&set), length_(max_length), radius_(dedup_radius), hash_(set.hash()) {}

  const GeneratorSet& set() const { return *set_; }
  int max_length() const { return length_; }
  const std::string& hash() const { return hash_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  void build() {
    entries_.clear();
    buckets_.clear();
    insert({{}, set_->identity()});
    std::vector<std::size_t> frontier = {0};
    for (int len = 1; len <= length_; ++len) {
      std::vector<Entry> cand(frontier.size() * set_->size());
      parallel_for(frontier.size(), [&](std::size_t f) {
        const Entry& base = entries_[frontier[f]];
        for (std::size_t g = 0; g < set_->size(); ++g) {
          Entry& e = cand[f * set_->size() + g];
          if (!base.word.empty() && (*set_)[static_cast<std::size_t>(base.word.back())].inverse == static_cast<int>(g))
            continue;
          e.word = base.word;
          e.word.push_back(static_cast<int>(g));
          e.u = base.u * (*set_)[g].u;
        }
      });
      std::vector<std::size_t> next;
      for (auto& e : cand) {
        if (e.word.empty()) continue;
        if (insert(std::move(e))) next.push_back(entries_.size() - 1);
      }
      frontier = std::move(next);
    }
  }

  std::string path_in(const std::filesystem::path& dir) const {
    return (dir / ("net-" + hash_ + "-L" + std::to_string(length_) + ".txt")).string();
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write net cache " + path);
    out << "fibwrt-net 1\nhash " << hash_ << "\nlength " << length_ << "\nradius " << radius_ << "\ncount "
        << entries_.size() << "\n";
    for (const auto& e : entries_) {
      if (e.word.empty()) out << "-";
      for (std::size_t i = 0; i < e.word.size(); ++i) out << (i ? " " : "") << e.word[i];
      out << "\n";
    }
  }

  /// False when the file is missing, malformed or keyed to another generator set.
  bool load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string magic, key, h;
    int ver = 0, len = 0;
    double rad = 0;
    std::size_t count = 0;
    if (!(in >> magic >> ver) || magic != "fibwrt-net" || ver != 1) return false;
    if (!(in >> key >> h) || key != "hash" || h != hash_) return false;
    if (!(in >> key >> len) || key != "length" || len != length_) return false;
    if (!(in >> key >> rad) || key != "radius") return false;
    if (!(in >> key >> count) || key != "count") return false;
    std::string line;
    std::getline(in, line);
    std::vector<Entry> loaded;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Entry e;
      if (line != "-") {
        std::istringstream ls(line);
        int i = 0;
        while (ls >> i) {
          if (i < 0 || static_cast<std::size_t>(i) >= set_->size()) return false;
          e.word.push_back(i);
        }
      }
      loaded.push_back(std::move(e));
    }
    if (loaded.size() != count) return false;
    parallel_for(loaded.size(), [&](std::size_t i) { loaded[i].u = set_->evaluate(loaded[i].word); });
    entries_ = std::move(loaded);
    radius_ = rad;
    return true;
  }

  /// Loads from dir if a matching file exists, else builds and writes it. Returns true on a cache hit.
  bool load_or_build(const std::filesystem::path& dir) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const std::string p = path_in(dir);
    if (load(p)) return true;
    build();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    save(p);
    return false;
  }

 private:
  std::uint64_t cell(const CMatrix& u, double grid) const {
    // phase-canonical copy: the largest-magnitude entry made real positive
    cplx ph = 1.0;
    if (set_->projective()) {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < u.size(); ++i)
        if (std::abs(u(i)) > std::abs(u(best)) + 1e-6) best = i;
      ph = std::conj(u(best)) / std::abs(u(best));
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const cplx z = u(i) * ph;
      for (double x : {z.real(), z.imag()}) {
        const auto q = static_cast<long long>(std::llround(x / grid));
        h ^= static_cast<std::uint64_t>(q);
        h *= 1099511628211ULL;
      }
    }
    return h;
  }

  bool insert(Entry e) {
    const std::uint64_t c = cell(e.u, std::max(radius_, 1e-12));
    const Metric m{set_->projective(), {}};
    auto& bucket = buckets_[c];
    for (std::size_t i : bucket)
      if (m.distance(entries_[i].u, e.u) <= radius_) return false;
    bucket.push_back(entries_.size());
    entries_.push_back(std::move(e));
    return true;
  }

  const GeneratorSet* set_;
  int length_;
  double radius_;
  std::string hash_;
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

struct CompiledWord {
  GenWord word;
  double error = 0.0;  // metric distance of the evaluated word, never a theoretical bound
  std::size_t length() const { return word.size(); }
};

class SkError : public std::runtime_error {
 public:
  SkError(const std::string& what, CompiledWord best_word) : std::runtime_error(what), best(std::move(best_word)) {}
  CompiledWord best;
};

/// Nearest net word to u under m.
inline CompiledWord basic_approx(const CMatrix& u, const NetCache& net, const Metric& m) {
  if (net.size() == 0) throw std::invalid_argument("empty net");
  double best = INFINITY;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const CMatrix& v = net.entries()[i].u;
    if (m.lower_bound(u, v) >= best) continue;
    const double d = m.distance(u, v);
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  return {net.entries()[arg].word, best};
}

/// Divides by the d-th root of the determinant closest to the identity.
inline CMatrix to_special_unitary(const CMatrix& u) {
  const auto d = static_cast<double>(u.rows());
  const cplx det = u.determinant();
  const double a = std::arg(det);
  CMatrix best = u;
  double bd = INFINITY;
  for (int k = 0; k < u.rows(); ++k) {
    const cplx root = std::polar(1.0, (a + 2 * M_PI * k) / d);
    const CMatrix c = u / root;
    const double dist = (c - CMatrix::Identity(u.rows(), u.cols())).norm();
    if (dist < bd) {
      bd = dist;
      best = c;
    }
  }
  return best;
}

/**
 * Balanced group commutator: V, W with V W V^-1 W^-1 close to delta, for
 * delta in SU(d) near the identity. In a basis where log(delta) has zero
 * diagonal, W is diagonal with distinct entries and V solves the
 * commutator equation entrywise.
 */
inline std::pair<CMatrix, CMatrix> gc_decompose(const CMatrix& delta) {
  const Eigen::Index d = delta.rows();
  Eigen::ComplexSchur<CMatrix> schur(delta);
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  Eigen::VectorXd theta(d);
  for (Eigen::Index j = 0; j < d; ++j) theta(j) = std::arg(t(j, j));
  theta.array() -= theta.mean();

  CMatrix phi(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      phi(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2 * M_PI * static_cast<double>(j * k) / static_cast<double>(d));
  const CMatrix kmat = phi.adjoint() * theta.cast<cplx>().asDiagonal() * phi;

  Eigen::VectorXd gdiag(d);
  for (Eigen::Index j = 0; j < d; ++j) gdiag(j) = static_cast<double>(j) - static_cast<double>(d - 1) / 2.0;
  CMatrix f = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      if (j != k) f(j, k) = cplx(0, -1) * kmat(j, k) / (gdiag(k) - gdiag(j));
  f = (f + f.adjoint()) / 2.0;

  const double fn = op_norm(f), gn = gdiag.cwiseAbs().maxCoeff();
  const double s = fn > 0 ? std::sqrt(fn / gn) : 1.0;
  f /= s;
  gdiag *= s;

  const CMatrix basis = q * phi;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(f);
  const CMatrix vf = es.eigenvectors() * es.eigenvalues().unaryExpr([](double x) { return std::polar(1.0, x); }).asDiagonal() *
                     es.eigenvectors().adjoint();
  const CMatrix wg = gdiag.unaryExpr([](double x) { return std::polar(1.0, x); }).asDiagonal();
  return {basis * vf * basis.adjoint(), basis * wg * basis.adjoint()};
}

struct SkOptions {
  int max_depth = 4;
};

/// Full target from the current approximation; used when the metric only sees some columns.
using TargetCompletion = std::function<CMatrix(const CMatrix& approx)>;

namespace detail {

inline CompiledWord sk_level(const CMatrix& u, int n, const NetCache& net, const Metric& m,
                             const TargetCompletion& complete) {
  const GeneratorSet& set = net.set();
  if (n == 0) return basic_approx(u, net, m);
  const CompiledWord prev = sk_level(u, n - 1, net, m, complete);
  const CMatrix b = set.evaluate(prev.word);
  const CMatrix target = complete ? complete(b) : u;
  const CMatrix delta = to_special_unitary(target * b.adjoint());
  const auto [v, w] = gc_decompose(delta);
  const Metric proj{true, {}};
  const CompiledWord vw = sk_level(v, n - 1, net, proj, nullptr);
  const CompiledWord ww = sk_level(w, n - 1, net, proj, nullptr);
  GenWord word = vw.word;
  word.insert(word.end(), ww.word.begin(), ww.word.end());
  const GenWord vi = set.inverse_of(vw.word), wi = set.inverse_of(ww.word);
  word.insert(word.end(), vi.begin(), vi.end());
  word.insert(word.end(), wi.begin(), wi.end());
  word.insert(word.end(), prev.word.begin(), prev.word.end());
  word = set.reduce(word);
  return {word, m.distance(u, set.evaluate(word))};
}

}  // namespace detail

/**
 * Solovay-Kitaev to accuracy eps. Depth grows from 0 until the evaluated
 * error is below eps; past max_depth an SkError carries the best word seen.
 */
inline CompiledWord sk_compile(const CMatrix& u, double eps, const NetCache& net, const Metric& m = {},
                               const SkOptions& opt = {}, const TargetCompletion& complete = nullptr) {
  CompiledWord best;
  best.error = INFINITY;
  for (int n = 0; n <= opt.max_depth; ++n) {
    CompiledWord c = detail::sk_level(u, n, net, m, complete);
    if (c.error < best.error || (c.error == best.error && c.length() < best.length())) best = c;
    if (best.error < eps) return best;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "depth cap %d reached with error %.6g >= %.6g", opt.max_depth, best.error, eps);
  throw SkError(buf, best);
}

/// Handle i carries bit i-1 of the qubit index, bridges carry 0.
struct QubitEncoding {
  int genus = 0;
  bool dense = false;  // false for the torus, whose image group is not dense
  std::vector<Labeling> images;
  std::vector<std::size_t> basis_index;  // position of each image in the fusion basis
};

inline QubitEncoding encode_basis(int g, const CategoryData& cat) {
  QubitEncoding e;
  e.genus = g;
  e.dense = g != 1;
  const Spine sp = build_spine(g);
  const FusionBasis fb(sp, cat);
  const std::size_t n = std::size_t{1} << g;
  for (std::size_t z = 0; z < n; ++z) {
    Labeling l(sp.edges.size(), 0);
    for (std::size_t k = 0; k < sp.edges.size(); ++k) {
      const auto& edge = sp.edges[k];
      if (edge.role != EdgeRole::Bridge) l[k] = static_cast<Label>((z >> (edge.handle - 1)) & 1U);
    }
    const long idx = fb.index_of(l);
    if (idx < 0) throw std::logic_error("encoded labeling is not fusion-consistent");
    e.images.push_back(l);
    e.basis_index.push_back(static_cast<std::size_t>(idx));
  }
  return e;
}

/// Float unitary of a circuit on its wires (init bits ignored).
inline CMatrix circuit_unitary(const Circuit& c) {
  c.validate();
  const std::size_t n = std::size_t{1} << c.wires;
  CMatrix u(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Circuit col = c;
    for (int w = 0; w < c.wires; ++w) col.init[static_cast<std::size_t>(w)] = static_cast<int>((j >> w) & 1U);
    const ExactState s = simulate(col);
    for (std::size_t i = 0; i < n; ++i)
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.amplitude(i).to_double();
  }
  return u;
}

struct PipelineReport {
  Splitting splitting;
  std::vector<CompiledWord> gate_words;
  double epsilon_total = 0.0;
  double per_gate_budget = 0.0;
  double bound = 0.0;  // sum of achieved per-gate errors
};

/**
 * Encoded target for one gate: iota U iota^dagger on the encoded block,
 * the polar part of the approximation's complement block elsewhere,
 * rephased so the determinant matches the approximation.
 */
inline TargetCompletion encoded_completion(const CMatrix& gate, const QubitEncoding& enc, Eigen::Index dim) {
  std::vector<int> comp;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (std::find(enc.basis_index.begin(), enc.basis_index.end(), static_cast<std::size_t>(i)) == enc.basis_index.end())
      comp.push_back(static_cast<int>(i));
  return [gate, enc, comp, dim](const CMatrix& approx) {
    CMatrix t = CMatrix::Zero(dim, dim);
    for (std::size_t a = 0; a < enc.basis_index.size(); ++a)
      for (std::size_t b = 0; b < enc.basis_index.size(); ++b)
        t(static_cast<Eigen::Index>(enc.basis_index[a]), static_cast<Eigen::Index>(enc.basis_index[b])) =
            gate(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    if (!comp.empty()) {
      const auto k = static_cast<Eigen::Index>(comp.size());
      CMatrix blk(k, k);
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) blk(a, b) = approx(comp[a], comp[b]);
      Eigen::JacobiSVD<CMatrix> svd(blk, Eigen::ComputeFullU | Eigen::ComputeFullV);
      CMatrix polar = svd.matrixU() * svd.matrixV().adjoint();
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) t(comp[a], comp[b]) = polar(a, b);
      const cplx ratio = approx.determinant() / t.determinant();
      const cplx fix = std::polar(1.0, std::arg(ratio) / static_cast<double>(k));
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) t(comp[a], comp[b]) *= fix;
    }
    return t;
  };
}

/**
 * One word per gate at budget eps_total / |c|, measured as
 * ||(rho(w_j) - iota G_j iota^dagger) P|| on the encoded columns P.
 * The twist word applies gate 1 first, so w_1 is rightmost.
 */
inline PipelineReport compile_circuit_to_splitting(const Circuit& c, double eps_total, const Representation& rep,
                                                   const NetCache& net, const SkOptions& opt = {}) {
  c.validate();
  const int g = c.wires;
  if (g < 2) throw std::domain_error("genus-one encoding is not dense; use at least two qubits");
  for (int b : c.init)
    if (b != 0) throw std::invalid_argument("pipeline circuits start from the all-zero input");
  const QubitEncoding enc = encode_basis(g, rep.category());
  const GeneratorSet& set = net.set();
  if (set.dim() != static_cast<Eigen::Index>(rep.at(g).dim()))
    throw std::invalid_argument("net generator set does not match the genus");
  PipelineReport r;
  r.epsilon_total = eps_total;
  r.splitting.genus = g;
  if (c.gates.empty()) return r;
  r.per_gate_budget = eps_total / static_cast<double>(c.gates.size());
  Metric m{false, {}};
  for (std::size_t i : enc.basis_index) m.columns.push_back(static_cast<int>(i));

  GenWord total;
  for (const Gate& gate : c.gates) {
    Circuit one{g, std::vector<int>(static_cast<std::size_t>(g), 0), {gate}};
    const CMatrix gu = circuit_unitary(one);
    const TargetCompletion complete = encoded_completion(gu, enc, set.dim());
    const CMatrix target0 = complete(set.identity());
    const CompiledWord cw = sk_compile(target0, r.per_gate_budget, net, m, opt, complete);
    r.gate_words.push_back(cw);
    r.bound += cw.error;
    total.insert(total.begin(), cw.word.begin(), cw.word.end());
  }
  r.splitting.word = twist_word(set, total);
  return r;
}

}  // namespace fibwrt
