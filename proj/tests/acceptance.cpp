// Acceptance runner. Prints one "CRITERION n PASS|FAIL ..." line per criterion.
//
//   acceptance [--criterion N] [--cache-dir DIR]
//
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibwrt/certify.hpp"
#include "fibwrt/circuits.hpp"
#include "fibwrt/skcompile.hpp"
#include "rep_helpers.hpp"

using namespace fibwrt;
using namespace fibwrt::testing;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;  // extra lines printed after the verdict

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::filesystem::path g_cache_dir;

const Representation& shipped_rep() {
  static const Representation r(Conventions{});
  return r;
}

// ---------------------------------------------------------------------------

Result category_anchors() {
  Result r;
  const CategoryData cat = verbatim_fibonacci();
  const DerivedData dd = compute_derived(cat);
  const FieldElement phi = FieldElement::phi(), sp = FieldElement::sqrt_phi(), w = FieldElement::zeta(8);
  struct Anchor {
    const char* name;
    Label i, j, k;
    FieldElement want;
  };
  const std::vector<Anchor> anchors = {
      {"D S^0_00", 0, 0, 0, FieldElement(1)},
      {"D S^0_10", 0, 1, 0, phi},
      {"D S^0_01", 0, 0, 1, phi},
      {"D S^0_11", 0, 1, 1, FieldElement(1) + phi * w},
      {"D S^1_11", 1, 1, 1, sp * (FieldElement(1) - w)},
  };
  int matched = 0;
  for (const auto& a : anchors) {
    const FieldElement got = dd.ds(a.i, a.j, a.k);
    if (got == a.want) {
      ++matched;
      continue;
    }
    std::ostringstream os;
    os << a.name << ": computed " << got.to_string() << " ~ " << format_complex(got.to_complex_double())
       << ", listed " << a.want.to_string() << " ~ " << format_complex(a.want.to_complex_double());
    r.notes.push_back(os.str());
    r.fail("S anchors differ");
  }
  const FieldElement five_root = FieldElement::phi() * FieldElement(2) - FieldElement(1);  // sqrt 5
  const bool d2 = dd.d_squared == (FieldElement(5) + five_root) / FieldElement(2);
  if (!d2) r.fail("D^2 != (5+sqrt5)/2");
  int fblocks = 0;
  for (const auto& v : check_unitary(cat).violations)
    if (v.rfind("F block", 0) == 0) {
      ++fblocks;
      r.fail(v);
    }
  std::ostringstream os;
  os << matched << "/" << anchors.size() << " S anchors equal, D^2 = (5+sqrt5)/2: " << (d2 ? "yes" : "no")
     << ", F blocks unitary: " << (fblocks == 0 ? "yes" : "no");
  if (r.pass) r.detail = os.str();
  else r.detail += "; " + os.str();
  return r;
}

Result dimensions() {
  Result r;
  const CategoryData cat = standard_fibonacci();
  std::ostringstream os;
  for (int g = 1; g <= 5; ++g) {
    const long b = static_cast<long>(enumerate_basis(g, cat).size());
    const long v = verlinde_dim(g, cat);
    os << (g > 1 ? " " : "") << "g" << g << "=" << b;
    if (b != v) r.fail("genus " + std::to_string(g) + ": basis " + std::to_string(b) + " vs Verlinde " + std::to_string(v));
  }
  if (r.pass) r.detail = os.str();
  return r;
}

Result representation_properties() {
  Result r;
  const Representation& rep = shipped_rep();
  const Ordering ord = rep.conventions().ordering;
  int unitary = 0, commute = 0, braid = 0;
  for (int g = 1; g <= 3; ++g) {
    std::vector<Dense> m;
    for (int i = 1; i <= generator_count(g); ++i) {
      m.push_back(rep.full_matrix(g, {i}));
      if (!is_identity(multiply(adjoint(m.back()), m.back())))
        r.fail("generator " + std::to_string(i) + " not unitary at genus " + std::to_string(g));
      ++unitary;
    }
    for (int i = 1; i <= generator_count(g); ++i)
      for (int j = i + 1; j <= generator_count(g); ++j) {
        const Dense& x = m[static_cast<std::size_t>(i - 1)];
        const Dense& y = m[static_cast<std::size_t>(j - 1)];
        const std::string where = "genus " + std::to_string(g) + " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (!curves_meet(generator_at(i, g, ord), generator_at(j, g, ord))) {
          if (multiply(x, y) != multiply(y, x)) r.fail("disjoint twists do not commute at " + where);
          ++commute;
        } else {
          const auto s = proportional(multiply(x, multiply(y, x)), multiply(y, multiply(x, y)));
          if (!s || s->norm2() != FieldElement(1)) r.fail("braid relation fails at " + where);
          ++braid;
        }
      }
  }
  if (r.pass)
    r.detail = std::to_string(unitary) + " generators unitary, " + std::to_string(commute) + " commuting pairs, " +
               std::to_string(braid) + " braid relations";
  return r;
}

Result wrt_invariance() {
  Result r;
  const Representation& rep = shipped_rep();
  HandlebodyGenerators gens(rep.conventions().ordering);
  std::mt19937_64 rng(4004);
  std::uniform_int_distribution<int> gd(1, 3), ld(0, 20), md(1, 8);
  int nonzero = 0, moves = 0;
  std::optional<DScaledValue> kappa;
  for (int k = 0; k < 200 && r.pass; ++k) {
    const int g = gd(rng);
    const Splitting s{g, random_reduced_word(rng, g, ld(rng))};
    const Certificate c = random_certificate(rng, s, gens, rep.conventions(), md(rng), 4);
    moves += static_cast<int>(c.moves.size());
    const InvarianceReport ir = invariance_report(rep, s, c, gens);
    if (ir.kind == InvarianceKind::Unequal) {
      r.fail("|WRT| changed on " + serialize_splitting(s));
      break;
    }
    if (!ir.kappa) continue;
    ++nonzero;
    if (!kappa) kappa = ir.kappa;
    else if (*kappa != *ir.kappa) r.fail("kappa not constant on " + serialize_splitting(s));
  }
  if (r.pass && kappa && *kappa != DScaledValue(FieldElement(1))) r.fail("kappa = " + exact_text(*kappa) + ", not 1");
  if (r.pass)
    r.detail = "200 splittings, " + std::to_string(moves) + " moves, " + std::to_string(nonzero) +
               " nonzero values, kappa = " + (kappa ? exact_text(*kappa) : std::string("n/a"));
  return r;
}

CnfFormula random_cnf(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, 4), md(0, 6), sg(0, 1);
  CnfFormula f;
  f.num_vars = nd(rng);
  std::uniform_int_distribution<int> vd(1, f.num_vars);
  for (int m = md(rng); m > 0; --m) {
    std::array<int, 3> cl{};
    for (int& l : cl) l = sg(rng) ? vd(rng) : -vd(rng);
    f.clauses.push_back(cl);
  }
  return f;
}

Result reduction_identity() {
  Result r;
  std::mt19937_64 rng(5005);
  for (int k = 0; k < 50; ++k) {
    const CnfFormula f = random_cnf(rng);
    const int n = f.num_vars;
    const mpz_class count = count_sat_bruteforce(f);
    const RootTwoInteger entry = matrix_entry(build_hardness_circuit(f));
    // 1 - #phi / 2^{n-1} as (2^{n-1} - #phi) / sqrt2^{2(n-1)}
    mpz_class half = 1;
    half <<= static_cast<unsigned>(n - 1);
    const RootTwoInteger want(half - count, 2 * (n - 1));
    if (entry != want) {
      r.fail("entry " + entry.to_string() + " for #phi = " + count.get_str() + " on\n" + to_dimacs(f));
      break;
    }
    if (recover_count(entry, n) != count.get_si()) r.fail("recover_count mismatch for #phi = " + count.get_str());
  }
  if (r.pass) r.detail = "50 formulas";
  return r;
}

Result rounding_robustness() {
  Result r;
  std::mt19937_64 rng(6006);
  const double grid[] = {-0.999, -0.9, -0.75, -0.5, -0.25, -0.1, 0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999};
  int probes = 0;
  for (int k = 0; k < 50 && r.pass; ++k) {
    const CnfFormula f = random_cnf(rng);
    const int n = f.num_vars;
    const long count = count_sat_bruteforce(f).get_si();
    const double exact = matrix_entry(build_hardness_circuit(f)).to_double();
    for (double t : grid) {
      const double rr = exact + t * std::ldexp(1.0, -n);
      ++probes;
      if (recover_count(rr, n) != count) {
        r.fail("n=" + std::to_string(n) + " offset " + std::to_string(t) + "/2^n gave " +
               std::to_string(recover_count(rr, n)) + " instead of " + std::to_string(count));
        break;
      }
    }
  }
  if (r.pass) r.detail = std::to_string(probes) + " perturbed entries";
  return r;
}

CMatrix haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMatrix z(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  return to_special_unitary(qr.householderQ() * CMatrix::Identity(2, 2));
}

Result solovay_kitaev() {
  Result r;
  static const GeneratorSet set = toy_su2_set();
  NetCache net(set, 12);
  net.load_or_build(g_cache_dir);
  std::mt19937_64 rng(7007);
  std::vector<CMatrix> targets;
  for (int k = 0; k < 20; ++k) targets.push_back(haar_su2(rng));
  const double eps[] = {0.5, 0.2, 0.1, 0.05};
  std::ostringstream curve;
  std::vector<double> xs, ys;
  for (double e : eps) {
    double total = 0, worst = 0;
    std::size_t longest = 0;
    for (const auto& u : targets) {
      try {
        const CompiledWord w = sk_compile(u, e, net);
        if (!(w.error < e)) r.fail("error " + std::to_string(w.error) + " >= " + std::to_string(e));
        total += static_cast<double>(w.length());
        longest = std::max(longest, w.length());
        worst = std::max(worst, w.error);
      } catch (const SkError& err) {
        r.fail(err.what());
      }
    }
    const double mean = total / static_cast<double>(targets.size());
    char buf[160];
    std::snprintf(buf, sizeof buf, "eps %.2f: mean length %.1f, max length %zu, worst error %.4f", e, mean, longest,
                  worst);
    r.notes.push_back(buf);
    xs.push_back(std::log(std::log(1.0 / e)));
    ys.push_back(std::log(std::max(mean, 1.0)));
  }
  // least-squares slope of log length against log log(1/eps)
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "net %zu words up to length %d; fitted exponent c in length ~ log^c(1/eps): %.2f",
                net.size(), net.max_length(), sxx > 0 ? sxy / sxx : 0.0);
  r.notes.push_back(buf);
  if (r.pass) r.detail = "20 Haar targets at each eps";
  return r;
}

Result pipeline() {
  Result r;
  const Representation& rep = shipped_rep();
  const int g = 2;
  static const GeneratorSet set = mcg_generator_set(rep, g);
  NetCache net(set, 5);
  net.load_or_build(g_cache_dir);
  const Circuit c{g, {0, 0}, {Gate::h(0)}};
  const PipelineReport rep_out = compile_circuit_to_splitting(c, 0.5, rep, net);
  const RootTwoInteger lhs = matrix_entry(c);
  const GenusRep& gr = rep.at(g);
  const FieldElement rhs = gr.apply_word(gr.vacuum(), rep_out.splitting.word)[0];
  const double gap = std::abs(lhs.to_double() - rhs.to_complex_double());
  char buf[256];
  std::snprintf(buf, sizeof buf, "<0|C|0> = %s, <0|rho(w)|0> ~ %s, gap %.4f, word length %zu, bound %.4f",
                lhs.to_string().c_str(), format_complex(rhs.to_complex_double(), 6).c_str(), gap,
                rep_out.splitting.word.size(), rep_out.bound);
  r.detail = buf;
  if (!(gap < 0.5)) r.fail(std::string("gap not below 0.5: ") + buf);
  if (gap > rep_out.bound + 1e-9) r.fail(std::string("gap exceeds reported bound: ") + buf);
  const double need = std::pow(2.0 + (1.0 + std::sqrt(5.0)) / 2.0, -0.5 * (g - 1)) / std::ldexp(1.0, g + 1);
  std::snprintf(buf, sizeof buf, "hardness precision D^(1-g)/2^(g+1) = %.4g at genus %d, not attempted", need, g);
  r.notes.push_back(buf);
  return r;
}

Result certificate_verifier() {
  Result r;
  const Representation& rep = shipped_rep();
  const Conventions& conv = rep.conventions();
  HandlebodyGenerators gens(conv.ordering);
  std::mt19937_64 rng(9009);
  std::uniform_int_distribution<int> gd(1, 3), ld(0, 12), md(2, 10);
  const GenusBoundPolicy policy;
  int destab = 0, range = 0, bound = 0;
  auto expect_reject = [&](const VerifierOutcome& o, const std::string& reason, int pos, const std::string& where) {
    if (o.kind != VerifierOutcome::Kind::Reject || o.stage != 1 || o.reason != reason || o.position != pos)
      r.fail(where + ": got \"" + o.render() + "\", wanted REJECT 1 " + reason + " " + std::to_string(pos));
  };
  for (int k = 0; k < 100 && r.pass; ++k) {
    const int g = gd(rng);
    const Splitting s0{g, random_reduced_word(rng, g, ld(rng))};
    const auto [s, c] = thicken(rng, s0, md(rng), gens, conv, 4);
    const VerifierOutcome o = verify_and_eval(rep, s, c, policy, gens);
    if (o.kind != VerifierOutcome::Kind::Value || o.value.value != wrt_eval(rep, s).value.canonical()) {
      r.fail("round trip " + serialize_splitting(s) + ": " + o.render());
      break;
    }

    // Out-of-range slide at a random position.
    std::uniform_int_distribution<std::size_t> at(0, c.moves.size());
    const std::size_t p = at(rng);
    Certificate bad = c;
    bad.moves.insert(bad.moves.begin() + static_cast<long>(p), Move::slide({99}, {}));
    expect_reject(verify_and_eval(rep, s, bad, policy, gens), "slide-index-out-of-range", static_cast<int>(p) + 1,
                  "slide corruption");
    ++range;

    // Destabilization inserted where the suffix is absent.
    Splitting cur = s;
    for (std::size_t q = 0; q <= c.moves.size(); ++q) {
      bool absent = cur.genus > 1;
      if (absent) {
        try {
          apply_destabilize(cur, conv);
          absent = false;
        } catch (const Rejection&) {
        }
      }
      if (absent) {
        Certificate d = c;
        d.moves.insert(d.moves.begin() + static_cast<long>(q), Move::destab());
        const VerifierOutcome od = verify_and_eval(rep, s, d, policy, gens);
        if (od.kind != VerifierOutcome::Kind::Reject || od.position != static_cast<int>(q) + 1)
          r.fail("destab corruption at " + std::to_string(q + 1) + ": " + od.render());
        ++destab;
        break;
      }
      if (q < c.moves.size()) cur = apply_move(cur, c.moves[q], gens, conv);
    }

    // Genus bound: q = 2^{g'} forbids the final genus g'.
    mpz_class lim = 1;
    lim <<= static_cast<unsigned>(o.final_splitting.genus);
    expect_reject(verify_and_eval(rep, s, c, GenusBoundPolicy({lim}), gens), "genus-bound", 0, "bound corruption");
    ++bound;
  }
  if (r.pass)
    r.detail = "100 round trips; rejected " + std::to_string(range) + " bad slides, " + std::to_string(destab) +
               " bad destabilizations, " + std::to_string(bound) + " genus-bound breaches";
  return r;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fibwrt acceptance runner"};
  std::vector<int> only;
  std::string cache = (std::filesystem::temp_directory_path() / "fibwrt-acceptance").string();
  app.add_option("--criterion", only, "criterion numbers to run (default: all)")->check(CLI::Range(1, 9));
  app.add_option("--cache-dir", cache, "directory for cached nets");
  CLI11_PARSE(app, argc, argv);
  g_cache_dir = cache;
  std::filesystem::create_directories(g_cache_dir);

  const std::vector<Criterion> all = {
      {1, "category anchors", 1, category_anchors},
      {2, "Hilbert-space dimensions", 10, dimensions},
      {3, "representation properties", 60, representation_properties},
      {4, "WRT invariance", 300, wrt_invariance},
      {5, "reduction identity", 60, reduction_identity},
      {6, "rounding robustness", 10, rounding_robustness},
      {7, "Solovay-Kitaev", 600, solovay_kitaev},
      {8, "end-to-end pipeline", 1800, pipeline},
      {9, "certificate verifier", 300, certificate_verifier},
  };
  bool ok = true;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.budget_s) res.fail("over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget");
    std::printf("CRITERION %d %s %s: %s (%.2f s)\n", c.id, res.pass ? "PASS" : "FAIL", c.name, res.detail.c_str(), secs);
    for (const auto& n : res.notes) std::printf("  %s\n", n.c_str());
    std::fflush(stdout);
    ok = ok && res.pass;
  }
  return ok ? 0 : 1;
}
