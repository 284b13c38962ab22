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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "fibwrt/certify.hpp"
#include "fibwrt/circuits.hpp"
#include "fibwrt/skcompile.hpp"
#include "fibwrt/wrt.hpp"

namespace fibwrt {

namespace cli {

using nlohmann::json;

inline std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline json value_json(const WrtValue& w, mpfr_prec_t bits) {
  const DScaledValue c = w.value.canonical();
  const auto folded = c.as_field();
  json coords = json::array();
  for (int i = 0; i < 16; ++i) coords.push_back(mpq_class((folded ? *folded : c.mantissa()).coord(i)).get_str());
  const auto [re, im] = float_parts(c, bits);
  return {{"genus", w.genus},
          {"coordinates", coords},
          {"dpow", folded ? 0 : c.dpow()},
          {"exact", exact_text(c)},
          {"re", re},
          {"im", im}};
}

inline json splitting_json(const Splitting& s) { return {{"genus", s.genus}, {"word", s.word}, {"text", serialize_splitting(s)}}; }

struct Context {
  std::string config_path;
  std::string dataset;
  bool json_mode = false;
  int threads = 0;
  int precision = 53;
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;

  Conventions conventions() const {
    Conventions c = config_path.empty() ? Conventions{} : load_conventions(config_path);
    if (!dataset.empty()) c.dataset = dataset;
    return c;
  }
};

inline Splitting splitting_arg(const std::string& file, const std::string& text) {
  if (!text.empty()) return parse_splitting(text);
  if (file.empty()) throw std::invalid_argument("give --splitting FILE or --word TEXT");
  return parse_splitting(read_text(file));
}

inline Certificate certificate_arg(const std::string& file, const std::string& text) {
  if (!text.empty()) return parse_certificate(text);
  if (file.empty()) return {};
  return parse_certificate(read_text(file));
}

}  // namespace cli

inline constexpr const char* kCliGrammar = R"(Formats:
  splitting    "<genus> | <i1> <i2> ..."  signed 1-based Dehn twist indices,
               rightmost acts first; "-" and U+2212 both negate.
  certificate  JSON array of moves: {"move":"stab"}, {"move":"destab"},
               {"move":"slide","y":[..],"z":[..]}; slide entries index the
               handlebody generators (meridians a_1..a_g), negative = inverse.
  circuit      {"wires":k,"init":[bits],"gates":[["H",i]|["X",i]|["CCX",a,b,t]]}
               wire i is bit i of a basis index.
  cnf          DIMACS, exactly three literals per clause.
  config       versioned JSON written by `selfcheck --write-config`.
Exit codes: 0 success, 1 REJECT, 2 operational error.)";

/**
 * Entry point shared by the binary and the tests. Results go to out,
 * diagnostics to err.
 */
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  CLI::App app{"Exact WRT invariants of Heegaard splittings over Fibonacci data", "fibwrt"};
  app.footer(kCliGrammar);
  app.require_subcommand(1);
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  app.add_option("--config", ctx.config_path, "convention config file")->check(CLI::ExistingFile);
  app.add_option("--dataset", ctx.dataset, "category dataset: verbatim, standard, standard-conjugate");
  app.add_flag("--json", ctx.json_mode, "machine-readable output");
  app.add_option("--threads", ctx.threads, "worker threads (default: FIBWRT_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--precision", ctx.precision, "float rendering precision in bits")->check(CLI::Range(53, 100000));

  std::string split_file, split_text, cert_file, cert_text, out_file, cnf_file, circuit_file, q_text = "0,0,0,1";
  std::string cache_dir, write_config;
  int genus = 1, cases = 24, net_length = -1;
  double epsilon = 0.5;
  bool all_amps = false;

  auto add_splitting = [&](CLI::App* sc) {
    sc->add_option("--splitting", split_file, "splitting file (- for stdin)");
    sc->add_option("--word", split_text, "splitting given inline");
  };
  auto add_certificate = [&](CLI::App* sc) {
    sc->add_option("--certificate", cert_file, "certificate JSON file");
    sc->add_option("--certificate-json", cert_text, "certificate given inline");
  };

  CLI::App* eval_cmd = app.add_subcommand("eval", "exact WRT invariant of a splitting");
  add_splitting(eval_cmd);
  CLI::App* dim_cmd = app.add_subcommand("dim", "Hilbert space dimension with the Verlinde cross-check");
  dim_cmd->add_option("--genus", genus, "genus")->required()->check(CLI::Range(1, 12));
  CLI::App* moves_cmd = app.add_subcommand("moves", "apply a certificate of moves");
  add_splitting(moves_cmd);
  add_certificate(moves_cmd);
  moves_cmd->add_option("--out", out_file, "write the resulting splitting");
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a certificate, then evaluate the thinned splitting");
  add_splitting(verify_cmd);
  add_certificate(verify_cmd);
  verify_cmd->add_option("--q", q_text, "genus bound polynomial coefficients c0,c1,... (constant first)");
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "3-CNF to the counting circuit");
  reduce_cmd->add_option("--cnf", cnf_file, "DIMACS file")->required();
  reduce_cmd->add_option("--out", out_file, "write circuit JSON here instead of the output stream");
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "exact <0|C|init> of a circuit");
  simulate_cmd->add_option("--circuit", circuit_file, "circuit JSON file")->required();
  simulate_cmd->add_flag("--all", all_amps, "also list every nonzero output amplitude");
  CLI::App* countsat_cmd = app.add_subcommand("countsat", "brute-force model count");
  countsat_cmd->add_option("--cnf", cnf_file, "DIMACS file")->required();
  CLI::App* compile_cmd = app.add_subcommand("compile", "compile a circuit into a Dehn twist word");
  compile_cmd->add_option("--circuit", circuit_file, "circuit JSON file")->required();
  compile_cmd->add_option("--epsilon", epsilon, "total error budget")->check(CLI::PositiveNumber);
  compile_cmd->add_option("--genus", genus, "genus, equal to the wire count")->required();
  compile_cmd->add_option("--out", out_file, "write the splitting here");
  compile_cmd->add_option("--cache-dir", cache_dir, "net cache directory (default: FIBWRT_CACHE_DIR or ./fibwrt-cache)");
  compile_cmd->add_option("--net-length", net_length, "override the configured net word length");
  CLI::App* selfcheck_cmd = app.add_subcommand("selfcheck", "search convention sets by move invariance");
  selfcheck_cmd->add_option("--write-config", write_config, "write the selected conventions");
  selfcheck_cmd->add_option("--cases", cases, "random splittings per convention set")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fibwrt: " << e.what() << "\n";
    return 2;
  }
  if (ctx.threads > 0) set_thread_count(ctx.threads);
  const mpfr_prec_t bits = ctx.precision;

  try {
    if (*eval_cmd) {
      const Representation rep(ctx.conventions());
      const WrtValue w = wrt_eval(rep, splitting_arg(split_file, split_text));
      if (ctx.json_mode) out << value_json(w, bits).dump() << "\n";
      else out << render_wrt(w, bits) << "\n";
      return 0;
    }
    if (*dim_cmd) {
      const CategoryData cat = dataset_by_name(ctx.conventions().dataset);
      const long b = static_cast<long>(FusionBasis(build_spine(genus), cat).size());
      const long v = verlinde_dim(genus, cat);
      if (ctx.json_mode) out << json{{"genus", genus}, {"basis", b}, {"verlinde", v}, {"match", b == v}}.dump() << "\n";
      else out << "DIM " << b << " (Verlinde " << v << ", genus " << genus << ")\n";
      if (b != v) {
        err << "fibwrt: basis size disagrees with the Verlinde count\n";
        return 2;
      }
      return 0;
    }
    if (*moves_cmd) {
      const Conventions conv = ctx.conventions();
      const Splitting s = splitting_arg(split_file, split_text);
      const Certificate c = certificate_arg(cert_file, cert_text);
      try {
        const Splitting t = apply_certificate(s, c, HandlebodyGenerators(conv.ordering), conv);
        if (!out_file.empty()) write_text(out_file, serialize_splitting(t) + "\n");
        if (ctx.json_mode) out << json{{"result", "splitting"}, {"splitting", splitting_json(t)}}.dump() << "\n";
        else out << "SPLITTING " << serialize_splitting(t) << "\n";
        return 0;
      } catch (const Rejection& r) {
        if (ctx.json_mode)
          out << json{{"result", "reject"}, {"stage", 1}, {"reason", r.reason}, {"position", r.position}}.dump() << "\n";
        else out << "REJECT 1 " << r.reason << " " << r.position << "\n";
        err << "fibwrt: " << r.what() << "\n";
        return 1;
      }
    }
    if (*verify_cmd) {
      const Conventions conv = ctx.conventions();
      const Representation rep(conv);
      const GenusBoundPolicy policy = GenusBoundPolicy::parse(q_text, conv.log_base);
      const VerifierOutcome o = verify_and_eval(rep, splitting_arg(split_file, split_text),
                                                certificate_arg(cert_file, cert_text), policy,
                                                HandlebodyGenerators(conv.ordering));
      if (ctx.json_mode) {
        json j;
        switch (o.kind) {
          case VerifierOutcome::Kind::Value:
            j = {{"result", "value"}, {"value", value_json(o.value, bits)}, {"splitting", splitting_json(o.final_splitting)}};
            break;
          case VerifierOutcome::Kind::Reject:
            j = {{"result", "reject"}, {"stage", o.stage}, {"reason", o.reason}, {"position", o.position}};
            break;
          case VerifierOutcome::Kind::Error:
            j = {{"result", "error"}, {"stage", o.stage}, {"message", o.message}};
            break;
        }
        out << j.dump() << "\n";
      } else if (o.kind == VerifierOutcome::Kind::Error) {
        err << "fibwrt: " << o.message << "\n";
      } else {
        out << o.render(bits) << "\n";
      }
      if (o.kind == VerifierOutcome::Kind::Reject && !o.message.empty()) err << "fibwrt: " << o.message << "\n";
      return o.exit_code();
    }
    if (*reduce_cmd) {
      const Circuit c = build_hardness_circuit(parse_dimacs(read_text(cnf_file)));
      const std::string text = circuit_to_json(c).dump() + "\n";
      if (!out_file.empty()) write_text(out_file, text);
      else out << text;
      return 0;
    }
    if (*simulate_cmd) {
      const Conventions conv = ctx.conventions();
      const Circuit c = circuit_from_json(json::parse(read_text(circuit_file)));
      const ExactState s = simulate(c, conv.wire_cap);
      const RootTwoInteger e = s.amplitude(0);
      const std::string f = e.to_bigfloat(bits + 32).to_string(render_digits(bits));
      if (ctx.json_mode) {
        json j{{"entry", e.to_string()}, {"m", e.m().get_str()}, {"k", e.k()}, {"float", f}};
        if (all_amps) {
          json amps = json::array();
          for (std::size_t i = 0; i < s.amp.size(); ++i)
            if (s.amp[i] != 0) amps.push_back({{"index", i}, {"amplitude", s.amplitude(i).to_string()}});
          j["amplitudes"] = amps;
        }
        out << j.dump() << "\n";
      } else {
        out << "ENTRY " << e.to_string() << " \xE2\x89\x88 " << f << "\n";
        if (all_amps)
          for (std::size_t i = 0; i < s.amp.size(); ++i) {
            if (s.amp[i] == 0) continue;
            std::string bitsstr;
            for (int w = 0; w < c.wires; ++w) bitsstr += ((i >> w) & 1U) ? '1' : '0';
            out << "AMP " << bitsstr << " " << s.amplitude(i).to_string() << "\n";
          }
      }
      return 0;
    }
    if (*countsat_cmd) {
      const mpz_class n = count_sat_bruteforce(parse_dimacs(read_text(cnf_file)), ctx.conventions().countsat_cap);
      if (ctx.json_mode) out << json{{"count", n.get_str()}}.dump() << "\n";
      else out << "COUNT " << n.get_str() << "\n";
      return 0;
    }
    if (*compile_cmd) {
      const Conventions conv = ctx.conventions();
      const Circuit c = circuit_from_json(json::parse(read_text(circuit_file)));
      if (c.wires != genus) throw std::invalid_argument("circuit has " + std::to_string(c.wires) + " wires, genus is " + std::to_string(genus));
      const Representation rep(conv);
      const GeneratorSet set = mcg_generator_set(rep, genus);
      NetCache net(set, net_length > 0 ? net_length : conv.net_length);
      std::filesystem::path dir = cache_dir;
      if (dir.empty()) {
        const char* env = std::getenv("FIBWRT_CACHE_DIR");
        dir = env ? env : "fibwrt-cache";
      }
      const bool hit = net.load_or_build(dir);
      err << "fibwrt: net of " << net.size() << " words " << (hit ? "loaded from " : "written to ") << net.path_in(dir)
          << "\n";
      const PipelineReport r = compile_circuit_to_splitting(c, epsilon, rep, net);
      const auto v = rep.at(genus).apply_word(rep.at(genus).vacuum(), r.splitting.word);
      const std::complex<double> rhs = v[0].to_complex_double();
      const double lhs = circuit_unitary(c)(0, 0).real();
      const double gap = std::abs(lhs - rhs);
      // hardness-grade budget D^{1-g} / 2^{g+1}, reported only
      const double dtot = total_dimension_in_field()->to_complex_double().real();
      const double target = std::pow(dtot, 1 - genus) / std::ldexp(1.0, genus + 1);
      if (!out_file.empty()) write_text(out_file, serialize_splitting(r.splitting) + "\n");
      if (ctx.json_mode) {
        json gates = json::array();
        for (const auto& w : r.gate_words)
          gates.push_back({{"word", twist_word(set, w.word)}, {"length", w.length()}, {"error", w.error}});
        out << json{{"splitting", splitting_json(r.splitting)}, {"gates", gates}, {"epsilon", epsilon},
                    {"per_gate_budget", r.per_gate_budget}, {"bound", r.bound}, {"entry_circuit", lhs},
                    {"entry_word_re", rhs.real()}, {"entry_word_im", rhs.imag()}, {"entry_gap", gap},
                    {"hardness_budget", target}}
                   .dump()
            << "\n";
      } else {
        out << "SPLITTING " << serialize_splitting(r.splitting) << "\n";
        for (std::size_t i = 0; i < r.gate_words.size(); ++i)
          out << "GATE " << i + 1 << " length " << r.gate_words[i].length() << " error " << r.gate_words[i].error
              << "\n";
        out << "BOUND " << r.bound << " (budget " << epsilon << ")\n";
        out << "CHECK |<0|C|0> - <0|rho(w)|0>| = " << gap << "\n";
        out << "HARDNESS-BUDGET " << target << " (not attempted)\n";
      }
      return 0;
    }
    if (*selfcheck_cmd) {
      SearchOptions opt;
      opt.cases = cases;
      Conventions base = ctx.config_path.empty() ? Conventions{} : load_conventions(ctx.config_path);
      const SearchResult res = search_conventions(opt, base);
      json trials = json::array();
      for (const auto& t : res.trials) {
        const std::string name = t.conventions.dataset + " " + to_string(t.conventions.ordering) + " \"" +
                                 suffix_to_string(t.conventions.suffix) + "\" " +
                                 to_string(t.conventions.b_normalization);
        if (ctx.json_mode) {
          json jt = {{"conventions", conventions_to_json(t.conventions)}, {"passed", t.passed}, {"failure", t.failure}};
          if (t.kappa) jt["kappa"] = t.kappa->to_string();
          trials.push_back(jt);
        } else {
          out << "TRIAL " << name << ": " << (t.passed ? "PASS" : "FAIL " + t.failure) << "\n";
        }
      }
      if (res.selected && !write_config.empty()) save_conventions(*res.selected, write_config);
      if (ctx.json_mode) {
        json j{{"trials", trials}};
        if (res.selected) {
          j["selected"] = conventions_to_json(*res.selected);
          j["kappa"] = res.kappa->to_string();
        }
        out << j.dump() << "\n";
      } else if (res.selected) {
        out << "SELECTED " << conventions_to_json(*res.selected).dump() << "\n";
        out << "KAPPA " << res.kappa->to_string() << "\n";
      } else {
        out << "SELECTED none\n";
      }
      return res.selected ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "fibwrt: parse error at " << e.position << ": " << e.what() << "\n";
    return 2;
  } catch (const DimacsError& e) {
    err << "fibwrt: line " << e.line << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "fibwrt: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace fibwrt
