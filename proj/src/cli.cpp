/*
 * Copyright (c) 2026, The otcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "otcheck/cli.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "otcheck/report.hpp"

namespace otcheck {

namespace {

std::string join_ints(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string describe(const ExplorerConfig& cfg) {
  std::string out = "alg=" + std::string(to_string(cfg.alg)) + " model=" + to_string(cfg.model) +
                    " sites=" + std::to_string(cfg.nb_sites) + " iters=" + join_ints(cfg.iter, ",") +
                    " window=" + std::to_string(cfg.window_length()) +
                    " alphabet=" + std::to_string(cfg.alphabet);
  if (!cfg.initial.empty()) out += " initial=" + join_ints(cfg.initial, ",");
  if (!cfg.deps.empty()) {
    out += " deps=";
    for (std::size_t i = 0; i < cfg.deps.size(); ++i) out += (i ? "," : "") + format_dep(cfg.deps[i]);
  }
  return out;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string op_text(const TransformableOp& op) {
  std::string out = to_string(op.signature());
  if (op.kind != OpKind::Ins || (op.ext.ip == op.pos && !op.ext.av && !op.ext.ap)) return out;
  auto set = [](OpIdSet s) {
    std::string r = "{";
    for (OpIdSet rest = s; rest; rest &= rest - 1) {
      const int id = std::countr_zero(rest);
      r += (r.size() > 1 ? "," : "") +
           (id >= kSyntheticDelete ? "D" + std::to_string(id - kSyntheticDelete) : std::to_string(id));
    }
    return r + "}";
  };
  return out + " ip=" + std::to_string(op.ext.ip) + " av=" + set(op.ext.av) + " ap=" + set(op.ext.ap);
}

void print_divergence(std::ostream& out, const Counterexample& ce) {
  out << "sites " << ce.site_a << " and " << ce.site_b << " differ at cells "
      << join_ints(ce.divergent_cells, " ") << "\n\n"
      << render_trace_table(ce);
}

int run_explore(const ExplorerConfig& cfg, const std::string& out_path, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ExploreResult res = explore(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunReport report{cfg, res.verdict, res.counterexample, res.stats};
  out << describe(cfg) << "\n";
  out << "verdict: " << to_string(res.verdict) << "\n";
  out << "states " << res.stats.states << ", assignments " << res.stats.assignments << ", time "
      << seconds(wall) << " s\n";
  if (res.counterexample) print_divergence(out, *res.counterexample);
  if (!out_path.empty()) write_file(out_path, to_json(report));
  switch (res.verdict) {
    case Verdict::Converged:
      return kExitConverged;
    case Verdict::Diverged:
      return kExitDiverged;
    case Verdict::Aborted:
      return kExitAborted;
  }
  return kExitUsage;
}

int run_check(TPKind kind, AlgorithmId alg, const PropertyBounds& bounds, const std::string& out_path,
              std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  PropertyReport report;
  report.kind = kind;
  report.alg = alg;
  report.bounds = bounds;
  report.space = kind == TPKind::TP1 ? tp1_space(bounds) : tp2_space(bounds);
  report.violation = kind == TPKind::TP1 ? check_tp1(alg, bounds) : check_tp2(alg, bounds);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const char* name = kind == TPKind::TP1 ? "TP1" : "TP2";
  out << "check " << name << " alg=" << to_string(alg) << " pmax=" << bounds.pmax
      << " alphabet=" << bounds.alphabet << " window=" << bounds.window_length()
      << " synthExt=" << (bounds.synth_ext ? "on" : "off") << "\n";
  if (!report.violation) {
    out << "verdict: " << name << " holds within bounds (" << report.space << " cases, " << seconds(wall)
        << " s)\n";
  } else {
    const TPViolation& v = *report.violation;
    out << "verdict: " << name << " violated (case " << v.index << " of " << report.space << ", "
        << seconds(wall) << " s)\n";
    const char* names[] = {"o", "o1", "o2"};
    const std::size_t first = kind == TPKind::TP1 ? 1 : 0;
    for (std::size_t i = 0; i < v.ops.size(); ++i) {
      out << "  " << names[first + i] << " = " << op_text(v.ops[i]) << " (site " << v.ops[i].id << ")\n";
    }
    if (kind == TPKind::TP1) {
      out << "  text          " << v.window.to_string() << "\n"
          << "  o1; IT(o2,o1) " << v.text1.to_string() << "   IT(o2,o1) = " << op_text(v.result1) << "\n"
          << "  o2; IT(o1,o2) " << v.text2.to_string() << "   IT(o1,o2) = " << op_text(v.result2) << "\n";
    } else {
      out << "  IT*(o, [o1; IT(o2,o1)]) = " << op_text(v.result1) << "\n"
          << "  IT*(o, [o2; IT(o1,o2)]) = " << op_text(v.result2) << "\n";
    }
  }
  if (!out_path.empty()) write_file(out_path, to_json(report));
  return report.violation ? kExitDiverged : kExitConverged;
}

std::string entry_text(const HistoryEntry& e) {
  std::string out = std::to_string(e.op_id) + " " + to_string(e.kind);
  if (e.kind != OpKind::Nop) out += " " + std::to_string(e.pos);
  return out;
}

// A recorded Nop carries no meaningful position.
bool matches(const HistoryEntry& want, const HistoryEntry& got) {
  if (want.op_id != got.op_id || want.kind != got.kind) return false;
  return want.kind == OpKind::Nop || (want.pos == got.pos && want.av == got.av && want.ap == got.ap);
}

int run_replay(const std::string& path, int threads, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const std::string text = read_file(path);
  Scenario sc = scenario_from_json(text);
  sc.config.threads = threads;
  const auto recorded = recorded_runs(text);
  const ReplayResult result = replay(sc);

  // Certification: every recorded execution and final text must be reproduced.
  for (std::size_t s = 0; s < recorded.size(); ++s) {
    const SiteRun& got = result.sites[s];
    const std::string sp = "sites[" + std::to_string(s) + "]";
    for (std::size_t i = 0; i < recorded[s].trace.size(); ++i) {
      const auto& want = recorded[s].trace[i];
      if (want && !matches(*want, got.trace[i])) {
        err << "otcheck: " << path << ": " << sp << ".trace[" << i << "]: recorded " << entry_text(*want)
            << ", replay gives " << entry_text(got.trace[i]) << "\n";
        return kExitUsage;
      }
    }
    if (recorded[s].final_text && *recorded[s].final_text != got.final_text.to_vector()) {
      err << "otcheck: " << path << ": " << sp << ".finalText: recorded "
          << join_ints(*recorded[s].final_text, " ") << ", replay gives " << got.final_text.to_string() << "\n";
      return kExitUsage;
    }
  }

  const auto ce = divergence_of(sc, result);
  out << "replay " << path << "\n" << describe(sc.config) << "\n";
  out << "verdict: " << to_string(ce ? Verdict::Diverged : Verdict::Converged) << "\n";
  if (ce) {
    print_divergence(out, *ce);
  } else {
    out << "\n" << render_trace_table(sc.config, result.ops, result.sites);
  }
  if (!out_path.empty()) {
    RunReport report;
    report.config = sc.config;
    report.verdict = ce ? Verdict::Diverged : Verdict::Converged;
    report.counterexample = ce;
    write_file(out_path, to_json(report));
  }
  return ce ? kExitDiverged : kExitConverged;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exhaustive convergence checker for operational transformation functions."};
  app.name("otcheck");
  std::string alg_name;
  std::string model_name = "symbolic";
  std::string deps_text;
  std::string check_name;
  std::string out_path;
  std::string replay_path;
  std::vector<int> iters;
  std::vector<int> initial;
  int sites = 0;
  int window = 0;
  int alphabet = 2;
  int pmax = 4;
  int threads = 1;
  bool synth = false;
  std::uint64_t budget = 0;

  auto* o_alg = app.add_option("--alg", alg_name, "ellis | ressel | sun | suleiman | imine");
  auto* o_sites = app.add_option("--sites", sites, "number of sites (default: length of --iters, else 2)");
  auto* o_iters = app.add_option("--iters", iters, "local operations per site, e.g. 1,1,1")->delimiter(',');
  auto* o_window = app.add_option("--window", window, "observed window length L");
  auto* o_alphabet = app.add_option("--alphabet", alphabet, "alphabet size A (default 2)");
  auto* o_initial = app.add_option("--initial", initial, "initial text prefix, e.g. 0,0,0,0")->delimiter(',');
  auto* o_model = app.add_option(
      "--model", model_name,
      "concrete | concrete-preselect | concrete-covering | symbolic | symbolic-prenumber | "
      "symbolic-earlystop | symbolic-fixeddeps (default symbolic)");
  auto* o_deps = app.add_option("--deps", deps_text, "dependency pairs for symbolic-fixeddeps, e.g. \"0>1,2>3\"");
  auto* o_check = app.add_option("--check", check_name, "tp1 | tp2: check a transformation property instead");
  auto* o_pmax = app.add_option("--pmax", pmax, "largest position for --check (default 4)");
  auto* o_synth = app.add_flag("--synth-ext,!--no-synth-ext", synth,
                               "synthetic ip/av/ap values for --check (default: on for tp2, off for tp1)");
  auto* o_budget = app.add_option("--budget-states", budget, "abort after this many states (0 = unbounded)");
  app.add_option("--out", out_path, "write the JSON report to this path");
  auto* o_replay = app.add_option("--replay", replay_path, "replay and certify a scenario or report file");
  app.add_option("--threads", threads, "OpenMP threads for signature sweeps (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitConverged;
  } catch (const CLI::ParseError& e) {
    err << "otcheck: " << e.what() << "\n";
    return kExitUsage;
  }

  auto reject = [&](std::initializer_list<const CLI::Option*> opts, const std::string& mode) {
    for (const auto* o : opts) {
      if (o->count()) throw ConfigError(o->get_name() + " cannot be combined with " + mode);
    }
  };

  try {
    if (threads < 1) throw ConfigError("--threads must be at least 1");
    if (o_replay->count()) {
      reject({o_alg, o_sites, o_iters, o_window, o_alphabet, o_initial, o_model, o_deps, o_check, o_pmax, o_synth,
              o_budget},
             "--replay");
      return run_replay(replay_path, threads, out_path, out, err);
    }
    if (!o_alg->count()) throw ConfigError("--alg is required");
    const auto alg = parse_algorithm(alg_name);
    if (!alg) throw ConfigError("unknown algorithm '" + alg_name + "'");

    if (o_check->count()) {
      reject({o_sites, o_iters, o_initial, o_model, o_deps, o_budget}, "--check");
      if (check_name != "tp1" && check_name != "tp2") throw ConfigError("--check must be tp1 or tp2");
      const TPKind kind = check_name == "tp1" ? TPKind::TP1 : TPKind::TP2;
      PropertyBounds bounds;
      bounds.pmax = pmax;
      bounds.alphabet = alphabet;
      bounds.window = window;
      bounds.synth_ext = o_synth->count() ? synth : kind == TPKind::TP2;
      bounds.threads = threads;
      bounds.validate();
      return run_check(kind, *alg, bounds, out_path, out);
    }
    reject({o_pmax, o_synth}, "an explorer run (use --check)");

    ExplorerConfig cfg;
    cfg.alg = *alg;
    const auto model = parse_model(model_name);
    if (!model) throw ConfigError("unknown model '" + model_name + "'");
    cfg.model = *model;
    cfg.nb_sites = o_sites->count() ? sites : (iters.empty() ? 2 : static_cast<int>(iters.size()));
    cfg.iter = iters.empty() ? std::vector<int>(static_cast<std::size_t>(std::max(cfg.nb_sites, 0)), 1) : iters;
    cfg.alphabet = alphabet;
    cfg.initial = initial;
    cfg.deps = parse_deps(deps_text);
    if (o_deps->count() && cfg.model != Model::SymbolicFixedDeps) {
      throw ConfigError("--deps requires --model symbolic-fixeddeps");
    }
    cfg.budget_states = budget;
    cfg.threads = threads;
    cfg.window = window;
    cfg.validate();
    cfg.window = cfg.window_length();
    return run_explore(cfg, out_path, out);
  } catch (const ConfigError& e) {
    err << "otcheck: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    err << "otcheck: " << e.what() << "\n";
  } catch (const ScenarioError& e) {
    err << "otcheck: " << (replay_path.empty() ? "" : replay_path + ": ") << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "otcheck: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace otcheck
