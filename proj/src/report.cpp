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

#include "otcheck/report.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace otcheck {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------- helpers

std::vector<Dependency> parse_deps(std::string_view text) {
  std::vector<Dependency> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    const auto gt = item.find('>');
    int a = 0;
    int b = 0;
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    try {
      if (gt == std::string::npos) throw std::invalid_argument("");
      a = std::stoi(item.substr(0, gt), &used_a);
      b = std::stoi(item.substr(gt + 1), &used_b);
    } catch (const std::exception&) {
      throw ConfigError("bad dependency '" + item + "', expected a>b");
    }
    if (used_a != gt || used_b != item.size() - gt - 1) {
      throw ConfigError("bad dependency '" + item + "', expected a>b");
    }
    out.emplace_back(a, b);
  }
  return out;
}

std::string format_dep(const Dependency& dep) {
  return std::to_string(dep.first) + ">" + std::to_string(dep.second);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

namespace {

Json set_json(OpIdSet set) {
  Json out = Json::array();
  for (OpIdSet rest = set; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest));
  return out;
}

Json cells_json(const DocWindow& win) {
  Json out = Json::array();
  for (int c : win.to_vector()) out.push_back(c);
  return out;
}

Json config_json(const ExplorerConfig& cfg) {
  Json deps = Json::array();
  for (const auto& d : cfg.deps) deps.push_back(format_dep(d));
  return Json{{"alg", to_string(cfg.alg)},
              {"model", to_string(cfg.model)},
              {"sites", cfg.nb_sites},
              {"iters", cfg.iter},
              {"window", cfg.window_length()},
              {"alphabet", cfg.alphabet},
              {"initial", cfg.initial},
              {"deps", deps},
              {"budgetStates", cfg.budget_states}};
}

Json entry_json(const HistoryEntry& e, const OpsTable& ops) {
  Json out{{"opId", e.op_id},
           {"kind", to_string(e.kind)},
           {"pos", e.pos},
           {"ch", static_cast<int>(ops[e.op_id].sig.ch)}};
  if (e.av) out["av"] = set_json(e.av);
  if (e.ap) out["ap"] = set_json(e.ap);
  return out;
}

// Field access with path-qualified errors.
class Reader {
 public:
  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

  static const Json& member(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing");
    return *it;
  }
  static const Json* optional(const Json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }
  static long long integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }
  static int small(const Json& v, const std::string& path) {
    const long long x = integer(v, path);
    if (x < -1000000 || x > 1000000) fail(path, "integer out of range");
    return static_cast<int>(x);
  }
  static std::string string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }
  static const Json& array(const Json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
  }
  static std::vector<int> ints(const Json& v, const std::string& path) {
    std::vector<int> out;
    const Json& arr = array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(small(arr[i], index(path, i)));
    return out;
  }
  static OpIdSet id_set(const Json& v, const std::string& path) {
    OpIdSet out = 0;
    const Json& arr = array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const int id = small(arr[i], index(path, i));
      if (id < 0 || id >= kMaxOpIdSetBits) fail(index(path, i), "operation id out of range");
      out |= OpIdSet{1} << id;
    }
    return out;
  }
  static OpKind kind(const Json& v, const std::string& path, bool allow_nop) {
    const std::string s = string(v, path);
    if (s == "Del") return OpKind::Del;
    if (s == "Ins") return OpKind::Ins;
    if (s == "Nop" && allow_nop) return OpKind::Nop;
    fail(path, "unknown kind '" + s + "'");
  }
};

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("<root>: invalid JSON: ") + e.what());
  }
}

ExplorerConfig config_from(const Json& root) {
  using R = Reader;
  const std::string p = "config";
  const Json& c = R::member(root, "", p);
  ExplorerConfig cfg;
  const std::string alg = R::string(R::member(c, p, "alg"), R::join(p, "alg"));
  const auto a = parse_algorithm(alg);
  if (!a) R::fail(R::join(p, "alg"), "unknown algorithm '" + alg + "'");
  cfg.alg = *a;
  const std::string model = R::string(R::member(c, p, "model"), R::join(p, "model"));
  const auto m = parse_model(model);
  if (!m) R::fail(R::join(p, "model"), "unknown model '" + model + "'");
  cfg.model = *m;
  cfg.nb_sites = R::small(R::member(c, p, "sites"), R::join(p, "sites"));
  cfg.iter = R::ints(R::member(c, p, "iters"), R::join(p, "iters"));
  cfg.window = R::small(R::member(c, p, "window"), R::join(p, "window"));
  cfg.alphabet = R::small(R::member(c, p, "alphabet"), R::join(p, "alphabet"));
  if (const Json* v = R::optional(c, "initial")) cfg.initial = R::ints(*v, R::join(p, "initial"));
  if (const Json* v = R::optional(c, "deps")) {
    const std::string dp = R::join(p, "deps");
    const Json& arr = R::array(*v, dp);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      try {
        for (const auto& d : parse_deps(R::string(arr[i], R::index(dp, i)))) cfg.deps.push_back(d);
      } catch (const ConfigError& e) {
        R::fail(R::index(dp, i), e.what());
      }
    }
  }
  if (const Json* v = R::optional(c, "budgetStates")) {
    const long long b = R::integer(*v, R::join(p, "budgetStates"));
    if (b < 0) R::fail(R::join(p, "budgetStates"), "must be non-negative");
    cfg.budget_states = static_cast<std::uint64_t>(b);
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    R::fail(p, e.what());
  }
  return cfg;
}

struct SignatureRow {
  int owner = 0;
  OpSignature sig;
  std::optional<VectorClock> clock;
};

std::vector<SignatureRow> signatures_from(const Json& root, const ExplorerConfig& cfg) {
  using R = Reader;
  const std::string p = "signatures";
  const Json& arr = R::array(R::member(root, "", p), p);
  if (arr.size() > static_cast<std::size_t>(kMaxOps)) R::fail(p, "too many operations");
  std::vector<SignatureRow> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string ip = R::index(p, i);
    const Json& s = arr[i];
    if (const Json* id = R::optional(s, "id"); id && R::integer(*id, R::join(ip, "id")) != static_cast<long long>(i)) {
      R::fail(R::join(ip, "id"), "ids must be 0, 1, 2, ... in order");
    }
    SignatureRow row;
    row.owner = R::small(R::member(s, ip, "owner"), R::join(ip, "owner"));
    if (row.owner < 0 || row.owner >= cfg.nb_sites) R::fail(R::join(ip, "owner"), "no such site");
    const OpKind kind = R::kind(R::member(s, ip, "kind"), R::join(ip, "kind"), false);
    const int pos = R::small(R::member(s, ip, "pos"), R::join(ip, "pos"));
    int ch = 0;
    if (kind == OpKind::Ins) {
      ch = R::small(R::member(s, ip, "ch"), R::join(ip, "ch"));
      if (ch < 0 || ch >= cfg.alphabet) R::fail(R::join(ip, "ch"), "outside the alphabet");
    }
    if (pos < 0 || pos >= cfg.window_length()) R::fail(R::join(ip, "pos"), "outside the window");
    row.sig = generated_signature(kind, pos, static_cast<Element>(ch), row.owner);
    if (const Json* v = R::optional(s, "clock")) {
      const auto entries = R::ints(*v, R::join(ip, "clock"));
      if (static_cast<int>(entries.size()) != cfg.nb_sites) R::fail(R::join(ip, "clock"), "one entry per site expected");
      VectorClock clock(cfg.nb_sites);
      for (int k = 0; k < cfg.nb_sites; ++k) {
        const int e = entries[static_cast<std::size_t>(k)];
        if (e < 0 || e > kMaxOps) R::fail(R::index(R::join(ip, "clock"), static_cast<std::size_t>(k)), "out of range");
        for (int t = 0; t < e; ++t) clock.increment(k);
      }
      row.clock = clock;
    }
    out.push_back(row);
  }
  return out;
}

const Json& sites_array(const Json& root, const ExplorerConfig& cfg) {
  using R = Reader;
  const Json& arr = R::array(R::member(root, "", "sites"), "sites");
  if (static_cast<int>(arr.size()) != cfg.nb_sites) {
    R::fail("sites", "expected " + std::to_string(cfg.nb_sites) + " entries");
  }
  for (std::size_t s = 0; s < arr.size(); ++s) {
    if (const Json* id = R::optional(arr[s], "id"); id && R::integer(*id, R::join(R::index("sites", s), "id")) != static_cast<long long>(s)) {
      R::fail(R::join(R::index("sites", s), "id"), "sites must be listed in order");
    }
  }
  return arr;
}

OpId trace_op(const Json& item, const std::string& path, int nb_ops) {
  using R = Reader;
  const int id = item.is_object() ? R::small(R::member(item, path, "opId"), R::join(path, "opId"))
                                  : R::small(item, path);
  if (id < 0 || id >= nb_ops) R::fail(item.is_object() ? R::join(path, "opId") : path, "unknown operation");
  return id;
}

Scenario scenario_from(const Json& root) {
  Scenario sc;
  sc.config = config_from(root);
  for (const auto& row : signatures_from(root, sc.config)) {
    sc.owners.push_back(row.owner);
    sc.signatures.push_back(row.sig);
  }
  const Json& sites = sites_array(root, sc.config);
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const std::string sp = Reader::join(Reader::index("sites", s), "trace");
    const Json& trace = Reader::array(Reader::member(sites[s], Reader::index("sites", s), "trace"), sp);
    std::vector<OpId> ids;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      ids.push_back(trace_op(trace[i], Reader::index(sp, i), static_cast<int>(sc.owners.size())));
    }
    sc.traces.per_site.push_back(std::move(ids));
  }
  return sc;
}

std::vector<int> window_cells(const Json& v, const std::string& path, int len) {
  auto cells = Reader::ints(v, path);
  if (static_cast<int>(cells.size()) != len) {
    Reader::fail(path, "expected " + std::to_string(len) + " cells");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < kEmptyCell || cells[i] > 127) Reader::fail(Reader::index(path, i), "cell out of range");
  }
  return cells;
}

}  // namespace

// ------------------------------------------------------------- explorer runs

std::string to_json(const RunReport& report) {
  Json root;
  root["config"] = config_json(report.config);
  root["verdict"] = to_string(report.verdict);
  Json sigs = Json::array();
  Json sites = Json::array();
  Json cells = Json::array();
  Json pair = Json::array();
  if (report.counterexample) {
    const Counterexample& ce = *report.counterexample;
    for (const auto& op : ce.ops.ops()) {
      Json clock = Json::array();
      for (int k = 0; k < op.clock.size(); ++k) clock.push_back(op.clock[k]);
      sigs.push_back(Json{{"id", op.id},
                          {"owner", op.owner},
                          {"kind", to_string(op.sig.kind)},
                          {"pos", op.sig.pos},
                          {"ch", static_cast<int>(op.sig.ch)},
                          {"clock", clock}});
    }
    for (const auto& run : ce.sites) {
      Json trace = Json::array();
      for (const auto& e : run.trace) trace.push_back(entry_json(e, ce.ops));
      sites.push_back(Json{{"id", run.site}, {"trace", trace}, {"finalText", cells_json(run.final_text)}});
    }
    for (int c : ce.divergent_cells) cells.push_back(c);
    pair = Json::array({ce.site_a, ce.site_b});
  }
  root["signatures"] = sigs;
  root["sites"] = sites;
  root["divergentCells"] = cells;
  root["pair"] = pair;
  root["stats"] = Json{{"states", report.stats.states},
                       {"assignments", report.stats.assignments},
                       {"violations", report.stats.violations}};
  return root.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  using R = Reader;
  const Json root = parse_text(text);
  RunReport report;
  report.config = config_from(root);
  const std::string verdict = R::string(R::member(root, "", "verdict"), "verdict");
  bool known = false;
  for (Verdict v : {Verdict::Converged, Verdict::Diverged, Verdict::Aborted}) {
    if (verdict == to_string(v)) {
      report.verdict = v;
      known = true;
    }
  }
  if (!known) R::fail("verdict", "unknown verdict '" + verdict + "'");
  if (const Json* st = R::optional(root, "stats")) {
    report.stats.states = static_cast<std::uint64_t>(R::integer(R::member(*st, "stats", "states"), "stats.states"));
    report.stats.assignments =
        static_cast<std::uint64_t>(R::integer(R::member(*st, "stats", "assignments"), "stats.assignments"));
    report.stats.violations =
        static_cast<std::uint64_t>(R::integer(R::member(*st, "stats", "violations"), "stats.violations"));
  }
  if (report.verdict != Verdict::Diverged) return report;

  const ExplorerConfig& cfg = report.config;
  const auto rows = signatures_from(root, cfg);
  Counterexample ce;
  ce.config = cfg;
  const bool have_clocks = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.clock.has_value(); });
  if (have_clocks) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ce.ops.push_back({static_cast<OpId>(i), rows[i].owner, *rows[i].clock, rows[i].sig});
    }
    if (cfg.model == Model::SymbolicFixedDeps) {
      try {
        ce.ops.set_dependencies(cfg.deps, ce.ops.size());
      } catch (const std::invalid_argument& e) {
        R::fail("config.deps", e.what());
      }
    }
  } else {
    try {
      ce.ops = replay(scenario_from(root)).ops;
    } catch (const ScenarioError& e) {
      R::fail("sites", e.what());
    }
  }

  const Json& sites = sites_array(root, cfg);
  const int len = cfg.window_length();
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const std::string sp = R::index("sites", s);
    SiteRun run;
    run.site = static_cast<int>(s);
    const std::string tp = R::join(sp, "trace");
    const Json& trace = R::array(R::member(sites[s], sp, "trace"), tp);
    if (trace.size() > static_cast<std::size_t>(kMaxOps)) R::fail(tp, "too many entries");
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const std::string ep = R::index(tp, i);
      HistoryEntry e;
      e.op_id = trace_op(trace[i], ep, ce.ops.size());
      e.kind = R::kind(R::member(trace[i], ep, "kind"), R::join(ep, "kind"), true);
      e.pos = R::small(R::member(trace[i], ep, "pos"), R::join(ep, "pos"));
      if (const Json* v = R::optional(trace[i], "av")) e.av = R::id_set(*v, R::join(ep, "av"));
      if (const Json* v = R::optional(trace[i], "ap")) e.ap = R::id_set(*v, R::join(ep, "ap"));
      run.trace.push_back(e);
    }
    const auto cells = window_cells(R::member(sites[s], sp, "finalText"), R::join(sp, "finalText"), len);
    run.final_text = DocWindow(std::span<const int>(cells));
    ce.sites.push_back(std::move(run));
  }
  ce.divergent_cells = R::ints(R::member(root, "", "divergentCells"), "divergentCells");
  const auto pair = R::ints(R::member(root, "", "pair"), "pair");
  if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0 || pair[0] >= cfg.nb_sites || pair[1] >= cfg.nb_sites) {
    R::fail("pair", "expected two site ids");
  }
  ce.site_a = pair[0];
  ce.site_b = pair[1];
  report.counterexample = std::move(ce);
  return report;
}

void save_counterexample(const std::string& path, const Counterexample& ce) {
  RunReport report;
  report.config = ce.config;
  report.verdict = Verdict::Diverged;
  report.counterexample = ce;
  write_file(path, to_json(report));
}

Counterexample load_counterexample(const std::string& path) {
  RunReport report = report_from_json(read_file(path));
  if (!report.counterexample) throw SchemaError("verdict: the file records no counterexample");
  return std::move(*report.counterexample);
}

Scenario scenario_from_json(const std::string& text) { return scenario_from(parse_text(text)); }

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_file(path)); }

std::vector<RecordedRun> recorded_runs(const std::string& text) {
  using R = Reader;
  const Json root = parse_text(text);
  const ExplorerConfig cfg = config_from(root);
  const int nb_ops = static_cast<int>(R::array(R::member(root, "", "signatures"), "signatures").size());
  const Json& sites = sites_array(root, cfg);
  std::vector<RecordedRun> out;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const std::string sp = R::index("sites", s);
    const std::string tp = R::join(sp, "trace");
    const Json& trace = R::array(R::member(sites[s], sp, "trace"), tp);
    RecordedRun run;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const std::string ep = R::index(tp, i);
      const OpId id = trace_op(trace[i], ep, nb_ops);
      if (!trace[i].is_object() || !R::optional(trace[i], "kind")) {
        run.trace.emplace_back();
        continue;
      }
      HistoryEntry e;
      e.op_id = id;
      e.kind = R::kind(R::member(trace[i], ep, "kind"), R::join(ep, "kind"), true);
      if (e.kind != OpKind::Nop) e.pos = R::small(R::member(trace[i], ep, "pos"), R::join(ep, "pos"));
      if (const Json* v = R::optional(trace[i], "av")) e.av = R::id_set(*v, R::join(ep, "av"));
      if (const Json* v = R::optional(trace[i], "ap")) e.ap = R::id_set(*v, R::join(ep, "ap"));
      run.trace.push_back(e);
    }
    if (const Json* v = R::optional(sites[s], "finalText")) {
      run.final_text = window_cells(*v, R::join(sp, "finalText"), cfg.window_length());
    }
    out.push_back(std::move(run));
  }
  return out;
}

// ------------------------------------------------------------ property runs

namespace {

Json tp_op_json(const TransformableOp& op) {
  Json out{{"id", op.id}, {"kind", to_string(op.kind)}, {"pos", op.pos}, {"ch", static_cast<int>(op.ch)}};
  if (op.kind == OpKind::Ins) {
    out["ip"] = op.ext.ip;
    out["av"] = set_json(op.ext.av);
    out["ap"] = set_json(op.ext.ap);
  }
  return out;
}

}  // namespace

std::string to_json(const PropertyReport& report) {
  Json root;
  root["check"] = Json{{"property", report.kind == TPKind::TP1 ? "tp1" : "tp2"},
                       {"alg", to_string(report.alg)},
                       {"pmax", report.bounds.pmax},
                       {"alphabet", report.bounds.alphabet},
                       {"window", report.bounds.window_length()},
                       {"synthExt", report.bounds.synth_ext},
                       {"space", report.space}};
  root["verdict"] = report.violation ? "violated" : "holds";
  if (report.violation) {
    const TPViolation& v = *report.violation;
    Json ops = Json::array();
    for (const auto& op : v.ops) ops.push_back(tp_op_json(op));
    Json w{{"index", v.index}, {"ops", ops}};
    if (v.kind == TPKind::TP1) {
      w["window"] = cells_json(v.window);
      w["text1"] = cells_json(v.text1);
      w["text2"] = cells_json(v.text2);
    }
    w["result1"] = tp_op_json(v.result1);
    w["result2"] = tp_op_json(v.result2);
    root["violation"] = w;
  } else {
    root["violation"] = nullptr;
  }
  return root.dump(2) + "\n";
}

// ------------------------------------------------------------------- tables

namespace {

std::string entry_text(const HistoryEntry& e, const OpsTable& ops) {
  OpSignature sig{e.kind, e.pos, ops[e.op_id].sig.ch, {}};
  return std::to_string(e.op_id) + " " + to_string(sig);
}

}  // namespace

std::string render_trace_table(const ExplorerConfig& cfg, const OpsTable& ops,
                               const std::vector<SiteRun>& sites) {
  // Each cell holds one or more lines.
  using Cell = std::vector<std::string>;
  std::vector<std::pair<std::string, std::vector<Cell>>> rows;
  std::vector<Cell> header;
  std::vector<Cell> operations;
  std::vector<Cell> list;
  std::vector<Cell> text;
  std::vector<Cell> word;
  for (const auto& run : sites) {
    header.push_back({"Site " + std::to_string(run.site)});
    Cell own;
    for (const auto& op : ops.ops()) {
      if (op.owner == run.site) own.push_back(to_string(op.sig));
    }
    operations.push_back(own);
    Cell executed;
    for (const auto& e : run.trace) executed.push_back(entry_text(e, ops));
    list.push_back(executed);
    text.push_back({run.final_text.to_string()});
    word.push_back({run.final_text.digits()});
  }
  rows.emplace_back("Variables", header);
  rows.emplace_back("Operations", operations);
  rows.emplace_back("List", list);
  rows.emplace_back("text", text);
  if (cfg.alphabet <= 10) rows.emplace_back("word", word);

  std::size_t label_w = 0;
  std::vector<std::size_t> widths(sites.size(), 0);
  for (const auto& [label, cells] : rows) {
    label_w = std::max(label_w, label.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (const auto& line : cells[c]) widths[c] = std::max(widths[c], line.size());
    }
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::string rule = std::string(label_w + 2, '-');
  for (std::size_t w : widths) rule += "+" + std::string(w + 2, '-');
  rule += "\n";

  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [label, cells] = rows[r];
    std::size_t height = 1;
    for (const auto& cell : cells) height = std::max(height, cell.size());
    for (std::size_t line = 0; line < height; ++line) {
      std::string row = " " + pad(line == 0 ? label : "", label_w) + " ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        row += "| " + pad(line < cells[c].size() ? cells[c][line] : "", widths[c]) + " ";
      }
      while (!row.empty() && row.back() == ' ') row.pop_back();
      out += row + "\n";
    }
    if (r + 1 < rows.size()) out += rule;
  }
  return out;
}

std::string render_trace_table(const Counterexample& ce) {
  return render_trace_table(ce.config, ce.ops, ce.sites);
}

}  // namespace otcheck
