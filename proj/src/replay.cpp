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

#include <bit>
#include <string>

#include "otcheck/explorer.hpp"

namespace otcheck {

namespace {

std::string op_name(OpId id) { return "op " + std::to_string(id); }

OpsTable build_table(const Scenario& sc, OpIdSet& generated) {
  const int n = static_cast<int>(sc.owners.size());
  const int sites = sc.config.nb_sites;
  if (n > kMaxOps) throw ScenarioError("too many operations");
  if (sc.signatures.size() != sc.owners.size()) {
    throw ScenarioError("signature and owner lists differ in length");
  }
  if (static_cast<int>(sc.traces.per_site.size()) != sites) {
    throw ScenarioError("expected one trace per site");
  }
  OpsTable ops;
  for (OpId id = 0; id < n; ++id) {
    const int owner = sc.owners[static_cast<std::size_t>(id)];
    if (owner < 0 || owner >= sites) throw ScenarioError(op_name(id) + " has an unknown owner");
    const OpSignature& sig = sc.signatures[static_cast<std::size_t>(id)];
    if (sig.kind == OpKind::Nop) throw ScenarioError(op_name(id) + " is not an Ins or Del");
    ops.push_back({id, owner, VectorClock(sites), generated_signature(sig.kind, sig.pos, sig.ch, owner)});
  }
  if (sc.config.model == Model::SymbolicFixedDeps) {
    try {
      ops.set_dependencies(sc.config.deps, n);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
  }

  // Clocks come from each owner's own order: an op is stamped with what its
  // owner had executed before it.
  generated = 0;
  for (int s = 0; s < sites; ++s) {
    VectorClock clock(sites);
    OpIdSet seen = 0;
    OpId last_local = -1;
    for (OpId id : sc.traces.per_site[static_cast<std::size_t>(s)]) {
      if (id < 0 || id >= n) throw ScenarioError("site " + std::to_string(s) + " lists unknown " + op_name(id));
      if ((seen >> id) & 1U) throw ScenarioError("site " + std::to_string(s) + " executes " + op_name(id) + " twice");
      const OpIdSet seen_before = seen;
      seen |= OpIdSet{1} << id;
      if (ops[id].owner == s) {
        if (id < last_local) {
          throw ScenarioError("site " + std::to_string(s) + " generates " + op_name(id) + " after " +
                              op_name(last_local));
        }
        last_local = id;
        if (ops.fixed_dependencies() && ops.predecessors(id) != seen_before) {
          const OpIdSet extra = seen_before & ~ops.predecessors(id);
          const OpIdSet lacking = ops.predecessors(id) & ~seen_before;
          const OpId other = std::countr_zero(extra ? extra : lacking);
          throw ScenarioError("site " + std::to_string(s) + " generates " + op_name(id) +
                              (extra ? " after " : " before ") + op_name(other) +
                              ", contradicting the dependency relation (" +
                              (extra ? "no " : "") + std::to_string(other) + ">" + std::to_string(id) + ")");
        }
        ops[id].clock = clock;
        generated |= OpIdSet{1} << id;
      }
      clock.increment(ops[id].owner);
    }
  }
  for (int s = 0; s < sites; ++s) {
    for (OpId id : sc.traces.per_site[static_cast<std::size_t>(s)]) {
      if (!((generated >> id) & 1U)) {
        throw ScenarioError("site " + std::to_string(s) + " executes " + op_name(id) +
                            ", which its owner site " + std::to_string(ops[id].owner) +
                            " never executes");
      }
    }
  }
  return ops;
}

}  // namespace

ReplayResult replay(const Scenario& sc) {
  try {
    sc.config.validate();
  } catch (const ConfigError& e) {
    throw ScenarioError(e.what());
  }
  OpIdSet generated = 0;
  ReplayResult out;
  out.ops = build_table(sc, generated);
  const OpsTable& ops = out.ops;
  const int sites = sc.config.nb_sites;
  const DocWindow initial = sc.config.initial_window();

  std::vector<SiteState> state;
  std::vector<std::size_t> next(static_cast<std::size_t>(sites), 0);
  std::vector<OpIdSet> done(static_cast<std::size_t>(sites), 0);
  for (int s = 0; s < sites; ++s) state.push_back(SiteState::initial(s, sites, initial));

  auto missing_pred = [&](int s, OpId id) -> std::optional<OpId> {
    for (OpId a = 0; a < ops.size(); ++a) {
      if (a == id || !((generated >> a) & 1U) || !ops.happened_before(a, id)) continue;
      if (!((done[static_cast<std::size_t>(s)] >> a) & 1U)) return a;
    }
    return std::nullopt;
  };

  // Realize one global interleaving: repeatedly advance the lowest site whose
  // next operation is deliverable.
  for (;;) {
    bool finished = true;
    bool moved = false;
    for (int s = 0; s < sites && !moved; ++s) {
      const auto& trace = sc.traces.per_site[static_cast<std::size_t>(s)];
      const std::size_t j = next[static_cast<std::size_t>(s)];
      if (j == trace.size()) continue;
      finished = false;
      const OpId id = trace[j];
      const int owner = ops[id].owner;
      if (owner != s && !((done[static_cast<std::size_t>(owner)] >> id) & 1U)) continue;
      if (missing_pred(s, id)) continue;
      state[static_cast<std::size_t>(s)] = integrate(sc.config.alg, id, std::move(state[static_cast<std::size_t>(s)]), ops);
      done[static_cast<std::size_t>(s)] |= OpIdSet{1} << id;
      ++next[static_cast<std::size_t>(s)];
      moved = true;
    }
    if (moved) continue;
    if (finished) break;
    for (int s = 0; s < sites; ++s) {
      const auto& trace = sc.traces.per_site[static_cast<std::size_t>(s)];
      const std::size_t j = next[static_cast<std::size_t>(s)];
      if (j == trace.size()) continue;
      const OpId id = trace[j];
      if (const auto a = missing_pred(s, id)) {
        const bool exec_later = [&] {
          for (std::size_t i = j; i < trace.size(); ++i) {
            if (trace[i] == *a) return true;
          }
          return false;
        }();
        std::string msg = "site " + std::to_string(s) + " executes " + op_name(id) + " before " +
                          op_name(*a) + (exec_later ? "" : " (never executed there)");
        if (ops.fixed_dependencies()) {
          msg += ", violating dependency " + std::to_string(*a) + ">" + std::to_string(id);
        } else {
          msg += ", which happened before it";
        }
        throw ScenarioError(msg);
      }
    }
    throw ScenarioError("the site orders admit no causal interleaving");
  }

  for (int s = 0; s < sites; ++s) {
    out.sites.push_back({s, state[static_cast<std::size_t>(s)].history, state[static_cast<std::size_t>(s)].text});
  }
  return out;
}

std::optional<Counterexample> divergence_of(const Scenario& sc, const ReplayResult& result) {
  OpIdSet used = 0;
  for (const auto& trace : sc.traces.per_site) {
    for (OpId id : trace) used |= OpIdSet{1} << id;
  }
  auto stable = [&](const SiteRun& run) {
    OpIdSet mine = 0;
    for (const auto& e : run.trace) mine |= OpIdSet{1} << e.op_id;
    return mine == used;
  };
  const int n = static_cast<int>(result.sites.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = result.sites[static_cast<std::size_t>(i)];
      const auto& b = result.sites[static_cast<std::size_t>(j)];
      if (!stable(a) || !stable(b) || a.final_text == b.final_text) continue;
      Counterexample ce;
      ce.config = sc.config;
      ce.ops = result.ops;
      ce.sites = result.sites;
      ce.site_a = i;
      ce.site_b = j;
      ce.divergent_cells = diff_cells(a.final_text, b.final_text);
      return ce;
    }
  }
  return std::nullopt;
}

Scenario scenario_of(const Counterexample& ce) {
  Scenario sc;
  sc.config = ce.config;
  for (const auto& op : ce.ops.ops()) {
    sc.owners.push_back(op.owner);
    sc.signatures.push_back({op.sig.kind, op.sig.pos, op.sig.ch, {}});
  }
  sc.traces.per_site.resize(static_cast<std::size_t>(ce.config.nb_sites));
  for (const auto& run : ce.sites) {
    auto& trace = sc.traces.per_site[static_cast<std::size_t>(run.site)];
    for (const auto& e : run.trace) trace.push_back(e.op_id);
  }
  return sc;
}

}  // namespace otcheck
