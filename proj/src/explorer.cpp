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

#include "otcheck/explorer.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <memory>
#include <string_view>
#include <unordered_set>

#include <absl/container/flat_hash_set.h>

namespace otcheck {

const char* to_string(Model model) {
  switch (model) {
    case Model::Concrete:
      return "concrete";
    case Model::ConcretePreselect:
      return "concrete-preselect";
    case Model::ConcreteCovering:
      return "concrete-covering";
    case Model::Symbolic:
      return "symbolic";
    case Model::SymbolicPrenumber:
      return "symbolic-prenumber";
    case Model::SymbolicEarlyStop:
      return "symbolic-earlystop";
    case Model::SymbolicFixedDeps:
      return "symbolic-fixeddeps";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view name) {
  for (int m = 0; m <= static_cast<int>(Model::SymbolicFixedDeps); ++m) {
    if (name == to_string(static_cast<Model>(m))) return static_cast<Model>(m);
  }
  return std::nullopt;
}

bool is_symbolic(Model model) { return model >= Model::Symbolic; }

bool is_prenumbered(Model model) {
  return model == Model::ConcretePreselect || model == Model::ConcreteCovering ||
         model == Model::SymbolicPrenumber || model == Model::SymbolicEarlyStop ||
         model == Model::SymbolicFixedDeps;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Converged:
      return "converged";
    case Verdict::Diverged:
      return "diverged";
    case Verdict::Aborted:
      return "aborted";
  }
  return "?";
}

int ExplorerConfig::max_iter() const { return std::accumulate(iter.begin(), iter.end(), 0); }

int ExplorerConfig::window_length() const { return window > 0 ? window : 2 * max_iter(); }

DocWindow ExplorerConfig::initial_window() const {
  DocWindow win(window_length());
  for (std::size_t i = 0; i < initial.size(); ++i) win[static_cast<int>(i)] = static_cast<Element>(initial[i]);
  return win;
}

void ExplorerConfig::validate() const {
  if (nb_sites < 2 || nb_sites > kMaxSites) {
    throw ConfigError("--sites must be in [2, " + std::to_string(kMaxSites) + "]");
  }
  if (static_cast<int>(iter.size()) != nb_sites) {
    throw ConfigError("--iters lists " + std::to_string(iter.size()) + " counts for " +
                      std::to_string(nb_sites) + " sites");
  }
  for (int n : iter) {
    if (n < 0) throw ConfigError("--iters counts must be non-negative");
  }
  if (max_iter() > kMaxOps) throw ConfigError("at most " + std::to_string(kMaxOps) + " operations");
  const int len = window_length();
  if (len < 1 || len > kMaxWindow) {
    throw ConfigError("window length must be in [1, " + std::to_string(kMaxWindow) + "]");
  }
  if (alphabet < 1 || alphabet > 100) throw ConfigError("--alphabet must be in [1, 100]");
  if (static_cast<int>(initial.size()) > len) throw ConfigError("initial text longer than the window");
  for (int c : initial) {
    if (c < -1 || c >= alphabet) throw ConfigError("initial text cell outside the alphabet");
  }
  if (!deps.empty() && model != Model::SymbolicFixedDeps) {
    throw ConfigError("--deps only applies to --model symbolic-fixeddeps");
  }
  if (model == Model::SymbolicFixedDeps) {
    OpsTable probe;
    for (int s = 0, id = 0; s < nb_sites; ++s) {
      for (int l = 0; l < iter[static_cast<std::size_t>(s)]; ++l) probe.push_back({id++, s, VectorClock(nb_sites), {}});
    }
    try {
      probe.set_dependencies(deps, max_iter());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    for (int id = 1; id < probe.size(); ++id) {
      if (probe[id].owner == probe[id - 1].owner && !((probe.predecessors(id) >> (id - 1)) & 1U)) {
        throw ConfigError("ops " + std::to_string(id - 1) + " and " + std::to_string(id) + " of site " +
                          std::to_string(probe[id].owner) + " are generated in sequence; add --deps " +
                          std::to_string(id - 1) + ">" + std::to_string(id));
      }
    }
  }
  if (threads < 1) throw ConfigError("--threads must be at least 1");
  if (is_symbolic(model)) {
    const long double total = std::pow(static_cast<long double>(signature_count(len, alphabet)), max_iter());
    if (total > static_cast<long double>(std::numeric_limits<std::int64_t>::max())) {
      throw ConfigError("signature space too large for the symbolic sweep");
    }
  }
}

namespace {

// First op id of each site when ids are assigned site-major.
std::array<int, kMaxSites + 1> site_offsets(const ExplorerConfig& cfg) {
  std::array<int, kMaxSites + 1> off{};
  for (int s = 0; s < cfg.nb_sites; ++s) off[static_cast<std::size_t>(s + 1)] = off[static_cast<std::size_t>(s)] + cfg.iter[static_cast<std::size_t>(s)];
  return off;
}

}  // namespace

SystemState SystemState::initial(const ExplorerConfig& cfg) {
  SystemState st;
  const DocWindow text = cfg.initial_window();
  for (int s = 0; s < cfg.nb_sites; ++s) st.sites.push_back(SiteState::initial(s, cfg.nb_sites, text));
  if (is_prenumbered(cfg.model)) {
    const auto off = site_offsets(cfg);
    for (int s = 0; s < cfg.nb_sites; ++s) {
      for (int id = off[static_cast<std::size_t>(s)]; id < off[static_cast<std::size_t>(s + 1)]; ++id) {
        st.ops.push_back({id, s, VectorClock(cfg.nb_sites), OpSignature::nop()});
      }
    }
    if (cfg.model == Model::SymbolicFixedDeps) st.ops.set_dependencies(cfg.deps, st.ops.size());
  }
  return st;
}

bool stable_pair(const SystemState& state, int i, int j) {
  const int n = static_cast<int>(state.sites.size());
  for (int k = 0; k < n; ++k) {
    const int generated = state.sites[static_cast<std::size_t>(k)].clock[k];
    if (state.sites[static_cast<std::size_t>(i)].clock[k] != generated) return false;
    if (state.sites[static_cast<std::size_t>(j)].clock[k] != generated) return false;
  }
  return true;
}

const SiteRun& Counterexample::run_of(int site) const {
  for (const auto& run : sites) {
    if (run.site == site) return run;
  }
  throw std::out_of_range("no run for site " + std::to_string(site));
}

namespace {

using SteadyClock = std::chrono::steady_clock;

struct Clocks {
  std::array<VectorClock, kMaxSites> v;
  int n = 0;
  std::span<const VectorClock> span() const { return {v.data(), static_cast<std::size_t>(n)}; }
};

Clocks clocks_of(const SystemState& st) {
  Clocks c;
  c.n = static_cast<int>(st.sites.size());
  for (int s = 0; s < c.n; ++s) c.v[static_cast<std::size_t>(s)] = st.sites[static_cast<std::size_t>(s)].clock;
  return c;
}

void state_key(const SystemState& st, bool with_sigs, std::string& key) {
  key.clear();
  key.push_back(static_cast<char>(st.ns));
  for (const auto& op : st.ops.ops()) {
    key.push_back(static_cast<char>(op.owner));
    if (with_sigs) {
      key.push_back(static_cast<char>(op.sig.kind));
      key.push_back(static_cast<char>(op.sig.pos));
      key.push_back(static_cast<char>(op.sig.ch));
    }
  }
  for (const auto& site : st.sites) {
    key.push_back(static_cast<char>(site.history.size()));
    for (const auto& e : site.history) key.push_back(static_cast<char>(e.op_id));
  }
}

// Interned byte keys: one flat set of views into large append-only chunks,
// which keeps a visited state at roughly key size plus one slot.
class KeySet {
 public:
  bool insert(std::string_view key) {
    if (set_.contains(key)) return false;
    if (chunks_.empty() || used_ + key.size() > kChunk) {
      chunks_.push_back(std::make_unique<char[]>(kChunk));
      used_ = 0;
    }
    char* dst = chunks_.back().get() + used_;
    std::copy(key.begin(), key.end(), dst);
    used_ += key.size();
    set_.insert(std::string_view(dst, key.size()));
    return true;
  }

 private:
  static constexpr std::size_t kChunk = std::size_t{1} << 20;
  absl::flat_hash_set<std::string_view> set_;
  std::vector<std::unique_ptr<char[]>> chunks_;
  std::size_t used_ = 0;
};

bool site_complete(const SystemState& st, const ExplorerConfig& cfg, int s) {
  return static_cast<int>(st.sites[static_cast<std::size_t>(s)].history.size()) == cfg.max_iter();
}

class Search {
 public:
  explicit Search(const ExplorerConfig& cfg)
      : cfg_(cfg),
        len_(cfg.window_length()),
        sigs_(signature_count(len_, cfg.alphabet)),
        off_(site_offsets(cfg)) {}

  ExploreResult run() {
    const auto start = SteadyClock::now();
    SystemState init = SystemState::initial(cfg_);
    try {
      visit(init);
    } catch (const BudgetExhausted&) {
      aborted_ = true;
    }
    result_.stats.seconds = std::chrono::duration<double>(SteadyClock::now() - start).count();
    if (result_.counterexample) {
      result_.verdict = Verdict::Diverged;
    } else {
      result_.verdict = aborted_ ? Verdict::Aborted : Verdict::Converged;
    }
    return std::move(result_);
  }

 private:
  struct BudgetExhausted {};

  // Returns true when the search must stop.
  bool visit(const SystemState& st) {
    state_key(st, !is_symbolic(cfg_.model), key_);
    if (!visited_.insert(key_)) return false;
    if (cfg_.budget_states && result_.stats.states >= cfg_.budget_states) throw BudgetExhausted{};
    ++result_.stats.states;
    if (is_symbolic(cfg_.model)) {
      if (symbolic_terminal(st)) return on_terminal(st);
      return expand_symbolic(st);
    }
    if (check_convergence(st)) return true;
    return expand_concrete(st);
  }

  [[noreturn]] void stuck(const SystemState& st) const {
    std::string msg = "scheduler stuck in a non-terminal state; clocks";
    for (const auto& site : st.sites) msg += " " + site.clock.to_string();
    throw std::logic_error(msg);
  }

  // ---------------------------------------------------------------- concrete

  bool check_convergence(const SystemState& st) {
    const int n = cfg_.nb_sites;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!stable_pair(st, i, j)) continue;
        const auto& a = st.sites[static_cast<std::size_t>(i)].text;
        const auto& b = st.sites[static_cast<std::size_t>(j)].text;
        if (a == b) continue;
        ++result_.stats.violations;
        if (!result_.counterexample) result_.counterexample = concrete_counterexample(st, i, j);
        return cfg_.stop_at_first;
      }
    }
    return false;
  }

  Counterexample concrete_counterexample(const SystemState& st, int i, int j) const {
    Counterexample ce;
    ce.config = cfg_;
    ce.ops = st.ops;
    for (int s = 0; s < cfg_.nb_sites; ++s) {
      const auto& site = st.sites[static_cast<std::size_t>(s)];
      ce.sites.push_back({s, site.history, site.text});
    }
    ce.site_a = i;
    ce.site_b = j;
    ce.divergent_cells = diff_cells(st.sites[static_cast<std::size_t>(i)].text,
                                    st.sites[static_cast<std::size_t>(j)].text);
    return ce;
  }

  bool execute(const SystemState& st, int s, OpId id) {
    SystemState next = st;
    next.sites[static_cast<std::size_t>(s)] =
        integrate(cfg_.alg, id, std::move(next.sites[static_cast<std::size_t>(s)]), next.ops);
    return visit(next);
  }

  bool expand_concrete(const SystemState& st) {
    const bool prenumbered = is_prenumbered(cfg_.model);
    if (prenumbered && st.ns < cfg_.max_iter()) return preselect(st);
    const Clocks clocks = clocks_of(st);
    bool moved = false;
    if (cfg_.model == Model::ConcreteCovering) {
      SystemState next = st;
      int group = 0;
      for (int s = 0; s < cfg_.nb_sites; ++s) {
        if (clocks.v[static_cast<std::size_t>(s)][s] != cfg_.iter[static_cast<std::size_t>(s)]) continue;
        for (int k = 0; k < cfg_.nb_sites; ++k) {
          if (k == s || !ready(s, k, clocks.span(), cfg_.iter, st.ops)) continue;
          const OpId id = *st.ops.nth_of_owner(k, clocks.v[static_cast<std::size_t>(s)][k]);
          next.sites[static_cast<std::size_t>(s)] =
              integrate(cfg_.alg, id, std::move(next.sites[static_cast<std::size_t>(s)]), next.ops);
          ++group;
          break;
        }
      }
      if (group >= 2) {
        moved = true;
        if (visit(next)) return true;
      }
    }
    for (int s = 0; s < cfg_.nb_sites; ++s) {
      const VectorClock& mine = clocks.v[static_cast<std::size_t>(s)];
      for (int k = 0; k < cfg_.nb_sites; ++k) {
        if (!ready(s, k, clocks.span(), cfg_.iter, st.ops)) continue;
        moved = true;
        if (k != s) {
          if (execute(st, s, *st.ops.nth_of_owner(k, mine[k]))) return true;
          continue;
        }
        if (prenumbered) {
          SystemState next = st;
          const OpId id = off_[static_cast<std::size_t>(s)] + mine[s];
          next.ops[id].clock = mine;
          next.sites[static_cast<std::size_t>(s)] =
              integrate(cfg_.alg, id, std::move(next.sites[static_cast<std::size_t>(s)]), next.ops);
          if (visit(next)) return true;
          continue;
        }
        for (int idx = 0; idx < sigs_; ++idx) {
          const OpSignature sig = signature_at(idx, len_, cfg_.alphabet);
          SystemState next = st;
          const OpId id = next.ns++;
          next.ops.push_back({id, s, mine, generated_signature(sig.kind, sig.pos, sig.ch, s)});
          next.sites[static_cast<std::size_t>(s)] =
              integrate(cfg_.alg, id, std::move(next.sites[static_cast<std::size_t>(s)]), next.ops);
          if (visit(next)) return true;
        }
      }
    }
    if (!moved && !all_done(st)) stuck(st);
    return false;
  }

  // Synchronized selection rounds: in round r every site with more than r
  // local ops picks the signature of its r-th op. The lowest site is the
  // most significant digit.
  bool preselect(const SystemState& st) {
    int round = 0;
    for (int acc = 0;; ++round) {
      const int count = participants(round);
      if (acc + count > st.ns) break;
      acc += count;
    }
    std::array<OpId, kMaxSites> ids{};
    int m = 0;
    for (int s = 0; s < cfg_.nb_sites; ++s) {
      if (cfg_.iter[static_cast<std::size_t>(s)] > round) ids[static_cast<std::size_t>(m++)] = off_[static_cast<std::size_t>(s)] + round;
    }
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(sigs_);
    for (std::uint64_t index = 0; index < total; ++index) {
      SystemState next = st;
      std::uint64_t rest = index;
      for (int i = m - 1; i >= 0; --i) {
        const OpId id = ids[static_cast<std::size_t>(i)];
        const OpSignature sig = signature_at(static_cast<int>(rest % static_cast<std::uint64_t>(sigs_)), len_, cfg_.alphabet);
        rest /= static_cast<std::uint64_t>(sigs_);
        next.ops[id].sig = generated_signature(sig.kind, sig.pos, sig.ch, next.ops[id].owner);
      }
      next.ns += m;
      if (visit(next)) return true;
    }
    return false;
  }

  int participants(int round) const {
    int count = 0;
    for (int n : cfg_.iter) count += n > round ? 1 : 0;
    return count;
  }

  bool all_done(const SystemState& st) const {
    for (int s = 0; s < cfg_.nb_sites; ++s) {
      if (!site_complete(st, cfg_, s)) return false;
    }
    return true;
  }

  // ---------------------------------------------------------------- symbolic

  bool symbolic_terminal(const SystemState& st) const {
    int complete = 0;
    for (int s = 0; s < cfg_.nb_sites; ++s) complete += site_complete(st, cfg_, s) ? 1 : 0;
    if (cfg_.model == Model::SymbolicEarlyStop) return complete >= 2 || complete == cfg_.nb_sites;
    return complete == cfg_.nb_sites;
  }

  static void append(SystemState& next, int s, OpId id) {
    SiteState& site = next.sites[static_cast<std::size_t>(s)];
    site.history.push_back({id, next.ops[id].sig.kind, 0, 0, 0});
    site.clock.increment(next.ops[id].owner);
  }

  bool expand_symbolic(const SystemState& st) {
    if (cfg_.model == Model::SymbolicFixedDeps) return expand_fixed(st);
    const Clocks clocks = clocks_of(st);
    const bool prenumbered = is_prenumbered(cfg_.model);
    bool moved = false;
    for (int s = 0; s < cfg_.nb_sites; ++s) {
      const VectorClock& mine = clocks.v[static_cast<std::size_t>(s)];
      for (int k = 0; k < cfg_.nb_sites; ++k) {
        if (!ready(s, k, clocks.span(), cfg_.iter, st.ops)) continue;
        moved = true;
        SystemState next = st;
        OpId id;
        if (k != s) {
          id = *st.ops.nth_of_owner(k, mine[k]);
        } else if (prenumbered) {
          id = off_[static_cast<std::size_t>(s)] + mine[s];
          next.ops[id].clock = mine;
        } else {
          id = next.ns++;
          next.ops.push_back({id, s, mine, OpSignature::nop()});
        }
        append(next, s, id);
        if (visit(next)) return true;
      }
    }
    if (!moved) stuck(st);
    return false;
  }

  static OpIdSet executed_mask(const SiteState& site) {
    OpIdSet mask = 0;
    for (const auto& e : site.history) mask |= OpIdSet{1} << e.op_id;
    return mask;
  }

  // A remote op may run at `s` only if every local op `s` has yet to
  // generate depends on it.
  bool precedes_pending(const SystemState& st, int s, int local, OpId id) const {
    for (int l = local; l < cfg_.iter[static_cast<std::size_t>(s)]; ++l) {
      if (!((st.ops.predecessors(off_[static_cast<std::size_t>(s)] + l) >> id) & 1U)) return false;
    }
    return true;
  }

  bool expand_fixed(const SystemState& st) {
    std::array<OpIdSet, kMaxSites> done{};
    for (int s = 0; s < cfg_.nb_sites; ++s) done[static_cast<std::size_t>(s)] = executed_mask(st.sites[static_cast<std::size_t>(s)]);
    bool moved = false;
    for (int s = 0; s < cfg_.nb_sites; ++s) {
      const OpIdSet mine = done[static_cast<std::size_t>(s)];
      const int local = st.sites[static_cast<std::size_t>(s)].clock[s];
      for (OpId id = 0; id < st.ops.size(); ++id) {
        if ((mine >> id) & 1U) continue;
        const int owner = st.ops[id].owner;
        if ((st.ops.predecessors(id) & ~mine) != 0) continue;
        if (owner == s) {
          // Generated exactly in the context of its predecessors; anything
          // else executed first would have to be one of them.
          if (id != off_[static_cast<std::size_t>(s)] + local || st.ops.predecessors(id) != mine) continue;
        } else if (!((done[static_cast<std::size_t>(owner)] >> id) & 1U) ||
                   !precedes_pending(st, s, local, id)) {
          continue;
        }
        moved = true;
        SystemState next = st;
        if (owner == s) next.ops[id].clock = st.sites[static_cast<std::size_t>(s)].clock;
        append(next, s, id);
        if (visit(next)) return true;
      }
    }
    if (!moved) stuck(st);
    return false;
  }

  bool on_terminal(const SystemState& st) {
    std::vector<std::vector<OpId>> traces;
    for (const auto& site : st.sites) {
      std::vector<OpId> t;
      for (const auto& e : site.history) t.push_back(e.op_id);
      traces.push_back(std::move(t));
    }
    if (auto err = check_causal_delivery(st.ops, traces)) throw std::logic_error(*err);

    DeroulerInput in;
    in.alg = cfg_.alg;
    in.window = len_;
    in.alphabet = cfg_.alphabet;
    in.initial = cfg_.initial_window();
    in.threads = cfg_.threads;
    in.ops = st.ops;
    in.traces.per_site = traces;
    std::vector<std::string> keys;
    for (int i = 0; i < cfg_.nb_sites; ++i) {
      if (!site_complete(st, cfg_, i)) continue;
      for (int j = i + 1; j < cfg_.nb_sites; ++j) {
        if (!site_complete(st, cfg_, j)) continue;
        if (traces[static_cast<std::size_t>(i)] == traces[static_cast<std::size_t>(j)]) continue;
        std::string key = pair_key(st.ops, traces[static_cast<std::size_t>(i)], traces[static_cast<std::size_t>(j)]);
        if (checked_pairs_.count(key)) continue;
        in.pairs.emplace_back(i, j);
        keys.push_back(std::move(key));
      }
    }
    if (in.pairs.empty()) return false;
    std::uint64_t tested = 0;
    const auto hit = cfg_.threads > 1 ? derouler_parallel(in, &tested) : derouler_serial(in, &tested);
    result_.stats.assignments += tested;
    if (!hit) {
      for (auto& key : keys) checked_pairs_.insert(std::move(key));
      return false;
    }
    ++result_.stats.violations;
    if (!result_.counterexample) result_.counterexample = counterexample_from(cfg_, in, *hit);
    return cfg_.stop_at_first;
  }

  // The replayed texts of a pair depend only on the two orders, the owners
  // and the concurrency relation; clocks drop out under a fixed relation.
  std::string pair_key(const OpsTable& ops, const std::vector<OpId>& a,
                       const std::vector<OpId>& b) const {
    std::string key;
    for (const auto& op : ops.ops()) {
      key.push_back(static_cast<char>(op.owner));
      if (!ops.fixed_dependencies()) {
        for (int k = 0; k < cfg_.nb_sites; ++k) key.push_back(static_cast<char>(op.clock[k]));
      }
    }
    key.push_back('|');
    for (OpId id : a) key.push_back(static_cast<char>(id));
    key.push_back('|');
    for (OpId id : b) key.push_back(static_cast<char>(id));
    return key;
  }

  const ExplorerConfig& cfg_;
  int len_;
  int sigs_;
  std::array<int, kMaxSites + 1> off_;
  KeySet visited_;
  std::string key_;
  std::unordered_set<std::string> checked_pairs_;
  ExploreResult result_;
  bool aborted_ = false;
};

}  // namespace

ExploreResult explore_concrete(const ExplorerConfig& cfg) {
  cfg.validate();
  if (is_symbolic(cfg.model)) throw ConfigError("explore_concrete needs a concrete model");
  return Search(cfg).run();
}

ExploreResult explore_symbolic(const ExplorerConfig& cfg) {
  cfg.validate();
  if (!is_symbolic(cfg.model)) throw ConfigError("explore_symbolic needs a symbolic model");
  return Search(cfg).run();
}

ExploreResult explore(const ExplorerConfig& cfg) {
  return is_symbolic(cfg.model) ? explore_symbolic(cfg) : explore_concrete(cfg);
}

}  // namespace otcheck
