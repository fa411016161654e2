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

#ifndef OTCHECK_EXPLORER_HPP_
#define OTCHECK_EXPLORER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/static_vector.hpp>

#include "otcheck/causality.hpp"
#include "otcheck/doc_state.hpp"
#include "otcheck/integration.hpp"
#include "otcheck/transform.hpp"

namespace otcheck {

/// Search models. The concrete ones pick signatures while building the
/// interleaving; the symbolic ones build owner/clock traces first and sweep
/// all signature assignments over each complete trace set.
enum class Model {
  Concrete,
  ConcretePreselect,  // all signatures chosen up front, one round per local slot
  ConcreteCovering,   // preselect + finished sites execute remote ops in lockstep
  Symbolic,
  SymbolicPrenumber,  // op ids fixed up front, site-major
  SymbolicEarlyStop,  // prenumbered; stop once two sites complete
  SymbolicFixedDeps,  // prenumbered; causality from a fixed relation, no clocks
};

const char* to_string(Model model);
std::optional<Model> parse_model(std::string_view name);
bool is_symbolic(Model model);
/// Models whose op ids are assigned site-major before the search starts.
bool is_prenumbered(Model model);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExplorerConfig {
  AlgorithmId alg = AlgorithmId::Ellis;
  Model model = Model::Symbolic;
  int nb_sites = 2;
  std::vector<int> iter;
  int window = 0;  // 0 selects the default 2 * maxIter
  int alphabet = 2;
  std::vector<int> initial;  // initial window prefix; the rest is empty
  std::vector<Dependency> deps;
  bool stop_at_first = true;
  std::uint64_t budget_states = 0;  // 0 = unbounded
  int threads = 1;

  int max_iter() const;
  int window_length() const;
  DocWindow initial_window() const;
  /// Throws ConfigError with a one-line reason.
  void validate() const;
};

/// All sites plus the table of generated operations.
struct SystemState {
  boost::container::static_vector<SiteState, kMaxSites> sites;
  OpsTable ops;
  int ns = 0;  // operations generated (or, when prenumbered, selected)

  static SystemState initial(const ExplorerConfig& cfg);
};

/// Sites i and j have both executed every operation generated so far.
bool stable_pair(const SystemState& state, int i, int j);

/// Per-site execution orders (op ids only).
struct SymbolicTrace {
  std::vector<std::vector<OpId>> per_site;
};

struct SiteRun {
  int site = 0;
  History trace;
  DocWindow final_text;
};

struct Counterexample {
  ExplorerConfig config;
  OpsTable ops;
  std::vector<SiteRun> sites;
  int site_a = 0;
  int site_b = 1;
  std::vector<int> divergent_cells;

  const SiteRun& run_of(int site) const;
};

enum class Verdict { Converged, Diverged, Aborted };
const char* to_string(Verdict verdict);

struct ExploreStats {
  std::uint64_t states = 0;
  std::uint64_t assignments = 0;  // signature assignments replayed (symbolic) or states checked
  std::uint64_t violations = 0;   // violating states / assignments seen
  double seconds = 0.0;
};

struct ExploreResult {
  Verdict verdict = Verdict::Converged;
  std::optional<Counterexample> counterexample;
  ExploreStats stats;
};

/// Depth-first search of a concrete model. Successors are visited in
/// canonical order: sites ascending, then the site whose operation is
/// executed ascending, then signatures by (kind, pos, ch) with Del before
/// Ins. Every stable pair is checked at every state.
ExploreResult explore_concrete(const ExplorerConfig& cfg);

/// Depth-first search of a symbolic model; each complete trace set is handed
/// to the derouler.
ExploreResult explore_symbolic(const ExplorerConfig& cfg);

/// Dispatches on cfg.model.
ExploreResult explore(const ExplorerConfig& cfg);

// ---------------------------------------------------------------------------
// Signature sweep over a fixed trace set.

/// Number of signatures one operation can take: L deletes plus A*L inserts.
int signature_count(int window, int alphabet);
/// Signature with canonical index `index` (Del 0..L-1 first, then Ins by
/// position then character).
OpSignature signature_at(int index, int window, int alphabet);

struct DeroulerInput {
  AlgorithmId alg = AlgorithmId::Ellis;
  int window = 2;
  int alphabet = 2;
  DocWindow initial;
  OpsTable ops;  // owners and clocks (or fixed relation); signatures ignored
  SymbolicTrace traces;
  std::vector<std::pair<int, int>> pairs;  // site pairs to compare
  int threads = 0;  // parallel sweep only; 0 = OpenMP default

  std::uint64_t assignment_count() const;
};

struct DeroulerHit {
  std::uint64_t assignment = 0;
  int site_a = 0;
  int site_b = 0;
};

/// Fills `ops` with the signatures of assignment `index` (op 0 is the most
/// significant digit).
void assign_signatures(OpsTable& ops, std::uint64_t index, int window, int alphabet);

/// Replays the trace of one site through integration from `initial`.
SiteState replay_site(AlgorithmId alg, int site, std::span<const OpId> trace, const OpsTable& ops,
                      int nb_sites, const DocWindow& initial);

/// Reference sweep: every assignment in index order, stopping at the first
/// one under which a compared pair ends with different texts.
std::optional<DeroulerHit> derouler_serial(const DeroulerInput& in, std::uint64_t* tested = nullptr);

/// OpenMP sweep returning the same (minimal-index) hit as derouler_serial.
std::optional<DeroulerHit> derouler_parallel(const DeroulerInput& in,
                                             std::uint64_t* tested = nullptr);

/// Every violating assignment index, ascending.
std::vector<std::uint64_t> derouler_all(const DeroulerInput& in);

/// Builds the full counterexample for a hit (all sites replayed).
Counterexample counterexample_from(const ExplorerConfig& cfg, const DeroulerInput& in,
                                   const DeroulerHit& hit);

// ---------------------------------------------------------------------------
// Scenario replay.

/// A stored scenario: configuration, operation owners and original
/// signatures, and the order in which each site executed them. Clocks are
/// derived from the owners' own orders.
struct Scenario {
  ExplorerConfig config;
  std::vector<int> owners;
  std::vector<OpSignature> signatures;  // kind/pos/ch as generated
  SymbolicTrace traces;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Re-executes the scenario through integration. Returns one SiteRun per
/// site (in site order) and the ops table used. Throws ScenarioError naming
/// the violated dependency when an order is not causally valid.
struct ReplayResult {
  OpsTable ops;
  std::vector<SiteRun> sites;
};
ReplayResult replay(const Scenario& scenario);

/// Counterexample for the first stable pair (ascending) with different
/// texts in a replayed scenario, if any.
std::optional<Counterexample> divergence_of(const Scenario& scenario, const ReplayResult& result);

Scenario scenario_of(const Counterexample& ce);

}  // namespace otcheck

#endif  // OTCHECK_EXPLORER_HPP_
