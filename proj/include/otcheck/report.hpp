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

#ifndef OTCHECK_REPORT_HPP_
#define OTCHECK_REPORT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otcheck/explorer.hpp"
#include "otcheck/properties.hpp"

namespace otcheck {

/// Outcome of one explorer run. Wall time lives in stats.seconds but is
/// never serialized, so reports of identical runs are byte-identical.
struct RunReport {
  ExplorerConfig config;
  Verdict verdict = Verdict::Converged;
  std::optional<Counterexample> counterexample;  // present iff Diverged
  ExploreStats stats;
};

/// Outcome of one TP1/TP2 sweep.
struct PropertyReport {
  TPKind kind = TPKind::TP1;
  AlgorithmId alg = AlgorithmId::Ellis;
  PropertyBounds bounds;
  std::optional<TPViolation> violation;
  std::uint64_t space = 0;  // size of the enumeration
};

/// Malformed report or scenario file. The message starts with the offending
/// field path, e.g. "sites[1].trace[0].opId: expected an integer".
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Report JSON:
///   {config, verdict, signatures:[{id, owner, kind, pos, ch, clock}],
///    sites:[{id, trace:[{opId, kind, pos, ch[, av, ap]}], finalText}],
///    divergentCells, pair, stats:{states, assignments, violations}}
/// The counterexample fields are empty arrays when there is none.
std::string to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

std::string to_json(const PropertyReport& report);

void save_counterexample(const std::string& path, const Counterexample& ce);
/// Throws SchemaError; also when the file records no counterexample.
Counterexample load_counterexample(const std::string& path);

/// A scenario file uses the report schema. Only config, signatures (owner,
/// kind, pos, ch) and the opIds of each site trace are required; trace
/// entries may also be bare integers.
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Recorded per-site results carried by a scenario file, for certification.
struct RecordedRun {
  std::vector<std::optional<HistoryEntry>> trace;  // nullopt when only the opId is given
  std::optional<std::vector<int>> final_text;
};
std::vector<RecordedRun> recorded_runs(const std::string& text);

/// Table with rows Operations / List / text (and the digit word) per site.
std::string render_trace_table(const Counterexample& ce);
/// Same layout for a replay whether or not it diverges.
std::string render_trace_table(const ExplorerConfig& cfg, const OpsTable& ops,
                               const std::vector<SiteRun>& sites);

/// Parses "0>1,2>3" (whitespace allowed). Throws ConfigError.
std::vector<Dependency> parse_deps(std::string_view text);
std::string format_dep(const Dependency& dep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace otcheck

#endif  // OTCHECK_REPORT_HPP_
