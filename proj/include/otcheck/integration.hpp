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

#ifndef OTCHECK_INTEGRATION_HPP_
#define OTCHECK_INTEGRATION_HPP_

#include <span>

#include <boost/container/static_vector.hpp>

#include "otcheck/causality.hpp"
#include "otcheck/doc_state.hpp"
#include "otcheck/transform.hpp"

namespace otcheck {

/// One executed operation in a site's history, as it was executed there.
/// `kind` differs from the original kind only when the operation was
/// transformed into a Nop. `av`/`ap` are only ever non-empty for Suleiman.
struct HistoryEntry {
  OpId op_id = 0;
  OpKind kind = OpKind::Nop;
  int pos = 0;
  OpIdSet av = 0;
  OpIdSet ap = 0;

  bool operator==(const HistoryEntry&) const = default;
};

using History = boost::container::static_vector<HistoryEntry, kMaxOps>;

/// Replica state of one site.
struct SiteState {
  int pid = 0;
  DocWindow text;
  VectorClock clock;
  History history;

  static SiteState initial(int pid, int nb_sites, const DocWindow& text);
};

/// Signature of a freshly generated operation, with every algorithm's
/// generation-time extension fields filled in (pr = u = owner, ip = pos,
/// empty delete sets).
OpSignature generated_signature(OpKind kind, int pos, Element ch, int owner);

/// The operation as originally generated.
TransformableOp original_op(const OpsTable& ops, OpId id);

/// A history entry viewed as an operation to transform against.
TransformableOp executed_op(const OpsTable& ops, const HistoryEntry& entry);

HistoryEntry to_entry(const TransformableOp& op);

struct ReorderResult {
  History reordered;
  bool swapped = false;
};

/// Stable partition of `history`: entries not concurrent with `op` first,
/// concurrent ones after. Entries of the first partition are restored to
/// their original signature.
ReorderResult reorder(const TransformableOp& op, std::span<const HistoryEntry> history,
                      const OpsTable& ops);

/// Transforms a remote operation against a history so that it can be
/// executed on the state that history produced. Causal predecessors are
/// moved to the front; when that changes the order, every reordered entry is
/// rebuilt from its original signature against its new prefix before `op`
/// is folded through the entries concurrent with it.
TransformableOp transform_against_history(AlgorithmId alg, const TransformableOp& op,
                                          std::span<const HistoryEntry> history,
                                          const OpsTable& ops);

/// Executes operation `id` at `site`: local operations run as generated,
/// remote ones are transformed first. Appends to the history and counts the
/// operation in the site clock. The caller guarantees readiness.
SiteState integrate(AlgorithmId alg, OpId id, SiteState site, const OpsTable& ops);

/// Re-executes the history's recorded signatures from `initial`.
DocWindow replay_history(const DocWindow& initial, std::span<const HistoryEntry> history,
                         const OpsTable& ops);

}  // namespace otcheck

#endif  // OTCHECK_INTEGRATION_HPP_
