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

#include "otcheck/integration.hpp"

namespace otcheck {

SiteState SiteState::initial(int pid, int nb_sites, const DocWindow& text) {
  SiteState s;
  s.pid = pid;
  s.text = text;
  s.clock = VectorClock(nb_sites);
  return s;
}

OpSignature generated_signature(OpKind kind, int pos, Element ch, int owner) {
  OpSignature sig{kind, pos, kind == OpKind::Del ? Element{0} : ch, {}};
  sig.ext.pr = owner;
  sig.ext.u = owner;
  sig.ext.ip = pos;
  return sig;
}

TransformableOp original_op(const OpsTable& ops, OpId id) {
  return TransformableOp::from(id, ops[id].sig);
}

TransformableOp executed_op(const OpsTable& ops, const HistoryEntry& entry) {
  TransformableOp op = original_op(ops, entry.op_id);
  op.kind = entry.kind;
  op.pos = entry.pos;
  op.ext.av = entry.av;
  op.ext.ap = entry.ap;
  return op;
}

HistoryEntry to_entry(const TransformableOp& op) {
  return {op.id, op.kind, op.pos, op.ext.av, op.ext.ap};
}

ReorderResult reorder(const TransformableOp& op, std::span<const HistoryEntry> history,
                      const OpsTable& ops) {
  ReorderResult out;
  History concurrent_tail;
  for (const auto& entry : history) {
    if (ops.concurrent(op.id, entry.op_id)) {
      concurrent_tail.push_back(entry);
    } else {
      if (out.reordered.size() != static_cast<std::size_t>(&entry - history.data())) out.swapped = true;
      out.reordered.push_back(to_entry(original_op(ops, entry.op_id)));
    }
  }
  out.reordered.insert(out.reordered.end(), concurrent_tail.begin(), concurrent_tail.end());
  return out;
}

TransformableOp transform_against_history(AlgorithmId alg, const TransformableOp& op,
                                          std::span<const HistoryEntry> history,
                                          const OpsTable& ops) {
  if (history.empty()) return op;
  auto [list, swapped] = reorder(op, history, ops);
  if (swapped) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const TransformableOp rebuilt = transform_against_history(
          alg, original_op(ops, list[i].op_id), std::span(list.data(), i), ops);
      list[i] = to_entry(rebuilt);
    }
  }
  TransformableOp out = op;
  for (const auto& entry : list) {
    if (ops.concurrent(op.id, entry.op_id)) out = it(alg, out, executed_op(ops, entry));
  }
  return out;
}

SiteState integrate(AlgorithmId alg, OpId id, SiteState site, const OpsTable& ops) {
  TransformableOp op = original_op(ops, id);
  const int owner = ops[id].owner;
  if (owner != site.pid) op = transform_against_history(alg, op, std::span(site.history.data(), site.history.size()), ops);
  site.text = apply(site.text, op.signature());
  site.history.push_back(to_entry(op));
  site.clock.increment(owner);
  return site;
}

DocWindow replay_history(const DocWindow& initial, std::span<const HistoryEntry> history,
                         const OpsTable& ops) {
  DocWindow text = initial;
  for (const auto& entry : history) text = apply(text, executed_op(ops, entry).signature());
  return text;
}

}  // namespace otcheck
