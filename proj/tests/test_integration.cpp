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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "otcheck/integration.hpp"

using namespace otcheck;

namespace {

void add(OpsTable& ops, int owner, VectorClock clock, OpKind kind, int pos, int ch = 0) {
  const OpId id = ops.size();
  ops.push_back({id, owner, clock, generated_signature(kind, pos, static_cast<Element>(ch), owner)});
}

SiteState run(AlgorithmId alg, int site, int nb_sites, const DocWindow& init, const std::vector<OpId>& order,
              const OpsTable& ops) {
  SiteState st = SiteState::initial(site, nb_sites, init);
  for (OpId id : order) {
    st = integrate(alg, id, std::move(st), ops);
    // History, clock and text stay consistent after every step.
    REQUIRE(static_cast<int>(st.history.size()) == st.clock.total());
    REQUIRE(replay_history(init, std::span(st.history.data(), st.history.size()), ops) == st.text);
  }
  return st;
}

// op0 = Del(0) at site 0, op1 = Ins(0,0) at site 1, op2 = Ins(1,0)
// at site 2, all generated on the empty text.
OpsTable ellis_ops() {
  OpsTable ops;
  add(ops, 0, {0, 0, 0}, OpKind::Del, 0);
  add(ops, 1, {0, 0, 0}, OpKind::Ins, 0, 0);
  add(ops, 2, {0, 0, 0}, OpKind::Ins, 1, 0);
  return ops;
}

// Letters encoded a=0 c=1 e=2 f=3 t=4.
enum : int { a = 0, c = 1, e = 2, f = 3, t = 4 };

}  // namespace

TEST_CASE("generated signatures carry generation-time fields") {
  const OpSignature s = generated_signature(OpKind::Ins, 3, 1, 2);
  CHECK(s.ext.pr == 2);
  CHECK(s.ext.u == 2);
  CHECK(s.ext.ip == 3);
  CHECK(s.ext.av == 0U);
  CHECK(generated_signature(OpKind::Del, 1, 1, 0).ch == 0);
}

TEST_CASE("local generation is executed as generated") {
  OpsTable ops;
  add(ops, 0, {0, 0}, OpKind::Ins, 0, 0);
  const SiteState st = run(AlgorithmId::Ellis, 0, 2, DocWindow(4), {0}, ops);
  CHECK(st.text == DocWindow{0, -1, -1, -1});
  REQUIRE(st.history.size() == 1);
  CHECK(st.history[0].kind == OpKind::Ins);
  CHECK(st.history[0].pos == 0);
  CHECK(st.clock == VectorClock{1, 0});
}

TEST_CASE("Ellis integrations of Del(0), Ins(0,0), Ins(1,0)") {
  const OpsTable ops = ellis_ops();
  const DocWindow empty(6);
  const SiteState s0 = run(AlgorithmId::Ellis, 0, 3, empty, {0, 1, 2}, ops);
  CHECK(s0.text == DocWindow{0, -1, -1, -1, -1, -1});
  CHECK(s0.history[0] == HistoryEntry{0, OpKind::Del, 0, 0, 0});
  CHECK(s0.history[1].kind == OpKind::Ins);
  CHECK(s0.history[1].pos == 0);
  CHECK(s0.history[2].kind == OpKind::Nop);

  const SiteState s1 = run(AlgorithmId::Ellis, 1, 3, empty, {1, 0, 2}, ops);
  CHECK(s1.text == DocWindow{0, 0, -1, -1, -1, -1});
  CHECK(s1.history[1] == HistoryEntry{0, OpKind::Del, 1, 0, 0});
  CHECK(s1.history[2].kind == OpKind::Ins);
  CHECK(s1.history[2].pos == 1);

  const SiteState s2 = run(AlgorithmId::Ellis, 2, 3, empty, {2}, ops);
  CHECK(s2.text == DocWindow{-1, 0, -1, -1, -1, -1});
}

TEST_CASE("transform against history") {
  const OpsTable ops = ellis_ops();
  const TransformableOp op0 = original_op(ops, 0);
  CHECK(transform_against_history(AlgorithmId::Ellis, op0, {}, ops) == op0);
  const std::vector<HistoryEntry> h{to_entry(original_op(ops, 1))};
  const TransformableOp r = transform_against_history(AlgorithmId::Ellis, op0, h, ops);
  CHECK(r.kind == OpKind::Del);
  CHECK(r.pos == 1);
}

TEST_CASE("reorder puts causal predecessors first") {
  // o1 -> o2 at site 0, o3 concurrent at site 1.
  OpsTable ops;
  add(ops, 0, {0, 0}, OpKind::Ins, 0, a);
  add(ops, 0, {1, 0}, OpKind::Ins, 1, f);
  add(ops, 1, {0, 0}, OpKind::Ins, 0, e);
  const TransformableOp o2 = original_op(ops, 1);

  const auto none = reorder(o2, {}, ops);
  CHECK(none.reordered.empty());
  CHECK_FALSE(none.swapped);

  const std::vector<HistoryEntry> conc{to_entry(original_op(ops, 2))};
  const auto same = reorder(o2, conc, ops);
  CHECK_FALSE(same.swapped);
  CHECK(same.reordered.size() == 1);

  // o3 executed, then o1 transformed to Ins(0,a).
  const std::vector<HistoryEntry> h{to_entry(original_op(ops, 2)), HistoryEntry{0, OpKind::Ins, 0, 0, 0}};
  const auto moved = reorder(o2, h, ops);
  CHECK(moved.swapped);
  REQUIRE(moved.reordered.size() == 2);
  CHECK(moved.reordered[0].op_id == 0);
  CHECK(moved.reordered[1].op_id == 2);
  CHECK(moved.reordered[0].pos == 0);

  // Transforming o2 against the reordered history gives Ins(1,f).
  const TransformableOp r = transform_against_history(AlgorithmId::Ellis, o2, h, ops);
  CHECK(r.pos == 1);
  // Transforming against o3 alone, the wrong application, gives Ins(2,f).
  CHECK(it(AlgorithmId::Ellis, o2, original_op(ops, 2)).pos == 2);
}

TEST_CASE("a reordered history converges on afefect under Ellis") {
  OpsTable ops;
  add(ops, 0, {0, 0}, OpKind::Ins, 0, a);
  add(ops, 0, {1, 0}, OpKind::Ins, 1, f);
  add(ops, 1, {0, 0}, OpKind::Ins, 0, e);
  const DocWindow fect{f, e, c, t, -1, -1, -1, -1};
  const DocWindow afefect{a, f, e, f, e, c, t, -1};
  const SiteState s0 = run(AlgorithmId::Ellis, 0, 2, fect, {0, 1, 2}, ops);
  const SiteState s1 = run(AlgorithmId::Ellis, 1, 2, fect, {2, 0, 1}, ops);
  CHECK(s0.text == afefect);
  CHECK(s1.text == afefect);
  CHECK(s0.history[2].pos == 2);
  CHECK(s1.history[2].pos == 1);
}

TEST_CASE("local operations are never transformed") {
  OpsTable ops;
  add(ops, 1, {0, 0}, OpKind::Ins, 0, 1);
  add(ops, 0, {0, 1}, OpKind::Ins, 0, 0);
  for (AlgorithmId alg : kAllAlgorithms) {
    // Site 0 receives op 0, then generates op 1 at the same position.
    const SiteState st = run(alg, 0, 2, DocWindow(4), {0, 1}, ops);
    CHECK(st.history[1].pos == 0);
    CHECK(st.text == DocWindow{0, 1, -1, -1});
  }
}
