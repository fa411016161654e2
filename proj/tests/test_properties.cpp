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

#include <array>
#include <cstdint>
#include <vector>

#include "otcheck/properties.hpp"

using namespace otcheck;

namespace {

constexpr int kCells = 48;
using Cells = std::array<int, kCells>;

// Plain array model of the document: inserts shift right and drop the last
// cell, deletes shift left and refill with -1.
Cells reference_apply(Cells t, const TransformableOp& op) {
  if (op.pos < 0 || op.pos >= kCells) return t;
  if (op.kind == OpKind::Ins) {
    for (int i = kCells - 1; i > op.pos; --i) t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i - 1)];
    t[static_cast<std::size_t>(op.pos)] = op.ch;
  } else if (op.kind == OpKind::Del) {
    for (int i = op.pos; i + 1 < kCells; ++i) t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i + 1)];
    t[kCells - 1] = -1;
  }
  return t;
}

TransformableOp op(OpKind kind, int pos, int ch, int owner) {
  TransformableOp o;
  o.id = owner;
  o.kind = kind;
  o.pos = pos;
  o.ch = static_cast<Element>(ch);
  o.ext.ip = pos;
  o.ext.pr = owner;
  o.ext.u = owner;
  return o;
}

struct Found {
  std::uint64_t count = 0;
  std::vector<TransformableOp> first;
  Cells first_window{};
};

// TP1 by direct enumeration: plain ops at positions 0..pmax, windows with
// k in [pmax+1, pmax+3] leading characters.
Found tp1_oracle(AlgorithmId alg, int pmax, int alphabet) {
  std::vector<std::pair<OpKind, std::array<int, 2>>> shapes;
  for (int p = 0; p <= pmax; ++p) shapes.push_back({OpKind::Del, {p, 0}});
  for (int p = 0; p <= pmax; ++p) {
    for (int c = 0; c < alphabet; ++c) shapes.push_back({OpKind::Ins, {p, c}});
  }
  std::vector<Cells> windows;
  for (int k = pmax + 1; k <= pmax + 3; ++k) {
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(alphabet);
    for (std::uint64_t w = 0; w < total; ++w) {
      Cells cells;
      cells.fill(-1);
      std::uint64_t rest = w;
      for (int i = k - 1; i >= 0; --i) {
        cells[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(alphabet));
        rest /= static_cast<std::uint64_t>(alphabet);
      }
      windows.push_back(cells);
    }
  }
  Found found;
  for (const auto& [k1, a1] : shapes) {
    for (const auto& [k2, a2] : shapes) {
      const TransformableOp o1 = op(k1, a1[0], a1[1], 0);
      const TransformableOp o2 = op(k2, a2[0], a2[1], 1);
      for (const Cells& w : windows) {
        const Cells t1 = reference_apply(reference_apply(w, o1), it(alg, o2, o1));
        const Cells t2 = reference_apply(reference_apply(w, o2), it(alg, o1, o2));
        if (t1 == t2) continue;
        if (found.count++ == 0) {
          found.first = {o1, o2};
          found.first_window = w;
        }
      }
    }
  }
  return found;
}

Cells cells_of(const DocWindow& w) {
  Cells c;
  c.fill(-1);
  for (int i = 0; i < w.length(); ++i) c[static_cast<std::size_t>(i)] = w[i];
  return c;
}

SystemState run_traces(const ExplorerConfig& cfg, const ReplayResult& r,
                       const std::vector<std::vector<OpId>>& traces) {
  SystemState st = SystemState::initial(cfg);
  st.ops = r.ops;
  st.ns = static_cast<int>(r.ops.size());
  for (std::size_t s = 0; s < traces.size(); ++s) {
    for (OpId id : traces[s]) st.sites[s] = integrate(cfg.alg, id, st.sites[s], st.ops);
  }
  return st;
}

}  // namespace

TEST_CASE("convergence check on explicit states") {
  ExplorerConfig cfg;
  cfg.alg = AlgorithmId::Ellis;
  cfg.nb_sites = 3;
  cfg.iter = {1, 1, 1};
  CHECK(check_convergence(SystemState::initial(cfg)).empty());

  Scenario sc;
  sc.config = cfg;
  sc.owners = {0, 1, 2};
  sc.signatures = {OpSignature::del(0), OpSignature::ins(0, 0), OpSignature::ins(1, 0)};
  sc.traces.per_site = {{0, 1, 2}, {1, 0, 2}, {2}};
  const ReplayResult r = replay(sc);

  // Site 2 has not seen ops 0 and 1, so only the pair (0, 1) is stable.
  const SystemState st = run_traces(cfg, r, sc.traces.per_site);
  const auto divs = check_convergence(st);
  REQUIRE(divs.size() == 1);
  CHECK(divs[0].site_a == 0);
  CHECK(divs[0].site_b == 1);
  CHECK(divs[0].cells == std::vector<int>{1});

  // A non-stable pair with different texts is not a divergence.
  const SystemState partial = run_traces(cfg, r, {{0}, {1}, {2}});
  CHECK(check_convergence(partial).empty());
}

TEST_CASE("bounds validation") {
  PropertyBounds b;
  CHECK_NOTHROW(b.validate());
  CHECK(b.window_length() == 8);
  b.pmax = -1;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  b = {};
  b.window = 5;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  b = {};
  b.alphabet = 0;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  b = {};
  b.threads = 0;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  b = {};
  b.synth_ext = true;
  b.pmax = 16;
  b.window = 18;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  b = {};
  b.pmax = 10;
  b.alphabet = 10;
  CHECK_THROWS_AS(b.validate(), ConfigError);
}

TEST_CASE("candidate enumeration") {
  PropertyBounds b;
  b.pmax = 2;
  b.alphabet = 2;
  const auto plain = tp_candidates(b);
  CHECK(plain.size() == 3 + 3 * 2);
  CHECK(plain[0].kind == OpKind::Del);
  CHECK(plain[3].kind == OpKind::Ins);
  CHECK(plain[4].ch == 1);
  CHECK(plain[5].pos == 1);
  b.synth_ext = true;
  // Each insert takes ip in [0, 2] and av, ap in {{}, {D0}, {D1}, {D2}}.
  CHECK(tp_candidates(b).size() == 3 + 3 * 2 * 3 * 4 * 4);
  CHECK(tp1_windows(b).size() == 8 + 16 + 32);
  CHECK(tp1_space(b) == tp_candidates(b).size() * tp_candidates(b).size() * 56);
}

TEST_CASE("TP1 sweep matches a direct enumeration") {
  for (AlgorithmId alg : kAllAlgorithms) {
    for (int pmax : {1, 2}) {
      PropertyBounds b;
      b.pmax = pmax;
      b.alphabet = 2;
      const Found want = tp1_oracle(alg, pmax, 2);
      const auto got = all_tp1(alg, b);
      INFO(to_string(alg), " pmax ", pmax);
      CHECK(got.size() == want.count);
      const auto first = check_tp1(alg, b);
      CHECK(first.has_value() == (want.count > 0));
      if (first && want.count > 0) {
        CHECK(first->ops[0] == want.first[0]);
        CHECK(first->ops[1] == want.first[1]);
        CHECK(cells_of(first->window) == want.first_window);
      }
    }
  }
}

TEST_CASE("TP1 within pmax 4 and two characters") {
  PropertyBounds b;
  b.pmax = 4;
  b.alphabet = 2;
  CHECK_FALSE(check_tp1(AlgorithmId::Suleiman, b).has_value());
  CHECK_FALSE(check_tp1(AlgorithmId::Imine, b).has_value());
  const auto sun = check_tp1(AlgorithmId::Sun, b);
  REQUIRE(sun);
  CHECK_FALSE(sun->text1.same_content(sun->text2));
}

TEST_CASE("every reported violation re-checks") {
  PropertyBounds b;
  b.pmax = 2;
  for (const auto& v : all_tp1(AlgorithmId::Sun, b)) {
    CHECK(tp1_case(AlgorithmId::Sun, v.ops[0], v.ops[1], v.window).has_value());
  }
  b.pmax = 4;
  const auto ellis = all_tp2(AlgorithmId::Ellis, b);
  REQUIRE_FALSE(ellis.empty());
  for (const auto& v : ellis) {
    const auto again = tp2_case(AlgorithmId::Ellis, v.ops[0], v.ops[1], v.ops[2]);
    REQUIRE(again);
    CHECK_FALSE(same_effect(again->result1.signature(), again->result2.signature()));
  }
}

TEST_CASE("violations persist as the bounds grow") {
  for (AlgorithmId alg : kAllAlgorithms) {
    bool seen = false;
    for (int pmax = 0; pmax <= 3; ++pmax) {
      PropertyBounds b;
      b.pmax = pmax;
      const bool found = check_tp1(alg, b).has_value();
      INFO(to_string(alg), " pmax ", pmax);
      CHECK((found || !seen));
      seen = seen || found;
    }
  }
}

TEST_CASE("serial and parallel sweeps agree") {
  PropertyBounds b;
  b.pmax = 3;
  PropertyBounds p = b;
  p.threads = 4;
  for (AlgorithmId alg : kAllAlgorithms) {
    const auto s1 = check_tp1_serial(alg, b);
    const auto p1 = check_tp1_parallel(alg, p);
    REQUIRE(s1.has_value() == p1.has_value());
    if (s1) CHECK(s1->index == p1->index);
    const auto s2 = check_tp2_serial(alg, b);
    const auto p2 = check_tp2_parallel(alg, p);
    REQUIRE(s2.has_value() == p2.has_value());
    if (s2) CHECK(s2->index == p2->index);
  }
}

TEST_CASE("TP2 without extension fields") {
  PropertyBounds b;
  b.pmax = 4;
  const auto ellis = check_tp2(AlgorithmId::Ellis, b);
  REQUIRE(ellis);
  CHECK_FALSE(same_effect(ellis->result1.signature(), ellis->result2.signature()));
  CHECK_FALSE(check_tp2(AlgorithmId::Suleiman, b).has_value());
  CHECK_FALSE(check_tp2(AlgorithmId::Imine, b).has_value());
}

TEST_CASE("TP2 for Suleiman breaks on two inserts that disagree about a delete") {
  PropertyBounds b;
  b.pmax = 2;
  b.synth_ext = true;
  const auto v = check_tp2(AlgorithmId::Suleiman, b);
  REQUIRE(v);
  const OpIdSet d0 = OpIdSet{1} << kSyntheticDelete;
  CHECK(v->ops[0].kind == OpKind::Ins);
  CHECK(v->ops[1].ext.ap == d0);
  CHECK(v->ops[2].ext.av == d0);
  CHECK(v->result1.kind == OpKind::Nop);
  CHECK(v->result2.kind == OpKind::Ins);
  CHECK(v->result2.pos == v->ops[0].pos + 2);

  // The same shape at every insertion point.
  for (int p = 0; p <= 2; ++p) {
    TransformableOp o = op(OpKind::Ins, p, 0, 0);
    TransformableOp o1 = op(OpKind::Ins, p, 0, 1);
    TransformableOp o2 = op(OpKind::Ins, p, 1, 2);
    o1.ext.ap = d0;
    o2.ext.av = d0;
    const auto w = tp2_case(AlgorithmId::Suleiman, o, o1, o2);
    INFO("p = ", p);
    REQUIRE(w);
    CHECK(w->result1.kind == OpKind::Nop);
    CHECK(w->result2.signature().kind == OpKind::Ins);
    CHECK(w->result2.pos == p + 2);
    CHECK(w->result2.ch == 0);
  }
}
