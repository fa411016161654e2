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

#include "otcheck/causality.hpp"

using namespace otcheck;

namespace {

StampedOp op(OpId id, int owner, VectorClock clock) { return {id, owner, clock, OpSignature::del(0)}; }

}  // namespace

TEST_CASE("dominates") {
  CHECK(dominates(VectorClock{1, 0, 0}, VectorClock{0, 0, 0}));
  CHECK_FALSE(dominates(VectorClock{0, 1}, VectorClock{1, 0}));
  const VectorClock v{2, 1, 0};
  CHECK(dominates(v, v));
}

TEST_CASE("concurrent and happened_before on small examples") {
  const StampedOp a = op(0, 0, {0, 0});
  const StampedOp b = op(1, 1, {0, 0});
  CHECK(concurrent(a, b));
  CHECK_FALSE(happened_before(a, b));
  const StampedOp c = op(1, 1, {1, 0});  // site 1 executed a first
  CHECK_FALSE(concurrent(a, c));
  CHECK(happened_before(a, c));
  CHECK_FALSE(happened_before(c, a));
}

TEST_CASE("happened_before excludes concurrency and concurrency is symmetric") {
  // Brute force over every clock pair with entries in {0,1,2}, 3 sites.
  std::vector<VectorClock> clocks;
  for (int x = 0; x < 27; ++x) {
    VectorClock v(3);
    for (int i = 0, r = x; i < 3; ++i, r /= 3) {
      for (int t = 0; t < r % 3; ++t) v.increment(i);
    }
    clocks.push_back(v);
  }
  int pairs = 0;
  for (int o1 = 0; o1 < 3; ++o1) {
    for (int o2 = 0; o2 < 3; ++o2) {
      for (const auto& v1 : clocks) {
        for (const auto& v2 : clocks) {
          const StampedOp a = op(0, o1, v1);
          const StampedOp b = op(1, o2, v2);
          const bool ab = happened_before(a, b);
          const bool conc = concurrent(a, b);
          // Appendix formula, evaluated independently.
          const bool expect_conc = v1[o1] >= v2[o1] && v2[o2] >= v1[o2];
          REQUIRE(conc == expect_conc);
          REQUIRE(ab == (v2[o1] > v1[o1]));
          if (ab) REQUIRE_FALSE(conc);
          REQUIRE(conc == concurrent(b, a));
          ++pairs;
        }
      }
    }
  }
  CHECK(pairs == 9 * 27 * 27);
}

TEST_CASE("ready follows the guard") {
  OpsTable ops;
  ops.push_back(op(0, 0, {0, 0, 0}));
  ops.push_back(op(1, 1, {0, 0, 0}));
  const std::vector<int> iter{1, 1, 1};

  std::vector<VectorClock> initial(3, VectorClock(3));
  CHECK(ready(0, 0, initial, iter, ops));
  CHECK_FALSE(ready(0, 1, initial, iter, ops));

  // Site 0 executed op 0; site 1 executed op 1.
  std::vector<VectorClock> clocks{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  CHECK(ready(1, 0, clocks, iter, ops));
  CHECK(ready(2, 0, clocks, iter, ops));
  CHECK_FALSE(ready(0, 0, clocks, iter, ops));  // no local op left
  CHECK_FALSE(ready(2, 2, std::vector<VectorClock>{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}, iter, ops));
}

TEST_CASE("ready waits for causal predecessors") {
  // Op 1 of site 1 was generated after site 1 executed op 0.
  OpsTable ops;
  ops.push_back(op(0, 0, {0, 0, 0}));
  ops.push_back(op(1, 1, {1, 0, 0}));
  const std::vector<int> iter{1, 1, 1};
  std::vector<VectorClock> clocks{{1, 0, 0}, {1, 1, 0}, {0, 0, 0}};
  CHECK_FALSE(ready(2, 1, clocks, iter, ops));
  clocks[2] = VectorClock{1, 0, 0};
  CHECK(ready(2, 1, clocks, iter, ops));
}

TEST_CASE("fixed dependencies are transitively closed") {
  OpsTable ops;
  for (OpId id = 0; id < 4; ++id) ops.push_back(op(id, id % 2, VectorClock(2)));
  const std::vector<Dependency> deps{{0, 1}, {1, 3}};
  ops.set_dependencies(deps, 4);
  CHECK(ops.fixed_dependencies());
  CHECK(ops.predecessors(3) == 0b0011U);
  CHECK(ops.happened_before(0, 3));
  CHECK(ops.concurrent(2, 3));
  CHECK_FALSE(ops.concurrent(0, 1));
  const std::vector<Dependency> cycle{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(ops.set_dependencies(cycle, 4), std::invalid_argument);
  const std::vector<Dependency> self{{2, 2}};
  CHECK_THROWS_AS(ops.set_dependencies(self, 4), std::invalid_argument);
  const std::vector<Dependency> range{{0, 9}};
  CHECK_THROWS_AS(ops.set_dependencies(range, 4), std::invalid_argument);
}

TEST_CASE("nth_of_owner") {
  OpsTable ops;
  ops.push_back(op(0, 1, VectorClock(2)));
  ops.push_back(op(1, 0, VectorClock(2)));
  ops.push_back(op(2, 1, VectorClock(2)));
  CHECK(ops.nth_of_owner(1, 1) == 2);
  CHECK(ops.nth_of_owner(0, 0) == 1);
  CHECK_FALSE(ops.nth_of_owner(0, 1).has_value());
}

TEST_CASE("post-hoc causal delivery") {
  OpsTable ops;
  ops.push_back(op(0, 0, {0, 0}));
  ops.push_back(op(1, 1, {1, 0}));
  const std::vector<std::vector<OpId>> good{{0, 1}, {0, 1}};
  CHECK_FALSE(check_causal_delivery(ops, good).has_value());
  const std::vector<std::vector<OpId>> bad{{1, 0}, {0, 1}};
  CHECK(check_causal_delivery(ops, bad).has_value());
}
