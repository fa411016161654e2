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

#ifndef OTCHECK_CAUSALITY_HPP_
#define OTCHECK_CAUSALITY_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "otcheck/doc_state.hpp"

namespace otcheck {

/// Per-site count of executed operations, one entry per site.
class VectorClock {
 public:
  VectorClock() = default;
  explicit VectorClock(int nb_sites);
  VectorClock(std::initializer_list<int> entries);

  int size() const { return size_; }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  void increment(int i) { ++entries_[static_cast<std::size_t>(i)]; }
  /// Sum of all entries, i.e. the number of operations executed.
  int total() const;

  std::string to_string() const;
  bool operator==(const VectorClock&) const = default;

 private:
  std::array<std::uint8_t, kMaxSites> entries_{};
  int size_ = 0;
};

/// True iff v1[i] >= v2[i] for every i. Both clocks must have the same size.
bool dominates(const VectorClock& v1, const VectorClock& v2);

/// A generated operation. `clock` is the owner's clock copied before the
/// owner counts the operation itself; `sig` is the original signature, so
/// `sig.pos` is the initial position.
struct StampedOp {
  OpId id = 0;
  int owner = 0;
  VectorClock clock;
  OpSignature sig;
};

bool concurrent(const StampedOp& o1, const StampedOp& o2);

/// o1 -> o2: the issuer of o2 had executed o1 before generating o2.
bool happened_before(const StampedOp& o1, const StampedOp& o2);

using Dependency = std::pair<OpId, OpId>;

/// The generated operations together with the relation that orders them.
/// By default causality comes from the vector clocks; with a fixed
/// dependency relation the clocks are ignored and an operation depends
/// exactly on the transitive closure of the declared pairs.
class OpsTable {
 public:
  OpsTable() = default;

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const StampedOp& operator[](OpId id) const { return ops_[static_cast<std::size_t>(id)]; }
  StampedOp& operator[](OpId id) { return ops_[static_cast<std::size_t>(id)]; }
  void push_back(const StampedOp& op);
  std::span<const StampedOp> ops() const { return {ops_.data(), static_cast<std::size_t>(size_)}; }

  /// Switches to the fixed-relation mode. Throws std::invalid_argument on an
  /// out-of-range id, a self-dependency or a cycle.
  void set_dependencies(std::span<const Dependency> deps, int nb_ops);
  bool fixed_dependencies() const { return fixed_; }
  /// Transitive predecessors of `id` under the fixed relation.
  OpIdSet predecessors(OpId id) const { return preds_[static_cast<std::size_t>(id)]; }

  bool concurrent(OpId a, OpId b) const;
  bool happened_before(OpId a, OpId b) const;

  /// Id of the n-th (0-based) operation owned by `owner` in id order.
  std::optional<OpId> nth_of_owner(int owner, int n) const;

 private:
  std::array<StampedOp, kMaxOps> ops_{};
  std::array<OpIdSet, kMaxOps> preds_{};
  int size_ = 0;
  bool fixed_ = false;
};

/// Readiness guard: can `site` execute the next pending operation of site
/// `k`? For k == site this is "a local operation remains". Otherwise the
/// V[site][k]-th operation of k must have been executed by k and its clock
/// must be dominated by V[site].
bool ready(int site, int k, std::span<const VectorClock> clocks, std::span<const int> iter,
           const OpsTable& ops);

/// Post-hoc causal delivery check over per-site execution orders: whenever
/// a -> b, a must precede b in every trace containing b. Returns a
/// description of the first violation found.
std::optional<std::string> check_causal_delivery(const OpsTable& ops,
                                                 std::span<const std::vector<OpId>> traces);

}  // namespace otcheck

#endif  // OTCHECK_CAUSALITY_HPP_
