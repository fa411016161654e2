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

#include "otcheck/causality.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace otcheck {

VectorClock::VectorClock(int nb_sites) : size_(nb_sites) {
  if (nb_sites < 1 || nb_sites > kMaxSites) {
    throw std::invalid_argument("site count must be in [1, " + std::to_string(kMaxSites) + "]");
  }
}

VectorClock::VectorClock(std::initializer_list<int> entries)
    : VectorClock(static_cast<int>(entries.size())) {
  std::size_t i = 0;
  for (int e : entries) {
    if (e < 0 || e > 255) throw std::invalid_argument("clock entry out of range");
    entries_[i++] = static_cast<std::uint8_t>(e);
  }
}

int VectorClock::total() const {
  int sum = 0;
  for (int i = 0; i < size_; ++i) sum += entries_[static_cast<std::size_t>(i)];
  return sum;
}

std::string VectorClock::to_string() const {
  std::string out = "[";
  for (int i = 0; i < size_; ++i) {
    if (i) out += ',';
    out += std::to_string((*this)[i]);
  }
  return out + "]";
}

bool dominates(const VectorClock& v1, const VectorClock& v2) {
  assert(v1.size() == v2.size());
  for (int i = 0; i < v1.size(); ++i) {
    if (v1[i] < v2[i]) return false;
  }
  return true;
}

bool concurrent(const StampedOp& o1, const StampedOp& o2) {
  return o1.clock[o1.owner] >= o2.clock[o1.owner] && o2.clock[o2.owner] >= o1.clock[o2.owner];
}

bool happened_before(const StampedOp& o1, const StampedOp& o2) {
  return o2.clock[o1.owner] > o1.clock[o1.owner];
}

void OpsTable::push_back(const StampedOp& op) {
  if (size_ >= kMaxOps) throw std::length_error("operation table is full");
  ops_[static_cast<std::size_t>(size_++)] = op;
}

void OpsTable::set_dependencies(std::span<const Dependency> deps, int nb_ops) {
  if (nb_ops < 0 || nb_ops > kMaxOps) throw std::invalid_argument("operation count out of range");
  preds_.fill(0);
  for (const auto& [from, to] : deps) {
    if (from < 0 || from >= nb_ops || to < 0 || to >= nb_ops) {
      throw std::invalid_argument("dependency " + std::to_string(from) + ">" + std::to_string(to) +
                                  " names an unknown operation");
    }
    if (from == to) {
      throw std::invalid_argument("dependency " + std::to_string(from) + ">" + std::to_string(to) +
                                  " relates an operation to itself");
    }
    preds_[static_cast<std::size_t>(to)] |= OpIdSet{1} << from;
  }
  // Warshall closure on the predecessor masks.
  for (int k = 0; k < nb_ops; ++k) {
    const OpIdSet bit = OpIdSet{1} << k;
    for (int j = 0; j < nb_ops; ++j) {
      if (preds_[static_cast<std::size_t>(j)] & bit) preds_[static_cast<std::size_t>(j)] |= preds_[static_cast<std::size_t>(k)];
    }
  }
  for (int j = 0; j < nb_ops; ++j) {
    if (preds_[static_cast<std::size_t>(j)] & (OpIdSet{1} << j)) {
      throw std::invalid_argument("dependency relation is cyclic through operation " + std::to_string(j));
    }
  }
  fixed_ = true;
}

bool OpsTable::happened_before(OpId a, OpId b) const {
  if (fixed_) return (preds_[static_cast<std::size_t>(b)] >> a) & 1U;
  return otcheck::happened_before((*this)[a], (*this)[b]);
}

bool OpsTable::concurrent(OpId a, OpId b) const {
  if (fixed_) return !happened_before(a, b) && !happened_before(b, a);
  return otcheck::concurrent((*this)[a], (*this)[b]);
}

std::optional<OpId> OpsTable::nth_of_owner(int owner, int n) const {
  for (int i = 0; i < size_; ++i) {
    if (ops_[static_cast<std::size_t>(i)].owner == owner) {
      if (n == 0) return i;
      --n;
    }
  }
  return std::nullopt;
}

bool ready(int site, int k, std::span<const VectorClock> clocks, std::span<const int> iter,
           const OpsTable& ops) {
  const VectorClock& mine = clocks[static_cast<std::size_t>(site)];
  if (k == site) return mine[site] < iter[static_cast<std::size_t>(site)];
  if (mine[k] >= clocks[static_cast<std::size_t>(k)][k]) return false;
  const auto id = ops.nth_of_owner(k, mine[k]);
  if (!id) return false;
  return dominates(mine, ops[*id].clock);
}

std::optional<std::string> check_causal_delivery(const OpsTable& ops,
                                                 std::span<const std::vector<OpId>> traces) {
  for (std::size_t s = 0; s < traces.size(); ++s) {
    const auto& trace = traces[s];
    for (std::size_t j = 0; j < trace.size(); ++j) {
      for (int a = 0; a < ops.size(); ++a) {
        if (a == trace[j] || !ops.happened_before(a, trace[j])) continue;
        bool seen = false;
        for (std::size_t i = 0; i < j; ++i) seen = seen || trace[i] == a;
        if (!seen) {
          std::ostringstream msg;
          msg << "site " << s << " executes op " << trace[j] << " before its causal predecessor op "
              << a;
          return msg.str();
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace otcheck
