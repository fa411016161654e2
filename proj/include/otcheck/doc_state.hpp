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

#ifndef OTCHECK_DOC_STATE_HPP_
#define OTCHECK_DOC_STATE_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace otcheck {

/// Hard capacity limits. Everything in the checker is bounded so that the
/// per-state structures are flat values that copy cheaply during search.
inline constexpr int kMaxWindow = 32;
inline constexpr int kMaxOps = 16;
inline constexpr int kMaxSites = 8;
/// Cells kept behind a window: the observed L cells plus room for every
/// operation to push content one cell further out.
inline constexpr int kBackingCells = kMaxWindow + kMaxOps;

/// A cell of the observed text. -1 marks an empty cell.
using Element = std::int8_t;
inline constexpr Element kEmptyCell = -1;

/// Operation ids are small integers; sets of ids are bitmasks. Ids at or above
/// kMaxOps are reserved for synthetic operations built by property checkers.
using OpId = int;
using OpIdSet = std::uint32_t;
inline constexpr int kMaxOpIdSetBits = 32;

// Order is significant: signatures enumerate Del before Ins.
enum class OpKind : std::uint8_t { Del = 0, Ins = 1, Nop = 2 };

const char* to_string(OpKind kind);

/// Algorithm-specific fields carried by an operation. `pr` is the Ellis
/// priority, `u` the Ressel issuer id, `ip` the Imine initial position and
/// `av`/`ap` the Suleiman sets of concurrent deletes (as id bitmasks).
struct ExtensionFields {
  int pr = 0;
  int u = 0;
  int ip = 0;
  OpIdSet av = 0;
  OpIdSet ap = 0;

  bool operator==(const ExtensionFields&) const = default;
};

struct OpSignature {
  OpKind kind = OpKind::Nop;
  int pos = 0;
  Element ch = 0;
  ExtensionFields ext{};

  static OpSignature ins(int pos, Element ch) { return {OpKind::Ins, pos, ch, {}}; }
  static OpSignature del(int pos) { return {OpKind::Del, pos, 0, {}}; }
  static OpSignature nop() { return {}; }

  bool operator==(const OpSignature&) const = default;
};

/// Compares the document-visible part (kind, pos, ch) only. Two Nops are
/// equal whatever their stale position.
bool same_effect(const OpSignature& a, const OpSignature& b);

std::string to_string(const OpSignature& sig);

/// Fixed-length window [0, L-1] over the conceptually unbounded shared text.
/// Only the L observed cells take part in equality and rendering. The cells
/// past the window are still tracked, so content pushed out by an insert
/// comes back when a later delete shifts it left.
class DocWindow {
 public:
  DocWindow() = default;
  /// All cells empty.
  explicit DocWindow(int length);
  DocWindow(std::initializer_list<int> cells);
  explicit DocWindow(std::span<const int> cells);

  int length() const { return length_; }
  /// Any index below kBackingCells; indices >= length() read past the window.
  Element operator[](int i) const { return cells_[static_cast<std::size_t>(i)]; }
  Element& operator[](int i) { return cells_[static_cast<std::size_t>(i)]; }

  std::vector<int> to_vector() const;
  /// Cells rendered as space separated integers, e.g. "0 0 -1 -1".
  std::string to_string() const;
  /// Non-empty prefix as digits, e.g. "00001". Only meaningful for A <= 10.
  std::string digits() const;

  /// Compares the observed cells only.
  bool operator==(const DocWindow& other) const;
  /// Compares every backing cell, the hidden tail included.
  bool same_content(const DocWindow& other) const;

 private:
  std::array<Element, kBackingCells> cells_{};
  int length_ = 0;
};

/// Indices where two equal-length windows differ.
std::vector<int> diff_cells(const DocWindow& a, const DocWindow& b);

/// Effect of one primitive operation on the unbounded text. Negative
/// positions and Nop are ignored. Positions at or past L leave the observed
/// cells unchanged; the window length never changes.
DocWindow apply(DocWindow win, const OpSignature& sig);

DocWindow apply_seq(DocWindow win, std::span<const OpSignature> seq);

}  // namespace otcheck

#endif  // OTCHECK_DOC_STATE_HPP_
