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

#include "otcheck/doc_state.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace otcheck {

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::Del:
      return "Del";
    case OpKind::Ins:
      return "Ins";
    case OpKind::Nop:
      return "Nop";
  }
  return "?";
}

bool same_effect(const OpSignature& a, const OpSignature& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == OpKind::Nop) return true;
  return a.pos == b.pos && a.ch == b.ch;
}

std::string to_string(const OpSignature& sig) {
  std::ostringstream out;
  switch (sig.kind) {
    case OpKind::Nop:
      out << "Nop";
      break;
    case OpKind::Del:
      out << "Del " << sig.pos;
      break;
    case OpKind::Ins:
      out << "Ins " << sig.pos << ' ' << static_cast<int>(sig.ch);
      break;
  }
  return out.str();
}

DocWindow::DocWindow(int length) : length_(length) {
  if (length < 1 || length > kMaxWindow) {
    throw std::invalid_argument("window length must be in [1, " + std::to_string(kMaxWindow) +
                                "], got " + std::to_string(length));
  }
  cells_.fill(kEmptyCell);
}

DocWindow::DocWindow(std::initializer_list<int> cells)
    : DocWindow(std::span<const int>(cells.begin(), cells.size())) {}

DocWindow::DocWindow(std::span<const int> cells) : DocWindow(static_cast<int>(cells.size())) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < kEmptyCell || cells[i] > 127) {
      throw std::invalid_argument("cell value out of range: " + std::to_string(cells[i]));
    }
    cells_[i] = static_cast<Element>(cells[i]);
  }
}

std::vector<int> DocWindow::to_vector() const {
  return std::vector<int>(cells_.begin(), cells_.begin() + length_);
}

std::string DocWindow::to_string() const {
  std::string out;
  for (int i = 0; i < length_; ++i) {
    if (i) out += ' ';
    out += std::to_string(static_cast<int>(cells_[static_cast<std::size_t>(i)]));
  }
  return out;
}

std::string DocWindow::digits() const {
  std::string out;
  for (int i = 0; i < length_ && cells_[static_cast<std::size_t>(i)] != kEmptyCell; ++i) {
    out += static_cast<char>('0' + cells_[static_cast<std::size_t>(i)]);
  }
  return out;
}

bool DocWindow::operator==(const DocWindow& other) const {
  if (length_ != other.length_) return false;
  for (int i = 0; i < length_; ++i) {
    if (cells_[static_cast<std::size_t>(i)] != other.cells_[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

bool DocWindow::same_content(const DocWindow& other) const {
  return length_ == other.length_ && cells_ == other.cells_;
}

std::vector<int> diff_cells(const DocWindow& a, const DocWindow& b) {
  std::vector<int> out;
  const int n = std::min(a.length(), b.length());
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) out.push_back(i);
  }
  return out;
}

DocWindow apply(DocWindow win, const OpSignature& sig) {
  constexpr int last = kBackingCells - 1;
  if (sig.kind == OpKind::Nop || sig.pos < 0 || sig.pos > last) return win;
  if (sig.kind == OpKind::Ins) {
    for (int i = last; i > sig.pos; --i) win[i] = win[i - 1];
    win[sig.pos] = sig.ch;
  } else {
    for (int i = sig.pos; i < last; ++i) win[i] = win[i + 1];
    win[last] = kEmptyCell;
  }
  return win;
}

DocWindow apply_seq(DocWindow win, std::span<const OpSignature> seq) {
  for (const auto& sig : seq) win = apply(win, sig);
  return win;
}

}  // namespace otcheck
