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

#ifndef OTCHECK_TRANSFORM_HPP_
#define OTCHECK_TRANSFORM_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "otcheck/doc_state.hpp"

namespace otcheck {

/// The inclusion transformations under test.
///
///  - Ellis: Ins/Ins ties resolved by priority, identical inserts collapse to Nop.
///  - Ressel: Ins/Ins ties resolved by issuer id, identical inserts both kept.
///  - Sun: characterwise form of the stringwise algorithm, no Ins/Ins tie-break.
///  - Suleiman: inserts carry the sets of concurrent deletes seen before (av)
///    and after (ap) the insertion point.
///  - Imine: inserts carry their initial position.
enum class AlgorithmId { Ellis = 0, Ressel = 1, Sun = 2, Suleiman = 3, Imine = 4 };

inline constexpr std::array<AlgorithmId, 5> kAllAlgorithms = {
    AlgorithmId::Ellis, AlgorithmId::Ressel, AlgorithmId::Sun, AlgorithmId::Suleiman,
    AlgorithmId::Imine};

const char* to_string(AlgorithmId alg);
std::optional<AlgorithmId> parse_algorithm(std::string_view name);

/// An operation as seen by the transformation functions: its id (needed for
/// the Suleiman delete sets) and its current signature.
struct TransformableOp {
  OpId id = 0;
  OpKind kind = OpKind::Nop;
  int pos = 0;
  Element ch = 0;
  ExtensionFields ext{};

  OpSignature signature() const { return {kind, pos, ch, ext}; }
  static TransformableOp from(OpId id, const OpSignature& sig) {
    return {id, sig.kind, sig.pos, sig.ch, sig.ext};
  }
  bool operator==(const TransformableOp&) const = default;
};

/// IT(o1, o2): o1 rewritten to include the effect of the concurrent o2.
/// IT(Nop, o) = Nop and IT(o, Nop) = o for every algorithm.
TransformableOp it(AlgorithmId alg, const TransformableOp& o1, const TransformableOp& o2);

/// Left fold of `it` over `seq`.
TransformableOp it_star(AlgorithmId alg, TransformableOp o, std::span<const TransformableOp> seq);

}  // namespace otcheck

#endif  // OTCHECK_TRANSFORM_HPP_
