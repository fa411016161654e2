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

#ifndef OTCHECK_PROPERTIES_HPP_
#define OTCHECK_PROPERTIES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "otcheck/doc_state.hpp"
#include "otcheck/explorer.hpp"
#include "otcheck/transform.hpp"

namespace otcheck {

struct Divergence {
  int site_a = 0;
  int site_b = 0;
  std::vector<int> cells;
};

/// Every stable pair of `state` whose observed texts differ.
std::vector<Divergence> check_convergence(const SystemState& state);

/// Finite bounds for the TP1/TP2 sweeps. Candidate operations use positions
/// in [0, pmax] and characters in [0, alphabet).
struct PropertyBounds {
  int pmax = 4;
  int alphabet = 2;
  int window = 0;  // 0 selects pmax + 4, enough to keep two inserts visible
  /// Inserts also take every initial position ip in [0, pmax] and every
  /// av/ap drawn from {} and {D_q}, q in [0, pmax], where D_q is a synthetic
  /// delete with id kSyntheticDelete + q.
  bool synth_ext = false;
  int threads = 1;

  int window_length() const { return window > 0 ? window : pmax + 4; }
  /// Throws ConfigError.
  void validate() const;
};

inline constexpr OpId kSyntheticDelete = kMaxOps;

enum class TPKind { TP1, TP2 };

struct TPViolation {
  TPKind kind = TPKind::TP1;
  std::uint64_t index = 0;            // position in the canonical enumeration
  std::vector<TransformableOp> ops;   // TP1: o1, o2. TP2: o, o1, o2.
  // TP1: the window and the two end states.
  DocWindow window;
  DocWindow text1;
  DocWindow text2;
  // TP1: IT(o2, o1) and IT(o1, o2). TP2: o along [o1; IT(o2,o1)] and along
  // [o2; IT(o1,o2)].
  TransformableOp result1;
  TransformableOp result2;
};

/// Candidate operations in canonical order (Del before Ins, then position,
/// character, ip, av, ap). Ids and owners are left at 0.
std::vector<TransformableOp> tp_candidates(const PropertyBounds& bounds);

/// Windows tried for TP1: every content of length k in [pmax+1, L-1] over
/// the alphabet, padded with empty cells.
std::vector<DocWindow> tp1_windows(const PropertyBounds& bounds);

/// Direct evaluation of one case. Both return a violation only when the two
/// sides differ (full text for TP1, kind/pos/ch for TP2).
std::optional<TPViolation> tp1_case(AlgorithmId alg, const TransformableOp& o1,
                                    const TransformableOp& o2, const DocWindow& window);
std::optional<TPViolation> tp2_case(AlgorithmId alg, const TransformableOp& o,
                                    const TransformableOp& o1, const TransformableOp& o2);

/// First violation in canonical order, or none within the bounds. TP1 pairs
/// have o1 owned by site 0 and o2 by site 1. TP2 triples give o each of the
/// owners 0..2, with o1 and o2 taking the other two in ascending order.
std::optional<TPViolation> check_tp1_serial(AlgorithmId alg, const PropertyBounds& bounds);
std::optional<TPViolation> check_tp1_parallel(AlgorithmId alg, const PropertyBounds& bounds);
std::optional<TPViolation> check_tp2_serial(AlgorithmId alg, const PropertyBounds& bounds);
std::optional<TPViolation> check_tp2_parallel(AlgorithmId alg, const PropertyBounds& bounds);

/// Dispatch on bounds.threads.
std::optional<TPViolation> check_tp1(AlgorithmId alg, const PropertyBounds& bounds);
std::optional<TPViolation> check_tp2(AlgorithmId alg, const PropertyBounds& bounds);

/// Every violation, in canonical order.
std::vector<TPViolation> all_tp1(AlgorithmId alg, const PropertyBounds& bounds);
std::vector<TPViolation> all_tp2(AlgorithmId alg, const PropertyBounds& bounds);

/// Size of the enumeration space.
std::uint64_t tp1_space(const PropertyBounds& bounds);
std::uint64_t tp2_space(const PropertyBounds& bounds);

}  // namespace otcheck

#endif  // OTCHECK_PROPERTIES_HPP_
