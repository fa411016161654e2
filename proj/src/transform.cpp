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

#include "otcheck/transform.hpp"

#include <string>

namespace otcheck {

namespace {

// code(c) is the identity on the integer alphabet.
int code(Element c) { return c; }

TransformableOp shifted(TransformableOp o, int delta) {
  o.pos += delta;
  return o;
}

TransformableOp nop_of(TransformableOp o) {
  o.kind = OpKind::Nop;
  return o;
}

// Del/Ins and Del/Del are identical for all five algorithms.
TransformableOp del_vs_ins(const TransformableOp& o1, const TransformableOp& o2) {
  return o1.pos < o2.pos ? o1 : shifted(o1, +1);
}

TransformableOp del_vs_del(const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.pos < o2.pos) return o1;
  if (o1.pos > o2.pos) return shifted(o1, -1);
  return nop_of(o1);
}

TransformableOp ins_vs_del(const TransformableOp& o1, const TransformableOp& o2) {
  return o1.pos <= o2.pos ? o1 : shifted(o1, -1);
}

TransformableOp ellis(const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.kind == OpKind::Ins && o2.kind == OpKind::Ins) {
    if (o1.pos < o2.pos) return o1;
    if (o1.pos > o2.pos) return shifted(o1, +1);
    if (o1.ch == o2.ch) return nop_of(o1);
    if (o1.ext.pr > o2.ext.pr) return shifted(o1, +1);
    return o1;
  }
  // Ins/Del keeps the insert in place on equal positions; see README
  // ("Ellis Ins/Del tie") for why this is not the p1 < p2 listing.
  if (o1.kind == OpKind::Ins) return ins_vs_del(o1, o2);
  if (o2.kind == OpKind::Ins) return del_vs_ins(o1, o2);
  return del_vs_del(o1, o2);
}

TransformableOp ressel(const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.kind == OpKind::Ins && o2.kind == OpKind::Ins) {
    if (o1.pos < o2.pos || (o1.pos == o2.pos && o1.ext.u < o2.ext.u)) return o1;
    return shifted(o1, +1);
  }
  if (o1.kind == OpKind::Ins) return ins_vs_del(o1, o2);
  if (o2.kind == OpKind::Ins) return del_vs_ins(o1, o2);
  return del_vs_del(o1, o2);
}

TransformableOp sun(const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.kind == OpKind::Ins && o2.kind == OpKind::Ins) {
    return o1.pos < o2.pos ? o1 : shifted(o1, +1);
  }
  if (o1.kind == OpKind::Ins) return ins_vs_del(o1, o2);
  if (o2.kind == OpKind::Ins) return del_vs_ins(o1, o2);
  return del_vs_del(o1, o2);
}

TransformableOp suleiman(const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.kind == OpKind::Ins && o2.kind == OpKind::Ins) {
    if (o1.pos < o2.pos) return o1;
    if (o1.pos > o2.pos) return shifted(o1, +1);
    if (o1.ext.av & o2.ext.ap) return shifted(o1, +1);
    if (o1.ext.ap & o2.ext.av) return o1;
    if (code(o1.ch) > code(o2.ch)) return o1;
    if (code(o1.ch) < code(o2.ch)) return shifted(o1, +1);
    return nop_of(o1);
  }
  if (o1.kind == OpKind::Ins) {
    TransformableOp out = o1;
    const OpIdSet del = OpIdSet{1} << o2.id;
    if (o1.pos <= o2.pos) {
      out.ext.ap |= del;
    } else {
      out.pos -= 1;
      out.ext.av |= del;
    }
    return out;
  }
  if (o2.kind == OpKind::Ins) return del_vs_ins(o1, o2);
  return del_vs_del(o1, o2);
}

TransformableOp imine(const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.kind == OpKind::Ins && o2.kind == OpKind::Ins) {
    if (o1.pos < o2.pos) return o1;
    if (o1.pos > o2.pos) return shifted(o1, +1);
    if (o1.ext.ip < o2.ext.ip) return o1;
    if (o1.ext.ip > o2.ext.ip) return shifted(o1, +1);
    if (code(o1.ch) < code(o2.ch)) return o1;
    if (code(o1.ch) > code(o2.ch)) return shifted(o1, +1);
    return nop_of(o1);
  }
  if (o1.kind == OpKind::Ins) return ins_vs_del(o1, o2);
  if (o2.kind == OpKind::Ins) return del_vs_ins(o1, o2);
  return del_vs_del(o1, o2);
}

}  // namespace

const char* to_string(AlgorithmId alg) {
  switch (alg) {
    case AlgorithmId::Ellis:
      return "ellis";
    case AlgorithmId::Ressel:
      return "ressel";
    case AlgorithmId::Sun:
      return "sun";
    case AlgorithmId::Suleiman:
      return "suleiman";
    case AlgorithmId::Imine:
      return "imine";
  }
  return "?";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
  for (AlgorithmId alg : kAllAlgorithms) {
    if (name == to_string(alg)) return alg;
  }
  return std::nullopt;
}

TransformableOp it(AlgorithmId alg, const TransformableOp& o1, const TransformableOp& o2) {
  if (o1.kind == OpKind::Nop || o2.kind == OpKind::Nop) return o1;
  switch (alg) {
    case AlgorithmId::Ellis:
      return ellis(o1, o2);
    case AlgorithmId::Ressel:
      return ressel(o1, o2);
    case AlgorithmId::Sun:
      return sun(o1, o2);
    case AlgorithmId::Suleiman:
      return suleiman(o1, o2);
    case AlgorithmId::Imine:
      return imine(o1, o2);
  }
  return o1;
}

TransformableOp it_star(AlgorithmId alg, TransformableOp o, std::span<const TransformableOp> seq) {
  for (const auto& other : seq) o = it(alg, o, other);
  return o;
}

}  // namespace otcheck
