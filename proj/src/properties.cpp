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

#include "otcheck/properties.hpp"

#include <array>
#include <atomic>
#include <limits>
#include <string>

namespace otcheck {

std::vector<Divergence> check_convergence(const SystemState& state) {
  std::vector<Divergence> out;
  const int n = static_cast<int>(state.sites.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!stable_pair(state, i, j)) continue;
      const auto& a = state.sites[static_cast<std::size_t>(i)].text;
      const auto& b = state.sites[static_cast<std::size_t>(j)].text;
      if (a == b) continue;
      out.push_back({i, j, diff_cells(a, b)});
    }
  }
  return out;
}

void PropertyBounds::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (pmax < 0) fail("pmax must be non-negative");
  if (alphabet < 1 || alphabet > 100) fail("alphabet must be in [1, 100]");
  const int len = window_length();
  if (len < pmax + 2 || len > kMaxWindow) {
    fail("window must be in [pmax + 2, " + std::to_string(kMaxWindow) + "], got " + std::to_string(len));
  }
  if (synth_ext && kSyntheticDelete + pmax >= kMaxOpIdSetBits) {
    fail("synthetic extension fields need pmax <= " +
         std::to_string(kMaxOpIdSetBits - kSyntheticDelete - 1));
  }
  if (threads < 1) fail("threads must be at least 1");
  // Keep the TP1 window set and the TP2 triple space countable.
  double windows = 0;
  double block = 1;
  for (int k = 1; k < len; ++k) {
    block *= alphabet;
    if (k >= pmax + 1) windows += block;
  }
  if (windows > 1e7) fail("too many TP1 windows; lower the window or the alphabet");
}

std::vector<TransformableOp> tp_candidates(const PropertyBounds& bounds) {
  std::vector<TransformableOp> out;
  for (int p = 0; p <= bounds.pmax; ++p) {
    TransformableOp del;
    del.kind = OpKind::Del;
    del.pos = p;
    out.push_back(del);
  }
  std::vector<OpIdSet> sets{0};
  if (bounds.synth_ext) {
    for (int q = 0; q <= bounds.pmax; ++q) sets.push_back(OpIdSet{1} << (kSyntheticDelete + q));
  }
  for (int p = 0; p <= bounds.pmax; ++p) {
    for (int c = 0; c < bounds.alphabet; ++c) {
      const int ip_lo = bounds.synth_ext ? 0 : p;
      const int ip_hi = bounds.synth_ext ? bounds.pmax : p;
      for (int ip = ip_lo; ip <= ip_hi; ++ip) {
        for (OpIdSet av : sets) {
          for (OpIdSet ap : sets) {
            TransformableOp ins;
            ins.kind = OpKind::Ins;
            ins.pos = p;
            ins.ch = static_cast<Element>(c);
            ins.ext.ip = ip;
            ins.ext.av = av;
            ins.ext.ap = ap;
            out.push_back(ins);
          }
        }
      }
    }
  }
  return out;
}

std::vector<DocWindow> tp1_windows(const PropertyBounds& bounds) {
  std::vector<DocWindow> out;
  const int len = bounds.window_length();
  for (int k = bounds.pmax + 1; k < len; ++k) {
    std::vector<int> digits(static_cast<std::size_t>(k), 0);
    for (;;) {
      DocWindow w(len);
      for (int i = 0; i < k; ++i) w[i] = static_cast<Element>(digits[static_cast<std::size_t>(i)]);
      out.push_back(w);
      int i = k - 1;
      while (i >= 0 && ++digits[static_cast<std::size_t>(i)] == bounds.alphabet) {
        digits[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return out;
}

std::optional<TPViolation> tp1_case(AlgorithmId alg, const TransformableOp& o1,
                                    const TransformableOp& o2, const DocWindow& window) {
  const TransformableOp o2t = it(alg, o2, o1);
  const TransformableOp o1t = it(alg, o1, o2);
  const DocWindow t1 = apply(apply(window, o1.signature()), o2t.signature());
  const DocWindow t2 = apply(apply(window, o2.signature()), o1t.signature());
  if (t1.same_content(t2)) return std::nullopt;
  TPViolation v;
  v.kind = TPKind::TP1;
  v.ops = {o1, o2};
  v.window = window;
  v.text1 = t1;
  v.text2 = t2;
  v.result1 = o2t;
  v.result2 = o1t;
  return v;
}

std::optional<TPViolation> tp2_case(AlgorithmId alg, const TransformableOp& o,
                                    const TransformableOp& o1, const TransformableOp& o2) {
  const std::array<TransformableOp, 2> seq1{o1, it(alg, o2, o1)};
  const std::array<TransformableOp, 2> seq2{o2, it(alg, o1, o2)};
  const TransformableOp r1 = it_star(alg, o, seq1);
  const TransformableOp r2 = it_star(alg, o, seq2);
  if (same_effect(r1.signature(), r2.signature())) return std::nullopt;
  TPViolation v;
  v.kind = TPKind::TP2;
  v.ops = {o, o1, o2};
  v.result1 = r1;
  v.result2 = r2;
  return v;
}

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

TransformableOp owned(TransformableOp op, int owner) {
  op.id = owner;
  op.ext.pr = owner;
  op.ext.u = owner;
  return op;
}

// Candidate lists with ids and owners filled in, one per owner.
struct Space {
  std::array<std::vector<TransformableOp>, 3> by_owner;
  std::vector<DocWindow> windows;
  std::uint64_t n = 0;

  Space(const PropertyBounds& bounds, bool tp1) {
    bounds.validate();
    const auto base = tp_candidates(bounds);
    n = base.size();
    for (int owner = 0; owner < 3; ++owner) {
      for (const auto& op : base) by_owner[static_cast<std::size_t>(owner)].push_back(owned(op, owner));
    }
    if (tp1) windows = tp1_windows(bounds);
  }

  const TransformableOp& at(int owner, std::uint64_t i) const {
    return by_owner[static_cast<std::size_t>(owner)][i];
  }

  std::uint64_t tp1_total() const { return n * n * windows.size(); }
  std::uint64_t tp2_total() const { return 3 * n * n * n; }

  // index = (i * n + j) * W + w, o1 owned by site 0 and o2 by site 1.
  std::optional<TPViolation> tp1(AlgorithmId alg, std::uint64_t index) const {
    const std::uint64_t w = index % windows.size();
    const std::uint64_t pair = index / windows.size();
    auto v = tp1_case(alg, at(0, pair / n), at(1, pair % n), windows[w]);
    if (v) v->index = index;
    return v;
  }

  // index = ((o_owner * n + i) * n + j) * n + k.
  std::optional<TPViolation> tp2(AlgorithmId alg, std::uint64_t index) const {
    const std::uint64_t k = index % n;
    const std::uint64_t j = (index / n) % n;
    const std::uint64_t i = (index / n / n) % n;
    const int owner = static_cast<int>(index / n / n / n);
    const int owner1 = owner == 0 ? 1 : 0;
    const int owner2 = owner == 2 ? 1 : 2;
    auto v = tp2_case(alg, at(owner, i), at(owner1, j), at(owner2, k));
    if (v) v->index = index;
    return v;
  }
};

template <typename Eval>
std::optional<TPViolation> first_serial(std::uint64_t total, Eval eval) {
  for (std::uint64_t index = 0; index < total; ++index) {
    if (auto v = eval(index)) return v;
  }
  return std::nullopt;
}

template <typename Eval>
std::optional<TPViolation> first_parallel(std::uint64_t total, int threads, Eval eval) {
  std::atomic<std::uint64_t> best{kNone};
  const auto limit = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 4096) num_threads(threads)
  for (std::int64_t i = 0; i < limit; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    if (index >= best.load(std::memory_order_relaxed)) continue;
    if (!eval(index)) continue;
    std::uint64_t seen = best.load(std::memory_order_relaxed);
    while (index < seen && !best.compare_exchange_weak(seen, index)) {
    }
  }
  if (best.load() == kNone) return std::nullopt;
  return eval(best.load());
}

template <typename Eval>
std::vector<TPViolation> collect(std::uint64_t total, Eval eval) {
  std::vector<TPViolation> out;
  for (std::uint64_t index = 0; index < total; ++index) {
    if (auto v = eval(index)) out.push_back(std::move(*v));
  }
  return out;
}

}  // namespace

std::uint64_t tp1_space(const PropertyBounds& bounds) { return Space(bounds, true).tp1_total(); }
std::uint64_t tp2_space(const PropertyBounds& bounds) { return Space(bounds, false).tp2_total(); }

std::optional<TPViolation> check_tp1_serial(AlgorithmId alg, const PropertyBounds& bounds) {
  const Space sp(bounds, true);
  return first_serial(sp.tp1_total(), [&](std::uint64_t i) { return sp.tp1(alg, i); });
}

std::optional<TPViolation> check_tp1_parallel(AlgorithmId alg, const PropertyBounds& bounds) {
  const Space sp(bounds, true);
  return first_parallel(sp.tp1_total(), bounds.threads, [&](std::uint64_t i) { return sp.tp1(alg, i); });
}

std::optional<TPViolation> check_tp2_serial(AlgorithmId alg, const PropertyBounds& bounds) {
  const Space sp(bounds, false);
  return first_serial(sp.tp2_total(), [&](std::uint64_t i) { return sp.tp2(alg, i); });
}

std::optional<TPViolation> check_tp2_parallel(AlgorithmId alg, const PropertyBounds& bounds) {
  const Space sp(bounds, false);
  return first_parallel(sp.tp2_total(), bounds.threads, [&](std::uint64_t i) { return sp.tp2(alg, i); });
}

std::optional<TPViolation> check_tp1(AlgorithmId alg, const PropertyBounds& bounds) {
  return bounds.threads > 1 ? check_tp1_parallel(alg, bounds) : check_tp1_serial(alg, bounds);
}

std::optional<TPViolation> check_tp2(AlgorithmId alg, const PropertyBounds& bounds) {
  return bounds.threads > 1 ? check_tp2_parallel(alg, bounds) : check_tp2_serial(alg, bounds);
}

std::vector<TPViolation> all_tp1(AlgorithmId alg, const PropertyBounds& bounds) {
  const Space sp(bounds, true);
  return collect(sp.tp1_total(), [&](std::uint64_t i) { return sp.tp1(alg, i); });
}

std::vector<TPViolation> all_tp2(AlgorithmId alg, const PropertyBounds& bounds) {
  const Space sp(bounds, false);
  return collect(sp.tp2_total(), [&](std::uint64_t i) { return sp.tp2(alg, i); });
}

}  // namespace otcheck
