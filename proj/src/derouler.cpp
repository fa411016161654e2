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

#include <atomic>
#include <cstdint>
#include <limits>

#include <omp.h>

#include "otcheck/explorer.hpp"

namespace otcheck {

int signature_count(int window, int alphabet) { return window + alphabet * window; }

OpSignature signature_at(int index, int window, int alphabet) {
  if (index < window) return OpSignature::del(index);
  const int rest = index - window;
  return OpSignature::ins(rest / alphabet, static_cast<Element>(rest % alphabet));
}

std::uint64_t DeroulerInput::assignment_count() const {
  std::uint64_t total = 1;
  for (int i = 0; i < ops.size(); ++i) total *= static_cast<std::uint64_t>(signature_count(window, alphabet));
  return total;
}

void assign_signatures(OpsTable& ops, std::uint64_t index, int window, int alphabet) {
  const auto base = static_cast<std::uint64_t>(signature_count(window, alphabet));
  for (int id = ops.size() - 1; id >= 0; --id) {
    const OpSignature sig = signature_at(static_cast<int>(index % base), window, alphabet);
    index /= base;
    ops[id].sig = generated_signature(sig.kind, sig.pos, sig.ch, ops[id].owner);
  }
}

SiteState replay_site(AlgorithmId alg, int site, std::span<const OpId> trace, const OpsTable& ops,
                      int nb_sites, const DocWindow& initial) {
  SiteState state = SiteState::initial(site, nb_sites, initial);
  for (OpId id : trace) state = integrate(alg, id, std::move(state), ops);
  return state;
}

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

int nb_sites_of(const DeroulerInput& in) { return static_cast<int>(in.traces.per_site.size()); }

bool pair_diverges(const DeroulerInput& in, const OpsTable& ops, int a, int b) {
  const int n = nb_sites_of(in);
  const auto& ta = in.traces.per_site[static_cast<std::size_t>(a)];
  const auto& tb = in.traces.per_site[static_cast<std::size_t>(b)];
  return !(replay_site(in.alg, a, ta, ops, n, in.initial).text ==
           replay_site(in.alg, b, tb, ops, n, in.initial).text);
}

}  // namespace

std::optional<DeroulerHit> derouler_serial(const DeroulerInput& in, std::uint64_t* tested) {
  const std::uint64_t total = in.assignment_count();
  std::uint64_t best = kNone;
  std::uint64_t count = 0;
  DeroulerHit hit;
  OpsTable ops = in.ops;
  for (const auto& [a, b] : in.pairs) {
    const std::uint64_t limit = best == kNone ? total : best;
    for (std::uint64_t index = 0; index < limit; ++index) {
      ++count;
      assign_signatures(ops, index, in.window, in.alphabet);
      if (pair_diverges(in, ops, a, b)) {
        best = index;
        hit = {index, a, b};
        break;
      }
    }
  }
  if (tested) *tested = count;
  if (best == kNone) return std::nullopt;
  return hit;
}

std::optional<DeroulerHit> derouler_parallel(const DeroulerInput& in, std::uint64_t* tested) {
  const auto total = static_cast<std::int64_t>(in.assignment_count());
  std::uint64_t best = kNone;
  std::atomic<std::uint64_t> count{0};
  DeroulerHit hit;
  const int threads = in.threads > 0 ? in.threads : omp_get_max_threads();
  for (const auto& [a, b] : in.pairs) {
    std::atomic<std::uint64_t> pair_best{best};
    const std::int64_t limit = best == kNone ? total : static_cast<std::int64_t>(best);
#pragma omp parallel num_threads(threads)
    {
      OpsTable ops = in.ops;
      std::uint64_t local = 0;
#pragma omp for schedule(dynamic, 512)
      for (std::int64_t i = 0; i < limit; ++i) {
        const auto index = static_cast<std::uint64_t>(i);
        if (index >= pair_best.load(std::memory_order_relaxed)) continue;
        ++local;
        assign_signatures(ops, index, in.window, in.alphabet);
        if (!pair_diverges(in, ops, a, b)) continue;
        std::uint64_t seen = pair_best.load(std::memory_order_relaxed);
        while (index < seen && !pair_best.compare_exchange_weak(seen, index)) {
        }
      }
      count += local;
    }
    if (pair_best.load() < best) {
      best = pair_best.load();
      hit = {best, a, b};
    }
  }
  if (tested) *tested = count.load();
  if (best == kNone) return std::nullopt;
  return hit;
}

std::vector<std::uint64_t> derouler_all(const DeroulerInput& in) {
  std::vector<std::uint64_t> out;
  OpsTable ops = in.ops;
  const std::uint64_t total = in.assignment_count();
  for (std::uint64_t index = 0; index < total; ++index) {
    assign_signatures(ops, index, in.window, in.alphabet);
    for (const auto& [a, b] : in.pairs) {
      if (pair_diverges(in, ops, a, b)) {
        out.push_back(index);
        break;
      }
    }
  }
  return out;
}

Counterexample counterexample_from(const ExplorerConfig& cfg, const DeroulerInput& in,
                                   const DeroulerHit& hit) {
  Counterexample ce;
  ce.config = cfg;
  ce.ops = in.ops;
  assign_signatures(ce.ops, hit.assignment, in.window, in.alphabet);
  const int n = nb_sites_of(in);
  for (int s = 0; s < n; ++s) {
    const SiteState st =
        replay_site(in.alg, s, in.traces.per_site[static_cast<std::size_t>(s)], ce.ops, n, in.initial);
    ce.sites.push_back({s, st.history, st.text});
  }
  ce.site_a = hit.site_a;
  ce.site_b = hit.site_b;
  ce.divergent_cells = diff_cells(ce.run_of(hit.site_a).final_text, ce.run_of(hit.site_b).final_text);
  return ce;
}

}  // namespace otcheck
