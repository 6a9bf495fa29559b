/* Copyright 2026 The tileselect Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tileselect/candidates.hpp"

#include <algorithm>
#include <cassert>

#include "tileselect/errors.hpp"

namespace tileselect {
namespace {

// Powers of two in [lo, hi]; lo must itself be a power of two.
std::vector<int64_t> powers_of_two(int64_t lo, int64_t hi) {
  std::vector<int64_t> out;
  for (int64_t v = lo; v <= hi; v *= 2) out.push_back(v);
  return out;
}

int64_t isqrt(int64_t n) {
  int64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<Factorization> factorizations(int64_t n) {
  assert(n >= 1);
  std::vector<Factorization> small;
  std::vector<Factorization> large;
  for (int64_t i = 1; i * i <= n; ++i) {
    if (n % i != 0) continue;
    small.emplace_back(i, n / i);
    if (i != n / i) large.emplace_back(n / i, i);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Factorization default_factorization(int64_t n) {
  assert(n >= 1);
  int64_t f = isqrt(n);
  while (n % f != 0) --f;
  return {f, n / f};
}

std::vector<TileConfig> candidates(const ProblemShape& problem,
                                   const HardwareProfile& profile,
                                   const CandidateBounds& bounds) {
  const MatrixInstruction& mi = profile.instruction(problem.dtype);
  const auto l2_tiles = factorizations(profile.cu_groups_per_l2);

  std::vector<int64_t> stages;
  for (int64_t s : bounds.stages) {
    if (s >= 1 && s <= profile.max_pipeline_stages) stages.push_back(s);
  }
  std::sort(stages.begin(), stages.end());
  stages.erase(std::unique(stages.begin(), stages.end()), stages.end());

  std::vector<TileConfig> out;
  for (int64_t mt_m : powers_of_two(mi.mi_m, bounds.max_mt_m)) {
    for (int64_t mt_n : powers_of_two(mi.mi_n, bounds.max_mt_n)) {
      for (int64_t mt_k : powers_of_two(mi.mi_k, bounds.max_mt_k)) {
        for (const auto& [ct_m, ct_n] : l2_tiles) {
          for (int64_t s : stages) {
            TileConfig c{mt_m, mt_n, mt_k, ct_m, ct_n, s};
            if (lds_footprint_bytes(c, mi.bytes_per_element) <=
                profile.lds_capacity_bytes) {
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  if (out.empty()) {
    throw EmptyCandidateSetError(
        "no LDS-feasible tile for dtype " + problem.dtype + " on '" +
        profile.name + "' (minimal tile " + std::to_string(mi.mi_m) + "x" +
        std::to_string(mi.mi_n) + "x" + std::to_string(mi.mi_k) +
        " does not fit " + std::to_string(profile.lds_capacity_bytes) +
        " bytes of LDS within the tile bounds)");
  }
  return out;
}

}  // namespace tileselect
