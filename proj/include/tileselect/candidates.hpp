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

#ifndef TILESELECT_CANDIDATES_HPP_
#define TILESELECT_CANDIDATES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "tileselect/hardware_profile.hpp"
#include "tileselect/latency_model.hpp"

namespace tileselect {

using Factorization = std::pair<int64_t, int64_t>;

// All (f_m, f_n) with f_m * f_n == n, ascending in f_m.
std::vector<Factorization> factorizations(int64_t n);

// Closest-to-square factorization: the largest divisor of n not above
// floor(sqrt(n)), paired with its cofactor.
Factorization default_factorization(int64_t n);

struct CandidateBounds {
  int64_t max_mt_m = 256;
  int64_t max_mt_n = 256;
  int64_t max_mt_k = 256;
  // Clipped to the profile's max_pipeline_stages.
  std::vector<int64_t> stages = {1, 2};
};

// Power-of-two workgroup tiles from the instruction shape up to the bounds,
// LDS-feasible, crossed with every L2-scope cache-tile factorization. Sorted
// by (mt_m, mt_n, mt_k, cache_tile_m, stages). Throws UnsupportedDtypeError,
// or EmptyCandidateSetError when nothing fits.
std::vector<TileConfig> candidates(const ProblemShape& problem,
                                   const HardwareProfile& profile,
                                   const CandidateBounds& bounds = {});

}  // namespace tileselect

#endif  // TILESELECT_CANDIDATES_HPP_
