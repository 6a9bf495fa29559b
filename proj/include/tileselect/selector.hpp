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

#ifndef TILESELECT_SELECTOR_HPP_
#define TILESELECT_SELECTOR_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "tileselect/candidates.hpp"
#include "tileselect/hardware_profile.hpp"
#include "tileselect/latency_model.hpp"

namespace tileselect {

struct RankedCandidate {
  TileConfig config;
  LatencyBreakdown breakdown;

  bool operator==(const RankedCandidate&) const = default;
};

struct SelectOptions {
  CandidateBounds bounds;
  // When set, these configs are ranked instead of enumerating `bounds`.
  std::optional<std::vector<TileConfig>> candidates;
  // Worker threads for candidate evaluation; 0 or 1 evaluates inline.
  std::size_t threads = 1;
};

struct SelectionResult {
  TileConfig winner;
  LatencyBreakdown winner_breakdown;
  std::vector<RankedCandidate> ranked;  // ascending by l_total
  // True when the runner-up has a bit-identical l_total.
  bool tie_break_applied = false;
  double selection_time_us = 0.0;
};

// Strict total order used for ranking: l_total ascending, then larger
// MT_M * MT_N, larger MT_M, larger MT_K, smaller cache_tile_m, larger stages.
bool ranks_before(const RankedCandidate& a, const RankedCandidate& b);

// Evaluates every candidate and ranks them. Throws whatever enumeration or
// evaluation throws.
SelectionResult select(const ProblemShape& problem,
                       const HardwareProfile& profile,
                       const SelectOptions& options = {});

}  // namespace tileselect

#endif  // TILESELECT_SELECTOR_HPP_
