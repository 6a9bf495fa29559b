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

#ifndef TILESELECT_BOTTLENECK_HPP_
#define TILESELECT_BOTTLENECK_HPP_

#include <cstdint>
#include <string>

namespace tileselect {

struct LatencyBreakdown;

// The competing rooflines a tiling can be limited by.
enum class BottleneckLabel {
  LoadStoreIssueBound,
  SharedMemoryBandwidthBound,
  CacheBandwidthBound,
  UnderOccupiedComputeBound,
  MaxParallelismComputeBound,
};

// Which latency term won the per-iteration max.
enum class LimitingTerm {
  Compute,   // L_MT (compute latency of the workgroup tile)
  CuIssue,   // L_CU_lat
  L2,        // L_1 (Mem1)
  Llc,       // L_2 (Mem2)
  Memory,    // L_MEM
};

struct Bottleneck {
  BottleneckLabel label = BottleneckLabel::MaxParallelismComputeBound;
  LimitingTerm term = LimitingTerm::Compute;

  bool operator==(const Bottleneck&) const = default;
};

const char* to_string(BottleneckLabel label);
const char* to_string(LimitingTerm term);

// Label plus the cache level for CacheBandwidthBound,
// e.g. "CacheBandwidthBound(memory)".
std::string describe(const Bottleneck& bottleneck);

// Rule table over the breakdown's compute and memory terms. Ties between
// memory terms resolve toward the CU end of the hierarchy.
Bottleneck classify(const LatencyBreakdown& breakdown, int64_t n_cu);

// Human-readable account of which rule fired and why.
std::string rule_trace(const LatencyBreakdown& breakdown, int64_t n_cu);

}  // namespace tileselect

#endif  // TILESELECT_BOTTLENECK_HPP_
