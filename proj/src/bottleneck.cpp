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

#include "tileselect/bottleneck.hpp"

#include <sstream>

#include "tileselect/latency_model.hpp"

namespace tileselect {
namespace {

LimitingTerm dominant_memory_term(const LatencyBreakdown& b) {
  LimitingTerm term = LimitingTerm::CuIssue;
  double best = b.l_cu_issue;
  if (b.l_l2 > best) { term = LimitingTerm::L2; best = b.l_l2; }
  if (b.l_llc > best) { term = LimitingTerm::Llc; best = b.l_llc; }
  if (b.l_mem_level > best) { term = LimitingTerm::Memory; }
  return term;
}

}  // namespace

const char* to_string(BottleneckLabel label) {
  switch (label) {
    case BottleneckLabel::LoadStoreIssueBound: return "LoadStoreIssueBound";
    case BottleneckLabel::SharedMemoryBandwidthBound: return "SharedMemoryBandwidthBound";
    case BottleneckLabel::CacheBandwidthBound: return "CacheBandwidthBound";
    case BottleneckLabel::UnderOccupiedComputeBound: return "UnderOccupiedComputeBound";
    case BottleneckLabel::MaxParallelismComputeBound: return "MaxParallelismComputeBound";
  }
  return "unknown";
}

const char* to_string(LimitingTerm term) {
  switch (term) {
    case LimitingTerm::Compute: return "compute";
    case LimitingTerm::CuIssue: return "cu_issue";
    case LimitingTerm::L2: return "l2";
    case LimitingTerm::Llc: return "llc";
    case LimitingTerm::Memory: return "memory";
  }
  return "unknown";
}

std::string describe(const Bottleneck& b) {
  std::string s = to_string(b.label);
  if (b.label == BottleneckLabel::CacheBandwidthBound) {
    s += "(";
    s += to_string(b.term);
    s += ")";
  }
  return s;
}

Bottleneck classify(const LatencyBreakdown& b, int64_t n_cu) {
  if (b.l_compute >= b.l_mem) {
    return {b.output_tiles >= n_cu ? BottleneckLabel::MaxParallelismComputeBound
                                   : BottleneckLabel::UnderOccupiedComputeBound,
            LimitingTerm::Compute};
  }
  const LimitingTerm term = dominant_memory_term(b);
  if (term == LimitingTerm::CuIssue) {
    return {b.memory_clients < n_cu ? BottleneckLabel::LoadStoreIssueBound
                                    : BottleneckLabel::SharedMemoryBandwidthBound,
            term};
  }
  return {BottleneckLabel::CacheBandwidthBound, term};
}

std::string rule_trace(const LatencyBreakdown& b, int64_t n_cu) {
  std::ostringstream out;
  const Bottleneck result = classify(b, n_cu);
  if (result.term == LimitingTerm::Compute) {
    out << "L_MT (" << b.l_compute << ") >= L_mem (" << b.l_mem
        << "): compute bound; T_out (" << b.output_tiles << ")"
        << (b.output_tiles >= n_cu ? " >= " : " < ") << "N_CU (" << n_cu
        << ") -> " << describe(result);
    return out.str();
  }
  out << "L_MT (" << b.l_compute << ") < L_mem (" << b.l_mem
      << "): memory bound; max term is ";
  switch (result.term) {
    case LimitingTerm::CuIssue:
      out << "L_CU_lat (" << b.l_cu_issue << "); C (" << b.memory_clients << ")"
          << (b.memory_clients < n_cu ? " < " : " >= ") << "N_CU (" << n_cu
          << ")";
      if (result.label == BottleneckLabel::SharedMemoryBandwidthBound) {
        // No dedicated LDS term in the model; per-CU load rate under full
        // occupancy stands in for it.
        out << " [approximation: per-CU load path under full occupancy]";
      }
      break;
    case LimitingTerm::L2: out << "L_1 (" << b.l_l2 << ")"; break;
    case LimitingTerm::Llc: out << "L_2 (" << b.l_llc << ")"; break;
    case LimitingTerm::Memory: out << "L_MEM (" << b.l_mem_level << ")"; break;
    case LimitingTerm::Compute: break;
  }
  out << " -> " << describe(result);
  return out.str();
}

}  // namespace tileselect
