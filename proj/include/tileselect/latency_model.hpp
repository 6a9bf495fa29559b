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

// Hierarchical latency model for an output-stationary tiled GEMM.
//
// A workgroup (macro) tile MT_M x MT_N x MT_K is owned by one CU per K-step.
// Output tiles are spread over the CUs in waves; the K loop is software
// pipelined so each steady-state iteration costs max(compute, memory).
// Loads flow CU -> L2 (Mem1, one per CU group) -> LLC (Mem2, device wide)
// -> memory, with hit rates derived from how workgroup tiles are arranged
// inside each cache scope ("cache tiles").
//
// All latencies are real-valued compute cycles. Ceilings appear only where
// tile counts are taken.

#ifndef TILESELECT_LATENCY_MODEL_HPP_
#define TILESELECT_LATENCY_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tileselect/bottleneck.hpp"
#include "tileselect/hardware_profile.hpp"

namespace tileselect {

struct ProblemShape {
  int64_t m = 0;
  int64_t n = 0;
  int64_t k = 0;
  std::string dtype;

  bool operator==(const ProblemShape&) const = default;
};

// Throws InvalidProblemError unless m, n, k >= 1 and dtype is non-empty.
void check_problem(const ProblemShape& problem);

struct TileConfig {
  int64_t mt_m = 0;
  int64_t mt_n = 0;
  int64_t mt_k = 0;
  // Arrangement of workgroup tiles sharing one L2 (m_t x n_t). Counts of
  // tiles, not elements.
  int64_t cache_tile_m = 1;
  int64_t cache_tile_n = 1;
  int64_t stages = 1;

  auto operator<=>(const TileConfig&) const = default;
};

std::string to_string(const TileConfig& config);

// Bytes of LDS a config needs: (MT_M + MT_N) * MT_K * bytes * stages.
int64_t lds_footprint_bytes(const TileConfig& config, int64_t bytes_per_element);

// Every violated feasibility constraint for running `config` with `dtype` on
// `profile`. Empty means feasible. Throws UnsupportedDtypeError.
std::vector<std::string> feasibility_violations(const TileConfig& config,
                                                const std::string& dtype,
                                                const HardwareProfile& profile);

struct ComputeLatency {
  int64_t n_mi = 0;         // matrix instructions per workgroup tile
  double l_compute = 0.0;   // L_MT
};

ComputeLatency compute_latency(const TileConfig& config,
                               const MatrixInstruction& mi);

struct Occupancy {
  int64_t output_tiles = 0;  // T_out
  int64_t waves = 0;
  // CUs busy in the last wave. A perfectly full last wave reports n_cu,
  // never 0.
  int64_t active_cu = 0;
};

Occupancy occupancy(const ProblemShape& problem, const TileConfig& config,
                    int64_t n_cu);

// Fraction of loads served by a cache shared by a cache_tile_m x
// cache_tile_n arrangement of workgroup tiles, clamped to [0, 1].
double hit_rate(int64_t cache_tile_m, int64_t cache_tile_n,
                const TileConfig& config);

// Bytes one cache scope touches per K-step:
// (m_t * MT_M + n_t * MT_N) * MT_K * bytes_per_element.
double working_set_bytes(int64_t cache_tile_m, int64_t cache_tile_n,
                         const TileConfig& config, int64_t bytes_per_element);

// h * min(1, capacity / working_set).
double capacity_adjusted_hit_rate(double hit, double working_set_bytes,
                                  double capacity_bytes);

struct MemoryLatency {
  double l_cu_issue = 0.0;  // L_CU_lat
  double l_l2 = 0.0;        // L_1
  double l_llc = 0.0;       // L_2
  double l_mem_level = 0.0; // L_MEM
  double l_mem = 0.0;       // max of the four
};

MemoryLatency memory_latency(double loads_per_cu, int64_t active_cu,
                             double hit_l2, double hit_llc,
                             const RateSet& rates, double mem_latency_cycles);

struct TileLatency {
  double l_prologue = 0.0;
  double l_epilogue = 0.0;
  double l_loopiter = 0.0;
  int64_t iterations = 0;  // ceil(K / MT_K) - 1
  double l_tile = 0.0;
};

TileLatency tile_latency(const ProblemShape& problem, const TileConfig& config,
                         double l_compute, double l_mem, int64_t active_cu,
                         const RateSet& rates);

double total_latency(const ProblemShape& problem, const TileConfig& config,
                     double l_tile, int64_t n_cu);

// Every intermediate of one (problem, config, profile) evaluation.
struct LatencyBreakdown {
  int64_t n_mi = 0;
  double l_compute = 0.0;

  int64_t output_tiles = 0;
  int64_t waves = 0;
  int64_t active_cu = 0;       // last wave, diagnostic
  int64_t memory_clients = 0;  // C = min(T_out, N_CU), used by the model

  double hit_l2_raw = 0.0;
  double hit_l2 = 0.0;
  double working_set_l2_bytes = 0.0;
  int64_t llc_tile_m = 0;
  int64_t llc_tile_n = 0;
  double hit_llc_raw = 0.0;
  double hit_llc = 0.0;
  double working_set_llc_bytes = 0.0;

  double loads_per_cu = 0.0;
  double l_cu_issue = 0.0;
  double l_l2 = 0.0;
  double l_llc = 0.0;
  double l_mem_level = 0.0;
  double l_mem = 0.0;

  double l_prologue = 0.0;
  double l_epilogue = 0.0;
  double l_loopiter = 0.0;
  int64_t iterations = 0;
  double l_tile = 0.0;

  double l_total = 0.0;

  Bottleneck bottleneck;

  bool operator==(const LatencyBreakdown&) const = default;
};

// Runs the full chain. Throws UnsupportedDtypeError, InvalidProblemError or
// InfeasibleConfigError (naming the first violated constraint).
LatencyBreakdown evaluate(const ProblemShape& problem, const TileConfig& config,
                          const HardwareProfile& profile);

}  // namespace tileselect

#endif  // TILESELECT_LATENCY_MODEL_HPP_
