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

#include "tileselect/latency_model.hpp"

#include <algorithm>
#include <tuple>

#include "tileselect/candidates.hpp"
#include "tileselect/errors.hpp"

namespace tileselect {
namespace {

constexpr int64_t ceil_div(int64_t n, int64_t d) { return (n + d - 1) / d; }

bool is_power_of_two(int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void check_problem(const ProblemShape& p) {
  for (auto [dim, value] : {std::pair{"m", p.m}, std::pair{"n", p.n},
                            std::pair{"k", p.k}}) {
    if (value < 1) {
      throw InvalidProblemError(std::string(dim) + " must be >= 1 (got " +
                                std::to_string(value) + ")");
    }
  }
  if (p.dtype.empty()) throw InvalidProblemError("dtype must be non-empty");
}

std::string to_string(const TileConfig& c) {
  return std::to_string(c.mt_m) + "x" + std::to_string(c.mt_n) + "x" +
         std::to_string(c.mt_k) + " cache_tile=" +
         std::to_string(c.cache_tile_m) + "x" + std::to_string(c.cache_tile_n) +
         " stages=" + std::to_string(c.stages);
}

int64_t lds_footprint_bytes(const TileConfig& c, int64_t bytes_per_element) {
  return (c.mt_m + c.mt_n) * c.mt_k * bytes_per_element * c.stages;
}

std::vector<std::string> feasibility_violations(const TileConfig& c,
                                                const std::string& dtype,
                                                const HardwareProfile& profile) {
  const MatrixInstruction& mi = profile.instruction(dtype);
  std::vector<std::string> v;
  for (auto [name, dim, mi_dim] :
       {std::tuple{"mt_m", c.mt_m, mi.mi_m}, std::tuple{"mt_n", c.mt_n, mi.mi_n},
        std::tuple{"mt_k", c.mt_k, mi.mi_k}}) {
    if (!is_power_of_two(dim)) {
      v.push_back(std::string(name) + " must be a power of two (got " +
                  std::to_string(dim) + ")");
    } else if (dim < mi_dim) {
      v.push_back(std::string(name) + " (" + std::to_string(dim) +
                  ") is below the matrix instruction dimension (" +
                  std::to_string(mi_dim) + ")");
    }
  }
  if (c.cache_tile_m < 1 || c.cache_tile_n < 1 ||
      c.cache_tile_m * c.cache_tile_n != profile.cu_groups_per_l2) {
    v.push_back("cache_tile_m x cache_tile_n (" +
                std::to_string(c.cache_tile_m) + "x" +
                std::to_string(c.cache_tile_n) +
                ") must multiply to cu_groups_per_l2 (" +
                std::to_string(profile.cu_groups_per_l2) + ")");
  }
  if (c.stages < 1 || c.stages > profile.max_pipeline_stages) {
    v.push_back("stages (" + std::to_string(c.stages) + ") must be in [1, " +
                std::to_string(profile.max_pipeline_stages) + "]");
  }
  if (v.empty()) {
    const int64_t lds = lds_footprint_bytes(c, mi.bytes_per_element);
    if (lds > profile.lds_capacity_bytes) {
      v.push_back("LDS footprint (" + std::to_string(lds) +
                  " bytes) exceeds lds_capacity_bytes (" +
                  std::to_string(profile.lds_capacity_bytes) + ")");
    }
  }
  return v;
}

ComputeLatency compute_latency(const TileConfig& c, const MatrixInstruction& mi) {
  const int64_t n_mi = ceil_div(c.mt_m, mi.mi_m) * ceil_div(c.mt_n, mi.mi_n) *
                       ceil_div(c.mt_k, mi.mi_k);
  return {n_mi, mi.latency_cycles * static_cast<double>(n_mi)};
}

Occupancy occupancy(const ProblemShape& p, const TileConfig& c, int64_t n_cu) {
  const int64_t tiles = ceil_div(p.m, c.mt_m) * ceil_div(p.n, c.mt_n);
  const int64_t rem = tiles % n_cu;
  return {tiles, ceil_div(tiles, n_cu), rem == 0 ? n_cu : rem};
}

double hit_rate(int64_t cache_tile_m, int64_t cache_tile_n,
                const TileConfig& c) {
  const double uncached =
      static_cast<double>(cache_tile_m * c.mt_m + cache_tile_n * c.mt_n) *
      static_cast<double>(c.mt_k);
  const double total = static_cast<double>(cache_tile_m * cache_tile_n) *
                       static_cast<double>(c.mt_m + c.mt_n) *
                       static_cast<double>(c.mt_k);
  return std::clamp(1.0 - uncached / total, 0.0, 1.0);
}

double working_set_bytes(int64_t cache_tile_m, int64_t cache_tile_n,
                         const TileConfig& c, int64_t bytes_per_element) {
  return static_cast<double>(cache_tile_m * c.mt_m + cache_tile_n * c.mt_n) *
         static_cast<double>(c.mt_k) * static_cast<double>(bytes_per_element);
}

double capacity_adjusted_hit_rate(double hit, double working_set,
                                  double capacity) {
  return hit * std::min(1.0, capacity / working_set);
}

MemoryLatency memory_latency(double loads_per_cu, int64_t active_cu,
                             double hit_l2, double hit_llc,
                             const RateSet& rates, double mem_latency_cycles) {
  MemoryLatency out;
  out.l_cu_issue = loads_per_cu / rates.l1;
  const double total = loads_per_cu * static_cast<double>(active_cu);
  out.l_l2 = total / rates.l2;
  const double l2_misses = (1.0 - hit_l2) * total;
  out.l_llc = l2_misses / rates.llc;
  const double llc_misses = (1.0 - hit_llc) * l2_misses;
  out.l_mem_level = llc_misses / rates.mem + mem_latency_cycles;
  out.l_mem =
      std::max({out.l_cu_issue, out.l_l2, out.l_llc, out.l_mem_level});
  return out;
}

TileLatency tile_latency(const ProblemShape& p, const TileConfig& c,
                         double l_compute, double l_mem, int64_t active_cu,
                         const RateSet& rates) {
  TileLatency out;
  out.l_prologue = l_mem;
  out.l_epilogue = static_cast<double>(active_cu) *
                   static_cast<double>(c.mt_m) * static_cast<double>(c.mt_n) /
                   rates.mem;
  out.l_loopiter = std::max(l_compute, l_mem);
  out.iterations = ceil_div(p.k, c.mt_k) - 1;
  out.l_tile = out.l_prologue + out.l_epilogue +
               out.l_loopiter * static_cast<double>(out.iterations);
  return out;
}

double total_latency(const ProblemShape& p, const TileConfig& c, double l_tile,
                     int64_t n_cu) {
  const int64_t tiles = ceil_div(p.m, c.mt_m) * ceil_div(p.n, c.mt_n);
  return static_cast<double>(ceil_div(tiles, n_cu)) * l_tile;
}

LatencyBreakdown evaluate(const ProblemShape& problem, const TileConfig& config,
                          const HardwareProfile& profile) {
  check_problem(problem);
  const MatrixInstruction& mi = profile.instruction(problem.dtype);
  if (auto v = feasibility_violations(config, problem.dtype, profile);
      !v.empty()) {
    throw InfeasibleConfigError("infeasible tile " + to_string(config) + ": " +
                                v.front());
  }
  const RateSet rates = rates_for(profile, problem.dtype);
  const int64_t n_cu = profile.compute_units;

  LatencyBreakdown b;
  const ComputeLatency compute = compute_latency(config, mi);
  b.n_mi = compute.n_mi;
  b.l_compute = compute.l_compute;

  const Occupancy occ = occupancy(problem, config, n_cu);
  b.output_tiles = occ.output_tiles;
  b.waves = occ.waves;
  b.active_cu = occ.active_cu;
  b.memory_clients = std::min(occ.output_tiles, n_cu);

  // Mem1: the candidate's arrangement of tiles inside one L2 scope.
  b.hit_l2_raw = hit_rate(config.cache_tile_m, config.cache_tile_n, config);
  b.working_set_l2_bytes = working_set_bytes(
      config.cache_tile_m, config.cache_tile_n, config, mi.bytes_per_element);
  b.hit_l2 = capacity_adjusted_hit_rate(b.hit_l2_raw, b.working_set_l2_bytes,
                                        profile.l2_capacity_bytes);

  // Mem2: closest-to-square arrangement of all CUs issuing loads.
  std::tie(b.llc_tile_m, b.llc_tile_n) =
      default_factorization(b.memory_clients);
  b.hit_llc_raw = hit_rate(b.llc_tile_m, b.llc_tile_n, config);
  b.working_set_llc_bytes = working_set_bytes(b.llc_tile_m, b.llc_tile_n,
                                              config, mi.bytes_per_element);
  b.hit_llc = capacity_adjusted_hit_rate(
      b.hit_llc_raw, b.working_set_llc_bytes, profile.llc_capacity_bytes);

  // One A panel and one B panel per K-step.
  b.loads_per_cu = static_cast<double>(config.mt_m + config.mt_n) *
                   static_cast<double>(config.mt_k);
  const MemoryLatency mem =
      memory_latency(b.loads_per_cu, b.memory_clients, b.hit_l2, b.hit_llc,
                     rates, profile.mem_latency_cycles);
  b.l_cu_issue = mem.l_cu_issue;
  b.l_l2 = mem.l_l2;
  b.l_llc = mem.l_llc;
  b.l_mem_level = mem.l_mem_level;
  b.l_mem = mem.l_mem;

  const TileLatency tile = tile_latency(problem, config, b.l_compute, b.l_mem,
                                        b.memory_clients, rates);
  b.l_prologue = tile.l_prologue;
  b.l_epilogue = tile.l_epilogue;
  b.l_loopiter = tile.l_loopiter;
  b.iterations = tile.iterations;
  b.l_tile = tile.l_tile;

  b.l_total = total_latency(problem, config, b.l_tile, n_cu);
  b.bottleneck = classify(b, n_cu);
  return b;
}

}  // namespace tileselect
