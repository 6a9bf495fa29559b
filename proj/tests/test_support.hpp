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

#ifndef TILESELECT_TESTS_TEST_SUPPORT_HPP_
#define TILESELECT_TESTS_TEST_SUPPORT_HPP_

#include <filesystem>
#include <string>

#include "naive_model.hpp"
#include "tileselect/hardware_profile.hpp"
#include "tileselect/latency_model.hpp"

namespace tileselect::testing {

inline std::filesystem::path profile_dir() { return TILESELECT_PROFILE_DIR; }
inline std::filesystem::path data_dir() { return TILESELECT_TEST_DATA_DIR; }

inline HardwareProfile sample_profile() {
  return load_profile(profile_dir() / "mi300x-sample.toml");
}

inline HardwareProfile worked_profile() {
  return load_profile(data_dir() / "worked-example.toml");
}

// Field copy into the oracle's plain structs; no model logic.
inline naive::Device to_naive(const HardwareProfile& p, const std::string& dtype) {
  const MatrixInstruction& mi = p.instructions.at(dtype);
  return {p.compute_units,
          p.cu_groups_per_l2,
          p.l1_rate_bytes_per_cycle,
          p.l2_bandwidth_bytes_per_cycle,
          p.llc_bandwidth_bytes_per_cycle,
          p.mem_bandwidth_bytes_per_cycle,
          p.l2_capacity_bytes,
          p.llc_capacity_bytes,
          p.mem_latency_cycles,
          {mi.mi_m, mi.mi_n, mi.mi_k, mi.latency_cycles},
          mi.bytes_per_element};
}

inline naive::Config to_naive(const TileConfig& c) {
  return {{c.mt_m, c.mt_n, c.mt_k}, c.cache_tile_m, c.cache_tile_n};
}

}  // namespace tileselect::testing

#endif  // TILESELECT_TESTS_TEST_SUPPORT_HPP_
