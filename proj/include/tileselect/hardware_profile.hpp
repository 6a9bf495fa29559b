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

#ifndef TILESELECT_HARDWARE_PROFILE_HPP_
#define TILESELECT_HARDWARE_PROFILE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tileselect {

// Fixed-shape hardware matrix op (mfma / wmma) for one element type.
struct MatrixInstruction {
  int64_t mi_m = 0;
  int64_t mi_n = 0;
  int64_t mi_k = 0;
  // Cycles per instruction as seen by one CU. SIMD-level parallelism is
  // folded into this number by the calibration.
  double latency_cycles = 0.0;
  int64_t bytes_per_element = 0;

  bool operator==(const MatrixInstruction&) const = default;
};

// Calibrated machine description. Bandwidths are stored in bytes per compute
// cycle and converted to elements per cycle per dtype by rates_for(). The L2
// and LLC bandwidths are device-aggregate figures.
struct HardwareProfile {
  std::string name;
  int64_t compute_units = 0;
  int64_t cu_groups_per_l2 = 0;  // CUs sharing one L2 (one XCD on MI300X)
  int64_t simds_per_cu = 0;
  int64_t lds_capacity_bytes = 0;
  double l1_rate_bytes_per_cycle = 0.0;
  double l2_bandwidth_bytes_per_cycle = 0.0;
  double l2_capacity_bytes = 0.0;
  double llc_bandwidth_bytes_per_cycle = 0.0;
  double llc_capacity_bytes = 0.0;
  double mem_bandwidth_bytes_per_cycle = 0.0;
  double mem_latency_cycles = 0.0;
  std::map<std::string, MatrixInstruction, std::less<>> instructions;
  int64_t max_pipeline_stages = 0;

  bool operator==(const HardwareProfile&) const = default;

  bool supports(std::string_view dtype) const {
    return instructions.find(dtype) != instructions.end();
  }

  // Throws UnsupportedDtypeError.
  const MatrixInstruction& instruction(std::string_view dtype) const;
};

// Load rates in elements per compute cycle for one dtype.
struct RateSet {
  double l1 = 0.0;   // per-CU load path (R_L1)
  double l2 = 0.0;   // Mem1 (R_1)
  double llc = 0.0;  // Mem2 (R_2)
  double mem = 0.0;  // device memory (R_MEM)
};

// Divides each byte rate by the dtype width. Throws UnsupportedDtypeError.
RateSet rates_for(const HardwareProfile& profile, std::string_view dtype);

// Every violated invariant, in field order. Empty means valid.
std::vector<std::string> validate(const HardwareProfile& profile);

// Parses profile text without validating it. Throws ProfileParseError.
HardwareProfile parse_profile(std::string_view text);

// Parses and validates. Throws ProfileParseError or ProfileValidationError
// (the latter naming the first violated invariant).
HardwareProfile load_profile_text(std::string_view text);
HardwareProfile load_profile(const std::filesystem::path& path);

// Emits text that parse_profile() reads back field-identical.
std::string serialize_profile(const HardwareProfile& profile);

// Resolves a --hw argument: an existing file path is used as is; otherwise
// `<name>.toml` is looked up in $TILESELECT_PROFILE_DIR and then in the
// profile directory baked in at build time.
std::filesystem::path resolve_profile_path(const std::string& name_or_path);

}  // namespace tileselect

#endif  // TILESELECT_HARDWARE_PROFILE_HPP_
