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

#ifndef TILESELECT_SWEEP_HPP_
#define TILESELECT_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "tileselect/hardware_profile.hpp"
#include "tileselect/latency_model.hpp"
#include "tileselect/selector.hpp"

namespace tileselect {

// One input line. Fields are kept verbatim so they can be echoed back even
// when they fail to parse.
struct ProblemRow {
  std::string m, n, k, dtype;
  ProblemShape problem;
  std::string error;  // non-empty when the row could not be parsed
};

// Seeded random problems: every dimension is a uniform multiple of
// `multiple_of` in [multiple_of, max_dim].
struct ProblemGenerator {
  std::size_t count = 1000;
  int64_t multiple_of = 128;
  int64_t max_dim = 8192;
  std::string dtype = "fp16";
  uint64_t seed = 0;
};

std::vector<ProblemShape> generate_problems(const ProblemGenerator& gen);

// Reads CSV with header M,N,K,dtype. Throws Error on a missing or wrong
// header; bad rows are returned with `error` set.
std::vector<ProblemRow> read_problems_csv(std::istream& in);
std::vector<ProblemRow> to_rows(const std::vector<ProblemShape>& problems);
void write_problems_csv(std::ostream& out,
                        const std::vector<ProblemShape>& problems);

inline constexpr const char* kSweepHeader =
    "M,N,K,dtype,mt_m,mt_n,mt_k,cache_tile_m,cache_tile_n,stages,"
    "l_total_cycles,bottleneck,selection_time_us,error";

// Selects a tile for every row and writes one output row per input row in
// input order. Per-row failures land in the error column. `jobs` > 1 runs
// rows concurrently.
void run_sweep(const std::vector<ProblemRow>& rows,
               const HardwareProfile& profile, const SelectOptions& options,
               std::ostream& out, std::size_t jobs = 1);

}  // namespace tileselect

#endif  // TILESELECT_SWEEP_HPP_
