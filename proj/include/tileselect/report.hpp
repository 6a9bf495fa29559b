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

// Rendering of selection results and latency breakdowns. The JSON layout is
// a versioned contract consumed by launch-parameter shims; every document has
// the same fields regardless of the problem.

#ifndef TILESELECT_REPORT_HPP_
#define TILESELECT_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "tileselect/latency_model.hpp"
#include "tileselect/selector.hpp"

namespace tileselect {

inline constexpr int kSchemaVersion = 1;

struct RenderOptions {
  std::size_t top_k = 1;
  // Adds *_us fields derived from cycles; cycles fields are unchanged.
  std::optional<double> clock_ghz;
};

// Shortest round-trip decimal text for a double.
std::string format_real(double v);

nlohmann::ordered_json tile_json(const TileConfig& config);
nlohmann::ordered_json latency_json(const LatencyBreakdown& b,
                                    const std::optional<double>& clock_ghz);

// schema_version, problem, winner, latency, bottleneck, selection_time_us,
// tie_break_applied, ranked[top_k].
nlohmann::ordered_json selection_json(const ProblemShape& problem,
                                      const SelectionResult& result,
                                      const RenderOptions& options = {});

// Every intermediate of the model under its symbol name.
nlohmann::ordered_json breakdown_json(const ProblemShape& problem,
                                      const TileConfig& config,
                                      const LatencyBreakdown& b, int64_t n_cu,
                                      const std::optional<double>& clock_ghz);

void write_selection_table(std::ostream& out, const ProblemShape& problem,
                           const SelectionResult& result,
                           const RenderOptions& options = {});

// Header plus one row per ranked entry (top_k of them).
void write_selection_csv(std::ostream& out, const ProblemShape& problem,
                         const SelectionResult& result,
                         const RenderOptions& options = {});

void write_breakdown_table(std::ostream& out, const ProblemShape& problem,
                           const TileConfig& config, const LatencyBreakdown& b,
                           int64_t n_cu, const std::optional<double>& clock_ghz);

// RFC 4180 quoting when the field needs it.
std::string csv_field(const std::string& s);

}  // namespace tileselect

#endif  // TILESELECT_REPORT_HPP_
