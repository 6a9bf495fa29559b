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

#include "tileselect/report.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

namespace tileselect {
namespace {

using nlohmann::ordered_json;

double cycles_to_us(double cycles, double clock_ghz) {
  return cycles / (clock_ghz * 1e3);
}

std::size_t shown(const SelectionResult& r, const RenderOptions& o) {
  return std::min(o.top_k, r.ranked.size());
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

ordered_json tile_json(const TileConfig& c) {
  return {{"mt_m", c.mt_m},
          {"mt_n", c.mt_n},
          {"mt_k", c.mt_k},
          {"cache_tile_m", c.cache_tile_m},
          {"cache_tile_n", c.cache_tile_n},
          {"stages", c.stages}};
}

ordered_json latency_json(const LatencyBreakdown& b,
                          const std::optional<double>& clock_ghz) {
  ordered_json j = {{"l_total_cycles", b.l_total},
                    {"l_tile_cycles", b.l_tile},
                    {"l_compute_cycles", b.l_compute},
                    {"l_mem_cycles", b.l_mem},
                    {"hit_l2", b.hit_l2},
                    {"hit_llc", b.hit_llc},
                    {"waves", b.waves},
                    {"active_cu", b.active_cu}};
  if (clock_ghz) {
    j["l_total_us"] = cycles_to_us(b.l_total, *clock_ghz);
    j["l_tile_us"] = cycles_to_us(b.l_tile, *clock_ghz);
  }
  return j;
}

ordered_json selection_json(const ProblemShape& problem,
                            const SelectionResult& r,
                            const RenderOptions& options) {
  ordered_json ranked = ordered_json::array();
  for (std::size_t i = 0; i < shown(r, options); ++i) {
    ranked.push_back({{"tile", tile_json(r.ranked[i].config)},
                      {"latency", latency_json(r.ranked[i].breakdown,
                                               options.clock_ghz)},
                      {"bottleneck", describe(r.ranked[i].breakdown.bottleneck)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"problem",
           {{"m", problem.m},
            {"n", problem.n},
            {"k", problem.k},
            {"dtype", problem.dtype}}},
          {"winner", tile_json(r.winner)},
          {"latency", latency_json(r.winner_breakdown, options.clock_ghz)},
          {"bottleneck", describe(r.winner_breakdown.bottleneck)},
          {"selection_time_us", r.selection_time_us},
          {"tie_break_applied", r.tie_break_applied},
          {"ranked", ranked}};
}

ordered_json breakdown_json(const ProblemShape& problem, const TileConfig& c,
                            const LatencyBreakdown& b, int64_t n_cu,
                            const std::optional<double>& clock_ghz) {
  ordered_json j = {
      {"schema_version", kSchemaVersion},
      {"problem",
       {{"m", problem.m}, {"n", problem.n}, {"k", problem.k},
        {"dtype", problem.dtype}}},
      {"tile", tile_json(c)},
      {"compute", {{"N_MI", b.n_mi}, {"L_MT", b.l_compute}}},
      {"occupancy",
       {{"T_out", b.output_tiles},
        {"N_CU", n_cu},
        {"waves", b.waves},
        {"active_cu", b.active_cu},
        {"C", b.memory_clients}}},
      {"locality",
       {{"H_1_raw", b.hit_l2_raw},
        {"H_1", b.hit_l2},
        {"W_1_bytes", b.working_set_l2_bytes},
        {"llc_tile", {b.llc_tile_m, b.llc_tile_n}},
        {"H_2_raw", b.hit_llc_raw},
        {"H_2", b.hit_llc},
        {"W_2_bytes", b.working_set_llc_bytes}}},
      {"memory",
       {{"Ld_CU", b.loads_per_cu},
        {"L_CU_lat", b.l_cu_issue},
        {"L_1", b.l_l2},
        {"L_2", b.l_llc},
        {"L_MEM", b.l_mem_level},
        {"L_mem", b.l_mem}}},
      {"tile_latency",
       {{"L_prologue", b.l_prologue},
        {"L_epilogue", b.l_epilogue},
        {"L_loopiter", b.l_loopiter},
        {"I", b.iterations},
        {"L_tile", b.l_tile}}},
      {"L_total", b.l_total},
      {"bottleneck", describe(b.bottleneck)},
      {"rule", rule_trace(b, n_cu)},
  };
  if (clock_ghz) j["L_total_us"] = cycles_to_us(b.l_total, *clock_ghz);
  return j;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

}  // namespace

void write_selection_table(std::ostream& out, const ProblemShape& problem,
                           const SelectionResult& r,
                           const RenderOptions& options) {
  out << "problem  M=" << problem.m << " N=" << problem.n << " K=" << problem.k
      << " dtype=" << problem.dtype << "\n"
      << "winner   " << to_string(r.winner) << "\n"
      << "l_total  " << fixed(r.winner_breakdown.l_total, 1) << " cycles";
  if (options.clock_ghz) {
    out << " (" << fixed(cycles_to_us(r.winner_breakdown.l_total,
                                      *options.clock_ghz), 3)
        << " us)";
  }
  out << "\n"
      << "bound    " << describe(r.winner_breakdown.bottleneck) << "\n"
      << "ranked   " << r.ranked.size() << " candidates in "
      << fixed(r.selection_time_us, 1) << " us"
      << (r.tie_break_applied ? " (tie broken)" : "") << "\n\n";

  out << std::left << std::setw(5) << "rank" << std::setw(6) << "mt_m"
      << std::setw(6) << "mt_n" << std::setw(6) << "mt_k" << std::setw(8)
      << "ctile" << std::setw(7) << "stages" << std::setw(18) << "l_total"
      << std::setw(9) << "hit_l2" << std::setw(9) << "hit_llc"
      << "bottleneck\n";
  for (std::size_t i = 0; i < shown(r, options); ++i) {
    const auto& [c, b] = r.ranked[i];
    out << std::setw(5) << i + 1 << std::setw(6) << c.mt_m << std::setw(6)
        << c.mt_n << std::setw(6) << c.mt_k << std::setw(8)
        << (std::to_string(c.cache_tile_m) + "x" +
            std::to_string(c.cache_tile_n))
        << std::setw(7) << c.stages << std::setw(18) << fixed(b.l_total, 1)
        << std::setw(9) << fixed(b.hit_l2, 4) << std::setw(9)
        << fixed(b.hit_llc, 4) << describe(b.bottleneck) << "\n";
  }
}

void write_selection_csv(std::ostream& out, const ProblemShape& problem,
                         const SelectionResult& r,
                         const RenderOptions& options) {
  out << "rank,M,N,K,dtype,mt_m,mt_n,mt_k,cache_tile_m,cache_tile_n,stages,"
         "l_total_cycles,l_tile_cycles,l_compute_cycles,l_mem_cycles,hit_l2,"
         "hit_llc,waves,active_cu,bottleneck,selection_time_us\n";
  for (std::size_t i = 0; i < shown(r, options); ++i) {
    const auto& [c, b] = r.ranked[i];
    out << i + 1 << ',' << problem.m << ',' << problem.n << ',' << problem.k
        << ',' << csv_field(problem.dtype) << ',' << c.mt_m << ',' << c.mt_n
        << ',' << c.mt_k << ',' << c.cache_tile_m << ',' << c.cache_tile_n
        << ',' << c.stages << ',' << format_real(b.l_total) << ','
        << format_real(b.l_tile) << ',' << format_real(b.l_compute) << ','
        << format_real(b.l_mem) << ',' << format_real(b.hit_l2) << ','
        << format_real(b.hit_llc) << ',' << b.waves << ',' << b.active_cu
        << ',' << describe(b.bottleneck) << ','
        << format_real(r.selection_time_us) << '\n';
  }
}

void write_breakdown_table(std::ostream& out, const ProblemShape& problem,
                           const TileConfig& c, const LatencyBreakdown& b,
                           int64_t n_cu, const std::optional<double>& clock_ghz) {
  auto row = [&out](const char* symbol, const std::string& value,
                    const char* what) {
    out << "  " << std::left << std::setw(12) << symbol << std::setw(22)
        << value << what << "\n";
  };
  auto r = [](double v) { return format_real(v); };
  auto i = [](int64_t v) { return std::to_string(v); };

  out << "problem  M=" << problem.m << " N=" << problem.n << " K=" << problem.k
      << " dtype=" << problem.dtype << "\n"
      << "tile     " << to_string(c) << "\n\n";
  out << "compute\n";
  row("N_MI", i(b.n_mi), "matrix instructions per workgroup tile");
  row("L_MT", r(b.l_compute), "compute latency per K-step (cycles)");
  out << "occupancy\n";
  row("T_out", i(b.output_tiles), "output tiles");
  row("N_CU", i(n_cu), "compute units");
  row("waves", i(b.waves), "timesteps");
  row("active_cu", i(b.active_cu), "CUs busy in the last wave");
  row("C", i(b.memory_clients), "CUs issuing loads, min(T_out, N_CU)");
  out << "locality\n";
  row("H_1 raw", r(b.hit_l2_raw), "L2 hit rate from the cache tile");
  row("W_1", r(b.working_set_l2_bytes), "L2 working set per K-step (bytes)");
  row("H_1", r(b.hit_l2), "L2 hit rate after capacity");
  row("llc tile", i(b.llc_tile_m) + "x" + i(b.llc_tile_n),
      "LLC cache tile (default factorization of C)");
  row("H_2 raw", r(b.hit_llc_raw), "LLC hit rate from the cache tile");
  row("W_2", r(b.working_set_llc_bytes), "LLC working set per K-step (bytes)");
  row("H_2", r(b.hit_llc), "LLC hit rate after capacity");
  out << "memory\n";
  row("Ld_CU", r(b.loads_per_cu), "elements loaded per CU per K-step");
  row("L_CU_lat", r(b.l_cu_issue), "per-CU load issue");
  row("L_1", r(b.l_l2), "through L2");
  row("L_2", r(b.l_llc), "through LLC");
  row("L_MEM", r(b.l_mem_level), "through memory, including latency");
  row("L_mem", r(b.l_mem), "max of the above");
  out << "tile\n";
  row("L_prologue", r(b.l_prologue), "first loads, no compute");
  row("L_epilogue", r(b.l_epilogue), "output stores, no compute");
  row("L_loopiter", r(b.l_loopiter), "max(L_MT, L_mem)");
  row("I", i(b.iterations), "steady-state K iterations");
  row("L_tile", r(b.l_tile), "latency of one output tile");
  out << "total\n";
  row("L_total", r(b.l_total), "waves x L_tile (cycles)");
  if (clock_ghz) {
    row("L_total us", r(cycles_to_us(b.l_total, *clock_ghz)), "at --clock-ghz");
  }
  out << "\nbottleneck " << describe(b.bottleneck) << "\n"
      << "rule       " << rule_trace(b, n_cu) << "\n";
}

}  // namespace tileselect
