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

#include "tileselect/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <random>
#include <sstream>
#include <thread>

#include "tileselect/errors.hpp"
#include "tileselect/report.hpp"

namespace tileselect {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_dim(const std::string& text, int64_t& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

struct RowOutcome {
  TileConfig winner;
  double l_total = 0.0;
  std::string bottleneck;
  double selection_time_us = 0.0;
  std::string error;
};

RowOutcome solve(const ProblemRow& row, const HardwareProfile& profile,
                 const SelectOptions& options) {
  RowOutcome o;
  if (!row.error.empty()) {
    o.error = row.error;
    return o;
  }
  try {
    const SelectionResult r = select(row.problem, profile, options);
    o.winner = r.winner;
    o.l_total = r.winner_breakdown.l_total;
    o.bottleneck = describe(r.winner_breakdown.bottleneck);
    o.selection_time_us = r.selection_time_us;
  } catch (const Error& e) {
    o.error = e.what();
  }
  return o;
}

}  // namespace

std::vector<ProblemShape> generate_problems(const ProblemGenerator& gen) {
  std::mt19937_64 rng(gen.seed);
  std::uniform_int_distribution<int64_t> steps(
      1, std::max<int64_t>(1, gen.max_dim / gen.multiple_of));
  std::vector<ProblemShape> out;
  out.reserve(gen.count);
  for (std::size_t i = 0; i < gen.count; ++i) {
    const int64_t m = steps(rng) * gen.multiple_of;
    const int64_t n = steps(rng) * gen.multiple_of;
    const int64_t k = steps(rng) * gen.multiple_of;
    out.push_back({m, n, k, gen.dtype});
  }
  return out;
}

std::vector<ProblemRow> read_problems_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("problems CSV is empty");
  auto header = split(line);
  for (auto& h : header) {
    std::transform(h.begin(), h.end(), h.begin(),
                   [](unsigned char c) { return std::tolower(c); });
  }
  if (header != std::vector<std::string>{"m", "n", "k", "dtype"}) {
    throw Error("problems CSV header must be M,N,K,dtype (got '" + line + "')");
  }

  std::vector<ProblemRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line);
    ProblemRow row;
    if (f.size() != 4) {
      row.error = "expected 4 fields, got " + std::to_string(f.size());
      if (!f.empty()) row.m = f[0];
      if (f.size() > 1) row.n = f[1];
      if (f.size() > 2) row.k = f[2];
      if (f.size() > 3) row.dtype = f[3];
      rows.push_back(std::move(row));
      continue;
    }
    row.m = f[0];
    row.n = f[1];
    row.k = f[2];
    row.dtype = f[3];
    row.problem.dtype = row.dtype;
    for (auto [name, text, dst] :
         {std::tuple{"M", &row.m, &row.problem.m},
          std::tuple{"N", &row.n, &row.problem.n},
          std::tuple{"K", &row.k, &row.problem.k}}) {
      if (!parse_dim(*text, *dst) && row.error.empty()) {
        row.error = std::string(name) + " is not an integer: '" + *text + "'";
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ProblemRow> to_rows(const std::vector<ProblemShape>& problems) {
  std::vector<ProblemRow> rows;
  rows.reserve(problems.size());
  for (const auto& p : problems) {
    rows.push_back({std::to_string(p.m), std::to_string(p.n),
                    std::to_string(p.k), p.dtype, p, {}});
  }
  return rows;
}

void write_problems_csv(std::ostream& out,
                        const std::vector<ProblemShape>& problems) {
  out << "M,N,K,dtype\n";
  for (const auto& p : problems) {
    out << p.m << ',' << p.n << ',' << p.k << ',' << csv_field(p.dtype) << '\n';
  }
}

void run_sweep(const std::vector<ProblemRow>& rows,
               const HardwareProfile& profile, const SelectOptions& options,
               std::ostream& out, std::size_t jobs) {
  std::vector<RowOutcome> outcomes(rows.size());
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(rows.size(), 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      outcomes[i] = solve(rows[i], profile, options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
          outcomes[i] = solve(rows[i], profile, options);
        }
      });
    }
  }

  out << kSweepHeader << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ProblemRow& row = rows[i];
    const RowOutcome& o = outcomes[i];
    out << csv_field(row.m) << ',' << csv_field(row.n) << ','
        << csv_field(row.k) << ',' << csv_field(row.dtype) << ',';
    if (o.error.empty()) {
      const TileConfig& c = o.winner;
      out << c.mt_m << ',' << c.mt_n << ',' << c.mt_k << ',' << c.cache_tile_m
          << ',' << c.cache_tile_n << ',' << c.stages << ','
          << format_real(o.l_total) << ',' << o.bottleneck << ','
          << format_real(o.selection_time_us) << ",\n";
    } else {
      out << ",,,,,,,,," << csv_field(o.error) << '\n';
    }
  }
}

}  // namespace tileselect
