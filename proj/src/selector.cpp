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

#include "tileselect/selector.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

#include "tileselect/errors.hpp"

namespace tileselect {
namespace {

void evaluate_range(const ProblemShape& problem, const HardwareProfile& profile,
                    std::vector<RankedCandidate>& out, std::size_t begin,
                    std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    out[i].breakdown = evaluate(problem, out[i].config, profile);
  }
}

}  // namespace

bool ranks_before(const RankedCandidate& a, const RankedCandidate& b) {
  if (a.breakdown.l_total != b.breakdown.l_total) {
    return a.breakdown.l_total < b.breakdown.l_total;
  }
  const TileConfig& x = a.config;
  const TileConfig& y = b.config;
  const int64_t area_x = x.mt_m * x.mt_n;
  const int64_t area_y = y.mt_m * y.mt_n;
  if (area_x != area_y) return area_x > area_y;
  if (x.mt_m != y.mt_m) return x.mt_m > y.mt_m;
  if (x.mt_k != y.mt_k) return x.mt_k > y.mt_k;
  if (x.cache_tile_m != y.cache_tile_m) return x.cache_tile_m < y.cache_tile_m;
  return x.stages > y.stages;
}

SelectionResult select(const ProblemShape& problem,
                       const HardwareProfile& profile,
                       const SelectOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_problem(problem);

  std::vector<RankedCandidate> ranked;
  {
    std::vector<TileConfig> configs =
        options.candidates ? *options.candidates
                           : candidates(problem, profile, options.bounds);
    if (configs.empty()) {
      throw EmptyCandidateSetError("empty candidate set");
    }
    ranked.reserve(configs.size());
    for (const TileConfig& c : configs) ranked.push_back({c, {}});
  }

  const std::size_t workers =
      std::min<std::size_t>(std::max<std::size_t>(options.threads, 1),
                            ranked.size());
  if (workers <= 1) {
    evaluate_range(problem, profile, ranked, 0, ranked.size());
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (ranked.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(ranked.size(), w * chunk);
        const std::size_t end = std::min(ranked.size(), begin + chunk);
        pool.emplace_back([&, w, begin, end] {
          try {
            evaluate_range(problem, profile, ranked, begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::sort(ranked.begin(), ranked.end(), ranks_before);

  SelectionResult result;
  result.winner = ranked.front().config;
  result.winner_breakdown = ranked.front().breakdown;
  result.tie_break_applied =
      ranked.size() > 1 &&
      ranked[0].breakdown.l_total == ranked[1].breakdown.l_total;
  result.ranked = std::move(ranked);
  result.selection_time_us =
      std::chrono::duration<double, std::micro>(
          std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace tileselect
