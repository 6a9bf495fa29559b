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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Thresholds are fixed here.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "naive_model.hpp"
#include "test_support.hpp"
#include "tileselect/candidates.hpp"
#include "tileselect/latency_model.hpp"
#include "tileselect/selector.hpp"
#include "tileselect/sweep.hpp"

namespace tileselect {
namespace {

using testing::sample_profile;
using testing::to_naive;

constexpr double kRelTol = 1e-12;
constexpr int kOracleTrials = 10000;
constexpr double kOracleBudgetSeconds = 10.0;
constexpr std::size_t kOverheadCandidates = 75;
constexpr int kOverheadProblems = 1000;
constexpr double kOverheadMedianLimitUs = 1000.0;
constexpr double kOverheadSpreadLimit = 2.0;
constexpr int kPerSizeRepeats = 200;
constexpr int kArgminProblems = 1000;
constexpr int kSweepProblems = 1000;
constexpr int kMonotoneTrials = 10000;
constexpr std::size_t kMinCandidates = 10;
constexpr std::size_t kMaxCandidates = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Rng {
  std::mt19937_64 rng;
  explicit Rng(uint64_t seed) : rng(seed) {}
  int64_t uniform(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  }
  int64_t pow2(int lo, int hi) {
    return int64_t{1} << std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
};

// Library vs. the enumerative oracle for every algorithm of the model.
Outcome algorithm_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng g(1);
  long mismatches = 0;
  std::string first;
  auto expect = [&](bool ok, const char* what) {
    if (!ok && mismatches++ == 0) first = what;
  };

  for (int i = 0; i < kOracleTrials; ++i) {
    // Quarter-cycle latencies keep the oracle's repeated sums exact.
    const MatrixInstruction mi{g.pow2(2, 5), g.pow2(2, 5), g.pow2(2, 6),
                               static_cast<double>(g.uniform(4, 256)) / 4.0, 2};
    const TileConfig t{g.pow2(2, 8), g.pow2(2, 8), g.pow2(2, 8)};
    const auto lib = compute_latency(t, mi);
    const auto ref = naive::compute({t.mt_m, t.mt_n, t.mt_k},
                                    {mi.mi_m, mi.mi_n, mi.mi_k, mi.latency_cycles});
    expect(lib.n_mi == ref.first, "compute n_mi");
    expect(naive::rel_equal(lib.l_compute, ref.second, kRelTol), "compute latency");
  }

  for (int i = 0; i < kOracleTrials; ++i) {
    const ProblemShape p{g.uniform(1, 20000), g.uniform(1, 20000), 1, "fp16"};
    const TileConfig t{g.pow2(3, 8), g.pow2(3, 8), 16};
    const int64_t n_cu = g.uniform(1, 512);
    const auto lib = occupancy(p, t, n_cu);
    const auto ref = naive::occupancy(p.m, p.n, t.mt_m, t.mt_n, n_cu);
    expect(lib.output_tiles == ref.tiles && lib.waves == ref.waves &&
               lib.active_cu == ref.last_wave,
           "occupancy");
  }

  for (int i = 0; i < kOracleTrials; ++i) {
    const TileConfig t{g.uniform(1, 512), g.uniform(1, 512), g.uniform(1, 512)};
    const int64_t fm = g.uniform(1, 64);
    const int64_t fn = g.uniform(1, 64);
    expect(naive::rel_equal(hit_rate(fm, fn, t),
                            naive::hit_rate(fm, fn, {t.mt_m, t.mt_n, t.mt_k}),
                            kRelTol),
           "hit rate");
    const double h = g.real(0, 1);
    const double w = g.real(1, 1e9);
    const double c = g.real(1, 1e9);
    expect(naive::rel_equal(capacity_adjusted_hit_rate(h, w, c),
                            naive::capacity_scale(h, w, c), kRelTol),
           "capacity-adjusted hit rate");
  }

  for (int i = 0; i < kOracleTrials; ++i) {
    const int64_t n = g.uniform(1, 2048);
    const auto lib = factorizations(n);
    expect(lib == naive::factorizations(n), "factorizations");
    expect(default_factorization(n) == naive::square_factorization(n),
           "default factorization");
  }

  for (int i = 0; i < kOracleTrials; ++i) {
    const RateSet r{g.real(0.5, 512), g.real(1, 1e4), g.real(1, 1e4), g.real(1, 1e4)};
    const double loads = g.real(1, 1e5);
    const int64_t c = g.uniform(1, 512);
    const double h1 = g.real(0, 1);
    const double h2 = g.real(0, 1);
    const double lat = g.real(0, 2000);
    const auto lib = memory_latency(loads, c, h1, h2, r, lat);
    const auto ref = naive::memory(loads, c, h1, h2, {r.l1, r.l2, r.llc, r.mem}, lat);
    expect(naive::rel_equal(lib.l_cu_issue, ref.cu, kRelTol) &&
               naive::rel_equal(lib.l_l2, ref.l2, kRelTol) &&
               naive::rel_equal(lib.l_llc, ref.llc, kRelTol) &&
               naive::rel_equal(lib.l_mem_level, ref.mem, kRelTol) &&
               naive::rel_equal(lib.l_mem, ref.worst, kRelTol),
           "memory latency");
  }

  for (int i = 0; i < kOracleTrials; ++i) {
    const ProblemShape p{1, 1, g.uniform(1, 20000), "fp16"};
    const TileConfig t{g.pow2(4, 8), g.pow2(4, 8), g.pow2(4, 8)};
    const double lc = g.real(0, 1e5);
    const double lm = g.real(0, 1e5);
    const int64_t a = g.uniform(1, 512);
    const RateSet r{1, 1, 1, g.real(1, 4096)};
    const auto lib = tile_latency(p, t, lc, lm, a, r);
    const auto ref = naive::tile(p.k, {t.mt_m, t.mt_n, t.mt_k}, lc, lm, a, r.mem);
    expect(lib.iterations == ref.iterations &&
               naive::rel_equal(lib.l_epilogue, ref.epilogue, kRelTol) &&
               naive::rel_equal(lib.l_tile, ref.total, kRelTol),
           "tile latency");

    const ProblemShape q{g.uniform(1, 20000), g.uniform(1, 20000), 1, "fp16"};
    const int64_t n_cu = g.uniform(1, 512);
    const double l_tile = static_cast<double>(g.uniform(0, 40000000)) / 4.0;
    const auto occ = naive::occupancy(q.m, q.n, t.mt_m, t.mt_n, n_cu);
    expect(naive::rel_equal(total_latency(q, t, l_tile, n_cu),
                            naive::total(occ.waves, l_tile), kRelTol),
           "total latency");
  }

  // Whole chain on the sample device.
  const HardwareProfile profile = sample_profile();
  for (const char* dtype : {"fp16", "fp32"}) {
    const auto all = candidates({1, 1, 1, dtype}, profile);
    const naive::Device dev = to_naive(profile, dtype);
    for (int i = 0; i < kOracleTrials / 2; ++i) {
      const ProblemShape p{g.uniform(1, 16384), g.uniform(1, 16384),
                           g.uniform(1, 16384), dtype};
      const TileConfig& c =
          all[static_cast<std::size_t>(g.uniform(0, static_cast<int64_t>(all.size()) - 1))];
      expect(naive::rel_equal(evaluate(p, c, profile).l_total,
                              naive::evaluate(p.m, p.n, p.k, to_naive(c), dev),
                              kRelTol),
             "evaluate chain");
    }
  }

  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << mismatches << " mismatches over " << kOracleTrials
    << " inputs per algorithm (+ " << kOracleTrials << " full chains) in " << secs
    << " s (limit " << kOracleBudgetSeconds << " s)";
  if (mismatches) d << "; first: " << first;
  return {mismatches == 0 && secs < kOracleBudgetSeconds, d.str()};
}

Outcome anchor_values() {
  std::vector<std::string> failures;
  const auto occ = occupancy({256, 256, 256, "fp16"}, {16, 16, 16}, 256);
  if (occ.output_tiles != 256) failures.push_back("256x256 / 16x16 != 256 tiles");

  Rng g(2);
  int out_of_range = 0;
  for (int i = 0; i < kOracleTrials; ++i) {
    const TileConfig t{g.uniform(1, 1024), g.uniform(1, 1024), g.uniform(1, 1024)};
    const double h = hit_rate(g.uniform(1, 128), g.uniform(1, 128), t);
    out_of_range += (h < 0.0 || h > 1.0);
  }
  if (out_of_range) failures.push_back(std::to_string(out_of_range) + " hit rates outside [0,1]");

  for (int64_t f : {1, 2, 4, 8, 16}) {
    for (int64_t mt : {16, 32, 64, 128, 256}) {
      for (int64_t mk : {16, 64, 256}) {
        if (hit_rate(f, f, {mt, mt, mk}) != 1.0 - 1.0 / static_cast<double>(f)) {
          failures.push_back("square closed form fails at f=" + std::to_string(f));
        }
      }
    }
  }
  std::ostringstream d;
  d << "T_out(256x256, 16x16)=" << occ.output_tiles << "; " << kOracleTrials
    << " random hit rates in [0,1]: " << (out_of_range == 0 ? "yes" : "no")
    << "; h=1-1/f exact for f in {1,2,4,8,16}";
  if (!failures.empty()) d << "; failures: " << failures.front();
  return {failures.empty(), d.str()};
}

// Deterministic spread of the full candidate list down to `count` entries.
std::vector<TileConfig> stride_sample(const std::vector<TileConfig>& all,
                                      std::size_t count) {
  std::vector<TileConfig> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

Outcome selection_overhead() {
  const HardwareProfile profile = sample_profile();
  SelectOptions options;
  options.candidates =
      stride_sample(candidates({1, 1, 1, "fp16"}, profile), kOverheadCandidates);

  // Warm up allocator and caches.
  for (int i = 0; i < 50; ++i) select({1024, 1024, 1024, "fp16"}, profile, options);

  std::vector<double> times;
  for (const ProblemShape& p :
       generate_problems({kOverheadProblems, 128, 8192, "fp16", 3})) {
    times.push_back(select(p, profile, options).selection_time_us);
  }
  const double overall = median(times);

  // Interleave sizes so drift affects every size equally.
  const std::vector<int64_t> sizes = {512, 1024, 2048, 4096, 8192, 16384};
  std::vector<std::vector<double>> per_size(sizes.size());
  for (int rep = 0; rep < kPerSizeRepeats; ++rep) {
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      const int64_t d = sizes[s];
      per_size[s].push_back(
          select({d, d, d, "fp16"}, profile, options).selection_time_us);
    }
  }
  std::vector<double> medians;
  for (const auto& v : per_size) medians.push_back(median(v));
  const double spread = *std::max_element(medians.begin(), medians.end()) /
                        *std::min_element(medians.begin(), medians.end());

  std::ostringstream d;
  d << "75 candidates: median " << overall << " us over " << kOverheadProblems
    << " problems (limit " << kOverheadMedianLimitUs << " us); per-size medians [";
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    d << (s ? ", " : "") << sizes[s] << ":" << medians[s];
  }
  d << "] us, max/min " << spread << " (limit " << kOverheadSpreadLimit << ")";
  return {options.candidates->size() == kOverheadCandidates &&
              overall < kOverheadMedianLimitUs && spread <= kOverheadSpreadLimit,
          d.str()};
}

Outcome argmin_correctness() {
  const HardwareProfile profile = sample_profile();
  const naive::Device dev = to_naive(profile, "fp16");
  const auto all = candidates({1, 1, 1, "fp16"}, profile);
  int mismatches = 0;
  for (const ProblemShape& p :
       generate_problems({kArgminProblems, 128, 8192, "fp16", 4})) {
    const SelectionResult r = select(p, profile);
    double best = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const double t = naive::evaluate(p.m, p.n, p.k, to_naive(all[i]), dev);
      if (i == 0 || t < best) best = t;
    }
    const double winner = naive::evaluate(p.m, p.n, p.k, to_naive(r.winner), dev);
    mismatches += !(naive::rel_equal(winner, best, kRelTol) &&
                    naive::rel_equal(r.winner_breakdown.l_total, best, kRelTol));
  }
  std::ostringstream d;
  d << mismatches << " mismatches over " << kArgminProblems
    << " seeded problems x " << all.size() << " candidates";
  return {mismatches == 0, d.str()};
}

std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    for (std::string f; std::getline(hs, f, ',');) header.push_back(f);
  }
  const auto col = static_cast<std::size_t>(
      std::find(header.begin(), header.end(), "selection_time_us") - header.begin());
  auto emit = [&](const std::string& l) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t pos; (pos = l.find(',', start)) != std::string::npos; start = pos + 1) {
      f.push_back(l.substr(start, pos - start));
    }
    f.push_back(l.substr(start));
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i != col) out << f[i] << '|';
    }
    out << '\n';
  };
  emit(line);
  while (std::getline(in, line)) emit(line);
  return out.str();
}

Outcome determinism() {
  const HardwareProfile profile = sample_profile();
  const auto rows = to_rows(generate_problems({kSweepProblems, 128, 8192, "fp16", 5}));
  std::ostringstream first, second;
  run_sweep(rows, profile, {}, first, 1);
  run_sweep(rows, profile, {}, second, 4);
  const std::string a = without_timing(first.str());
  const std::string b = without_timing(second.str());
  std::ostringstream d;
  d << "two sweeps over " << kSweepProblems << " seeded problems (1 and 4 jobs): "
    << (a == b ? "byte-identical" : "DIFFER") << " excluding selection_time_us ("
    << a.size() << " bytes)";
  return {a == b && a.size() > 0, d.str()};
}

Outcome monotonicity() {
  const HardwareProfile profile = sample_profile();
  const auto all = candidates({1, 1, 1, "fp16"}, profile);
  Rng g(6);
  int k_violations = 0, cap_violations = 0, occ_violations = 0;
  for (int i = 0; i < kMonotoneTrials; ++i) {
    const TileConfig& c =
        all[static_cast<std::size_t>(g.uniform(0, static_cast<int64_t>(all.size()) - 1))];
    const int64_t m = g.uniform(1, 16384);
    const int64_t n = g.uniform(1, 16384);
    const int64_t k1 = g.uniform(1, 16384);
    const int64_t k2 = k1 + g.uniform(0, 16384);
    k_violations += evaluate({m, n, k2, "fp16"}, c, profile).l_total <
                    evaluate({m, n, k1, "fp16"}, c, profile).l_total;

    const double h = g.real(0, 1);
    const double cap = g.real(1, 1e9);
    const double w1 = g.real(1, 1e9);
    const double w2 = w1 + g.real(0, 1e9);
    cap_violations += capacity_adjusted_hit_rate(h, w2, cap) >
                      capacity_adjusted_hit_rate(h, w1, cap);

    const int64_t n_cu = g.uniform(1, 1024);
    const auto o = occupancy({m, n, 1, "fp16"}, c, n_cu);
    occ_violations += (o.waves - 1) * n_cu + o.active_cu != o.output_tiles;
  }
  std::ostringstream d;
  d << kMonotoneTrials << " trials: K-monotonicity violations " << k_violations
    << ", capacity-monotonicity violations " << cap_violations
    << ", occupancy-conservation violations " << occ_violations;
  return {k_violations == 0 && cap_violations == 0 && occ_violations == 0, d.str()};
}

Outcome candidate_space() {
  const HardwareProfile profile = sample_profile();
  const auto all = candidates({4096, 4096, 4096, "fp16"}, profile);
  const int64_t bpe = profile.instruction("fp16").bytes_per_element;
  int infeasible = 0;
  for (const TileConfig& c : all) {
    infeasible += (c.mt_m + c.mt_n) * c.mt_k * bpe * c.stages > profile.lds_capacity_bytes;
  }
  std::ostringstream d;
  d << all.size() << " fp16 candidates on " << profile.name << " (allowed ["
    << kMinCandidates << ", " << kMaxCandidates << "]); " << infeasible
    << " violate the LDS inequality";
  return {all.size() >= kMinCandidates && all.size() <= kMaxCandidates &&
              infeasible == 0,
          d.str()};
}

}  // namespace
}  // namespace tileselect

int main() {
  using namespace tileselect;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"algorithm-oracles", algorithm_oracles},
      {"anchor-values", anchor_values},
      {"selection-overhead", selection_overhead},
      {"argmin-correctness", argmin_correctness},
      {"determinism", determinism},
      {"monotonicity", monotonicity},
      {"candidate-space", candidate_space},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %-22s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
