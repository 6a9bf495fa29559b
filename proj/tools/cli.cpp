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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tileselect/candidates.hpp"
#include "tileselect/errors.hpp"
#include "tileselect/hardware_profile.hpp"
#include "tileselect/latency_model.hpp"
#include "tileselect/report.hpp"
#include "tileselect/selector.hpp"
#include "tileselect/sweep.hpp"

namespace tileselect::cli {
namespace {

constexpr int kExitError = 1;
constexpr int kExitIo = 2;

struct ProblemFlags {
  int64_t m = 0;
  int64_t n = 0;
  int64_t k = 0;
  std::string dtype = "fp16";
};

struct BoundsFlags {
  int64_t max_mt_m = 256;
  int64_t max_mt_n = 256;
  int64_t max_mt_k = 256;
  std::size_t threads = 1;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& p) {
  cmd->add_option("-M,--m", p.m, "rows of A and C")->required();
  cmd->add_option("-N,--n", p.n, "columns of B and C")->required();
  cmd->add_option("-K,--k", p.k, "reduction dimension")->required();
  cmd->add_option("--dtype", p.dtype, "element type")->capture_default_str();
}

void add_bounds_flags(CLI::App* cmd, BoundsFlags& b) {
  cmd->add_option("--max-mt-m", b.max_mt_m, "largest MT_M enumerated")
      ->capture_default_str();
  cmd->add_option("--max-mt-n", b.max_mt_n, "largest MT_N enumerated")
      ->capture_default_str();
  cmd->add_option("--max-mt-k", b.max_mt_k, "largest MT_K enumerated")
      ->capture_default_str();
  cmd->add_option("--threads", b.threads, "candidate evaluation threads")
      ->capture_default_str();
}

SelectOptions to_options(const BoundsFlags& b) {
  SelectOptions o;
  o.bounds.max_mt_m = b.max_mt_m;
  o.bounds.max_mt_n = b.max_mt_n;
  o.bounds.max_mt_k = b.max_mt_k;
  o.threads = b.threads;
  return o;
}

ProblemShape to_problem(const ProblemFlags& p) {
  return {p.m, p.n, p.k, p.dtype};
}

HardwareProfile load_hw(const std::string& hw) {
  return load_profile(resolve_profile_path(hw));
}

int cmd_select(const ProblemFlags& pf, const BoundsFlags& bf,
               const std::string& hw, const std::string& format,
               std::size_t top_k, std::optional<double> clock_ghz,
               std::ostream& out) {
  const HardwareProfile profile = load_hw(hw);
  const ProblemShape problem = to_problem(pf);
  const SelectionResult result = select(problem, profile, to_options(bf));
  const RenderOptions render{top_k, clock_ghz};
  if (format == "json") {
    out << selection_json(problem, result, render).dump(2) << "\n";
  } else if (format == "csv") {
    write_selection_csv(out, problem, result, render);
  } else {
    write_selection_table(out, problem, result, render);
  }
  return 0;
}

struct SweepFlags {
  std::string problems;
  std::size_t random = 0;
  int64_t multiple_of = 128;
  int64_t max_dim = 8192;
  uint64_t seed = 0;
  std::string dtype = "fp16";
  std::string problems_out;
  std::string out = "-";
  std::size_t jobs = 1;
};

int cmd_sweep(const SweepFlags& f, const BoundsFlags& bf, const std::string& hw,
              std::ostream& out, std::ostream& err) {
  const HardwareProfile profile = load_hw(hw);

  std::vector<ProblemRow> rows;
  if (!f.problems.empty()) {
    std::ifstream in(f.problems);
    if (!in) {
      err << "error: cannot open problems file: " << f.problems << "\n";
      return kExitIo;
    }
    rows = read_problems_csv(in);
  } else {
    const auto problems = generate_problems(
        {f.random, f.multiple_of, f.max_dim, f.dtype, f.seed});
    if (!f.problems_out.empty()) {
      std::ofstream po(f.problems_out);
      write_problems_csv(po, problems);
      if (!po) {
        err << "error: cannot write problems file: " << f.problems_out << "\n";
        return kExitIo;
      }
    }
    rows = to_rows(problems);
  }

  if (f.out == "-") {
    run_sweep(rows, profile, to_options(bf), out, f.jobs);
    return out ? 0 : kExitIo;
  }
  std::ofstream file(f.out);
  if (!file) {
    err << "error: cannot open output file: " << f.out << "\n";
    return kExitIo;
  }
  run_sweep(rows, profile, to_options(bf), file, f.jobs);
  file.close();
  if (!file) {
    err << "error: failed writing output file: " << f.out << "\n";
    return kExitIo;
  }
  return 0;
}

struct TileFlags {
  std::optional<int64_t> mt_m, mt_n, mt_k;
  std::optional<int64_t> cache_tile_m, cache_tile_n;
  std::optional<int64_t> stages;
};

int cmd_explain(const ProblemFlags& pf, const BoundsFlags& bf,
                const TileFlags& tf, const std::string& hw,
                const std::string& format, std::optional<double> clock_ghz,
                std::ostream& out, std::ostream& err) {
  const HardwareProfile profile = load_hw(hw);
  const ProblemShape problem = to_problem(pf);
  check_problem(problem);

  const bool any_tile = tf.mt_m || tf.mt_n || tf.mt_k || tf.cache_tile_m ||
                        tf.cache_tile_n || tf.stages;
  TileConfig config;
  LatencyBreakdown breakdown;
  if (any_tile) {
    if (!(tf.mt_m && tf.mt_n && tf.mt_k)) {
      err << "error: explicit tiles need all of --mt-m, --mt-n, --mt-k\n";
      return kExitError;
    }
    if (tf.cache_tile_m.has_value() != tf.cache_tile_n.has_value()) {
      err << "error: give both --cache-tile-m and --cache-tile-n, or neither\n";
      return kExitError;
    }
    const auto [def_m, def_n] = default_factorization(profile.cu_groups_per_l2);
    config = TileConfig{*tf.mt_m,
                        *tf.mt_n,
                        *tf.mt_k,
                        tf.cache_tile_m.value_or(def_m),
                        tf.cache_tile_n.value_or(def_n),
                        tf.stages.value_or(
                            std::min<int64_t>(2, profile.max_pipeline_stages))};
    const auto violations =
        feasibility_violations(config, problem.dtype, profile);
    if (!violations.empty()) {
      err << "error: infeasible tile " << to_string(config) << "\n";
      for (const auto& v : violations) err << "  constraint violated: " << v << "\n";
      return kExitError;
    }
    breakdown = evaluate(problem, config, profile);
  } else {
    const SelectionResult r = select(problem, profile, to_options(bf));
    config = r.winner;
    breakdown = r.winner_breakdown;
  }

  if (format == "json") {
    out << breakdown_json(problem, config, breakdown, profile.compute_units,
                          clock_ghz)
               .dump(2)
        << "\n";
  } else {
    write_breakdown_table(out, problem, config, breakdown,
                          profile.compute_units, clock_ghz);
  }
  return 0;
}

int cmd_factorize(int64_t n, const std::string& format, std::ostream& out) {
  const auto all = factorizations(n);
  const auto def = default_factorization(n);
  if (format == "json") {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& [fm, fn] : all) pairs.push_back({fm, fn});
    nlohmann::ordered_json j = {{"n", n},
                                {"factorizations", pairs},
                                {"default", {def.first, def.second}}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "factorizations of " << n << " (" << all.size() << "):\n";
  for (const auto& [fm, fn] : all) out << "  " << fm << " x " << fn << "\n";
  out << "default: " << def.first << " x " << def.second << "\n";
  return 0;
}

int cmd_validate_hw(const std::string& hw, std::ostream& out,
                    std::ostream& err) {
  const auto path = resolve_profile_path(hw);
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open hardware profile: " << path.string() << "\n";
    return kExitIo;
  }
  std::ostringstream text;
  text << in.rdbuf();
  HardwareProfile profile;
  try {
    profile = parse_profile(text.str());
  } catch (const ProfileParseError& e) {
    err << path.string() << ": parse error: " << e.what() << "\n";
    return kExitError;
  }
  const auto violations = validate(profile);
  if (violations.empty()) {
    out << "OK " << profile.name << " (" << path.string() << ")\n";
    return 0;
  }
  err << path.string() << ": " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) err << "  violation: " << v << "\n";
  return kExitError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Analytical GEMM tile selector", "tileselect"};
  app.require_subcommand(1);

  std::string hw;
  std::string format = "table";
  std::size_t top_k = 1;
  std::optional<double> clock_ghz;
  ProblemFlags problem;
  BoundsFlags bounds;

  auto* sel = app.add_subcommand("select", "pick the fastest modeled tile");
  add_problem_flags(sel, problem);
  add_bounds_flags(sel, bounds);
  sel->add_option("--hw", hw, "hardware profile path or fixture name")->required();
  sel->add_option("--format", format)
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sel->add_option("--top-k", top_k, "ranked entries to print")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sel->add_option("--clock-ghz", clock_ghz, "add microsecond fields");

  SweepFlags sweep;
  auto* sw = app.add_subcommand("sweep", "select over a list of problems");
  auto* sw_in = sw->add_option("--problems", sweep.problems,
                               "CSV with header M,N,K,dtype");
  auto* sw_rand = sw->add_option("--random", sweep.random,
                                 "generate this many random problems");
  sw_in->excludes(sw_rand);
  sw->add_option("--multiple-of", sweep.multiple_of)->capture_default_str();
  sw->add_option("--max", sweep.max_dim)->capture_default_str();
  sw->add_option("--seed", sweep.seed)->capture_default_str();
  sw->add_option("--dtype", sweep.dtype, "dtype for --random")
      ->capture_default_str();
  sw->add_option("--problems-out", sweep.problems_out,
                 "also write the generated problem list");
  sw->add_option("--out", sweep.out, "output CSV ('-' for stdout)")
      ->capture_default_str();
  sw->add_option("--jobs", sweep.jobs, "problems evaluated concurrently")
      ->capture_default_str();
  sw->add_option("--hw", hw)->required();
  add_bounds_flags(sw, bounds);

  TileFlags tile;
  auto* ex = app.add_subcommand("explain", "print every model intermediate");
  add_problem_flags(ex, problem);
  add_bounds_flags(ex, bounds);
  ex->add_option("--hw", hw)->required();
  ex->add_option("--mt-m", tile.mt_m);
  ex->add_option("--mt-n", tile.mt_n);
  ex->add_option("--mt-k", tile.mt_k);
  ex->add_option("--cache-tile-m", tile.cache_tile_m);
  ex->add_option("--cache-tile-n", tile.cache_tile_n);
  ex->add_option("--stages", tile.stages);
  ex->add_option("--format", format)
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  ex->add_option("--clock-ghz", clock_ghz);

  int64_t factor_n = 0;
  auto* fa = app.add_subcommand("factorize", "cache-tile factorizations of n");
  fa->add_option("n", factor_n)->required()->check(CLI::PositiveNumber);
  fa->add_option("--format", format)
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  auto* va = app.add_subcommand("validate-hw", "check a hardware profile");
  va->add_option("--hw", hw)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*sel) {
      return cmd_select(problem, bounds, hw, format, top_k, clock_ghz, out);
    }
    if (*sw) {
      if (sweep.problems.empty() && sweep.random == 0) {
        err << "error: sweep needs --problems or --random\n";
        return kExitError;
      }
      return cmd_sweep(sweep, bounds, hw, out, err);
    }
    if (*ex) {
      return cmd_explain(problem, bounds, tile, hw, format, clock_ghz, out,
                         err);
    }
    if (*fa) return cmd_factorize(factor_n, format, out);
    if (*va) return cmd_validate_hw(hw, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace tileselect::cli
