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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

namespace tileselect {
namespace {

using nlohmann::json;
using testing::data_dir;

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run tool(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string worked() { return (data_dir() / "worked-example.toml").string(); }

TEST_CASE("select renders JSON for a fixture name") {
  const Run r = tool({"select", "-M", "512", "-N", "512", "-K", "512", "--dtype",
                      "fp16", "--hw", "mi300x-sample", "--format", "json"});
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["problem"]["m"] == 512);
  CHECK(j["winner"]["mt_m"].get<int>() >= 16);
  CHECK(j["latency"]["l_total_cycles"].get<double>() > 0);
  CHECK(j["bottleneck"].is_string());
}

TEST_CASE("select table and csv formats") {
  Run r = tool({"select", "-M", "1024", "-N", "1024", "-K", "1024", "--hw",
                "mi300x-sample", "--top-k", "3", "--clock-ghz", "2.1"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("winner") != std::string::npos);
  CHECK(r.out.find(" us)") != std::string::npos);

  r = tool({"select", "-M", "1024", "-N", "1024", "-K", "1024", "--hw",
            "mi300x-sample", "--format", "csv", "--top-k", "4"});
  REQUIRE(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("select usage errors") {
  CHECK(tool({"select", "-M", "512", "-N", "512", "-K", "512"}).status != 0);
  CHECK(tool({"select", "-M", "512", "-N", "512", "-K", "512", "--hw",
              "mi300x-sample", "--format", "xml"})
            .status != 0);
  const Run bad_dtype = tool({"select", "-M", "512", "-N", "512", "-K", "512",
                              "--dtype", "int4", "--hw", "mi300x-sample"});
  CHECK(bad_dtype.status != 0);
  CHECK(bad_dtype.err.find("dtype unsupported") != std::string::npos);
  CHECK(tool({"select", "-M", "512", "-N", "512", "-K", "512", "--hw",
              "/no/such/profile"})
            .status != 0);
  CHECK(tool({}).status != 0);
}

TEST_CASE("top-k prints exactly k ranked entries") {
  const Run r = tool({"select", "-M", "2048", "-N", "2048", "-K", "2048",
                      "--hw", "mi300x-sample", "--format", "json", "--top-k", "5"});
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["ranked"].size() == 5);
}

TEST_CASE("explain with an explicit tile shows the hand-checked hit rate") {
  const Run r = tool({"explain", "-M", "4096", "-N", "4096", "-K", "512",
                      "--hw", worked(), "--mt-m", "128", "--mt-n", "128",
                      "--mt-k", "64", "--cache-tile-m", "4", "--cache-tile-n",
                      "4", "--format", "json"});
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["locality"]["H_1"] == 0.75);
  CHECK(j["compute"]["N_MI"] == 256);

  const Run table = tool({"explain", "-M", "4096", "-N", "4096", "-K", "512",
                          "--hw", worked(), "--mt-m", "128", "--mt-n", "128",
                          "--mt-k", "64", "--cache-tile-m", "4",
                          "--cache-tile-n", "4"});
  REQUIRE(table.status == 0);
  CHECK(table.out.find("H_1") != std::string::npos);
  CHECK(table.out.find("0.75") != std::string::npos);
  CHECK(table.out.find("rule") != std::string::npos);
}

TEST_CASE("explain without tiles matches the select winner") {
  const std::vector<std::string> problem = {"-M", "3072", "-N", "1024", "-K",
                                            "4096", "--hw", "mi300x-sample"};
  std::vector<std::string> sel = {"select", "--format", "json"};
  sel.insert(sel.end(), problem.begin(), problem.end());
  std::vector<std::string> ex = {"explain", "--format", "json"};
  ex.insert(ex.end(), problem.begin(), problem.end());
  const json s = json::parse(tool(sel).out);
  const json e = json::parse(tool(ex).out);
  CHECK(e["tile"] == s["winner"]);
  CHECK(e["L_total"] == s["latency"]["l_total_cycles"]);
  CHECK(e["tile_latency"]["L_tile"] == s["latency"]["l_tile_cycles"]);
  CHECK(e["memory"]["L_mem"] == s["latency"]["l_mem_cycles"]);
  CHECK(e["locality"]["H_1"] == s["latency"]["hit_l2"]);
  CHECK(e["bottleneck"] == s["bottleneck"]);
}

TEST_CASE("explain rejects infeasible explicit tiles") {
  const Run r = tool({"explain", "-M", "512", "-N", "512", "-K", "512", "--hw",
                      "mi300x-sample", "--mt-m", "8", "--mt-n", "64", "--mt-k",
                      "64"});
  CHECK(r.status != 0);
  CHECK(r.err.find("mt_m") != std::string::npos);
  CHECK(r.err.find("below the matrix instruction") != std::string::npos);
  CHECK(tool({"explain", "-M", "512", "-N", "512", "-K", "512", "--hw",
              "mi300x-sample", "--mt-m", "64"})
            .status != 0);
}

TEST_CASE("factorize") {
  Run r = tool({"factorize", "16", "--format", "json"});
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["factorizations"].size() == 5);
  CHECK(j["default"] == json::array({4, 4}));
  r = tool({"factorize", "38"});
  CHECK(r.out.find("default: 2 x 19") != std::string::npos);
  CHECK(tool({"factorize", "0"}).status != 0);
}

TEST_CASE("validate-hw") {
  Run r = tool({"validate-hw", "--hw", "mi300x-sample"});
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("OK"));

  r = tool({"validate-hw", "--hw", (data_dir() / "bad-multiple.toml").string()});
  CHECK(r.status != 0);
  CHECK(r.err.find("multiple of cu_groups_per_l2") != std::string::npos);
  CHECK(r.err.find("l2_bandwidth_bytes_per_cycle must be > 0") != std::string::npos);

  CHECK(tool({"validate-hw", "--hw", "/no/such/file.toml"}).status != 0);
}

TEST_CASE("sweep from a CSV file and from the generator") {
  const auto dir = std::filesystem::temp_directory_path() / "tileselect_cli_test";
  std::filesystem::create_directories(dir);
  const auto out_csv = (dir / "out.csv").string();

  Run r = tool({"sweep", "--problems", (data_dir() / "problems.csv").string(),
                "--hw", "mi300x-sample", "--out", out_csv});
  REQUIRE(r.status == 0);
  std::ifstream in(out_csv);
  int count = 0;
  for (std::string l; std::getline(in, l);) ++count;
  CHECK(count == 4);

  const auto list_a = (dir / "a.csv").string();
  const auto list_b = (dir / "b.csv").string();
  REQUIRE(tool({"sweep", "--random", "20", "--seed", "9", "--hw",
                "mi300x-sample", "--problems-out", list_a, "--out",
                (dir / "ra.csv").string()})
              .status == 0);
  REQUIRE(tool({"sweep", "--random", "20", "--seed", "9", "--hw",
                "mi300x-sample", "--problems-out", list_b, "--out",
                (dir / "rb.csv").string()})
              .status == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream f(p);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  CHECK(slurp(list_a) == slurp(list_b));
  CHECK(!slurp(list_a).empty());

  CHECK(tool({"sweep", "--problems", "/no/such.csv", "--hw", "mi300x-sample"})
            .status != 0);
  CHECK(tool({"sweep", "--hw", "mi300x-sample"}).status != 0);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace tileselect
