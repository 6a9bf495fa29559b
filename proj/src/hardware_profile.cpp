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

#include "tileselect/hardware_profile.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tileselect/errors.hpp"

#ifndef TILESELECT_PROFILE_DIR
#define TILESELECT_PROFILE_DIR ""
#endif

namespace tileselect {
namespace {

constexpr std::string_view kInstructionPrefix = "instructions.";

bool is_power_of_two(int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw ProfileParseError("line " + std::to_string(line_no) + ": " + what);
}

int64_t parse_int(std::string_view v, int line_no, std::string_view key) {
  int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    parse_fail(line_no, "expected integer for '" + std::string(key) +
                            "', got '" + std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view v, int line_no, std::string_view key) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    parse_fail(line_no, "expected number for '" + std::string(key) +
                            "', got '" + std::string(v) + "'");
  }
  return out;
}

std::string parse_string(std::string_view v, int line_no,
                         std::string_view key) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
    parse_fail(line_no, "expected quoted string for '" + std::string(key) + "'");
  }
  return std::string(v.substr(1, v.size() - 2));
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  // Keep reals visibly real so hand editors see the intended type.
  if (s.find_first_of(".eE") == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

}  // namespace

const MatrixInstruction& HardwareProfile::instruction(
    std::string_view dtype) const {
  auto it = instructions.find(dtype);
  if (it == instructions.end()) {
    throw UnsupportedDtypeError(std::string(dtype));
  }
  return it->second;
}

RateSet rates_for(const HardwareProfile& profile, std::string_view dtype) {
  const double bpe =
      static_cast<double>(profile.instruction(dtype).bytes_per_element);
  return RateSet{
      .l1 = profile.l1_rate_bytes_per_cycle / bpe,
      .l2 = profile.l2_bandwidth_bytes_per_cycle / bpe,
      .llc = profile.llc_bandwidth_bytes_per_cycle / bpe,
      .mem = profile.mem_bandwidth_bytes_per_cycle / bpe,
  };
}

std::vector<std::string> validate(const HardwareProfile& p) {
  std::vector<std::string> v;
  auto positive = [&v](std::string_view field, double value) {
    if (!(value > 0.0)) {
      v.push_back(std::string(field) + " must be > 0 (got " +
                  format_real(value) + ")");
    }
  };
  if (p.name.empty()) v.emplace_back("name must be non-empty");
  positive("compute_units", static_cast<double>(p.compute_units));
  positive("cu_groups_per_l2", static_cast<double>(p.cu_groups_per_l2));
  if (p.compute_units > 0 && p.cu_groups_per_l2 > 0 &&
      p.compute_units % p.cu_groups_per_l2 != 0) {
    v.push_back("compute_units (" + std::to_string(p.compute_units) +
                ") must be a multiple of cu_groups_per_l2 (" +
                std::to_string(p.cu_groups_per_l2) + ")");
  }
  positive("simds_per_cu", static_cast<double>(p.simds_per_cu));
  positive("lds_capacity_bytes", static_cast<double>(p.lds_capacity_bytes));
  positive("l1_rate_bytes_per_cycle", p.l1_rate_bytes_per_cycle);
  positive("l2_bandwidth_bytes_per_cycle", p.l2_bandwidth_bytes_per_cycle);
  positive("l2_capacity_bytes", p.l2_capacity_bytes);
  positive("llc_bandwidth_bytes_per_cycle", p.llc_bandwidth_bytes_per_cycle);
  positive("llc_capacity_bytes", p.llc_capacity_bytes);
  positive("mem_bandwidth_bytes_per_cycle", p.mem_bandwidth_bytes_per_cycle);
  positive("mem_latency_cycles", p.mem_latency_cycles);
  if (p.instructions.empty()) {
    v.emplace_back("instructions must define at least one dtype");
  }
  for (const auto& [dtype, mi] : p.instructions) {
    const std::string prefix = "instructions." + dtype + ".";
    for (auto [field, dim] : {std::pair{"mi_m", mi.mi_m},
                              std::pair{"mi_n", mi.mi_n},
                              std::pair{"mi_k", mi.mi_k}}) {
      if (!is_power_of_two(dim)) {
        v.push_back(prefix + field + " must be a positive power of two (got " +
                    std::to_string(dim) + ")");
      }
    }
    if (!(mi.latency_cycles >= 1.0)) {
      v.push_back(prefix + "latency_cycles must be >= 1 (got " +
                  format_real(mi.latency_cycles) + ")");
    }
    positive(prefix + "bytes_per_element",
             static_cast<double>(mi.bytes_per_element));
  }
  positive("max_pipeline_stages", static_cast<double>(p.max_pipeline_stages));
  return v;
}

HardwareProfile parse_profile(std::string_view text) {
  HardwareProfile p;
  std::string section;  // "" for the top level, else the dtype
  std::map<std::string, std::vector<std::string>, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated table header");
      const std::string_view header = trim(line.substr(1, line.size() - 2));
      if (!header.starts_with(kInstructionPrefix) ||
          header.size() == kInstructionPrefix.size()) {
        parse_fail(line_no, "unknown table '" + std::string(header) +
                                "' (expected [instructions.<dtype>])");
      }
      section = std::string(header.substr(kInstructionPrefix.size()));
      if (p.instructions.contains(section)) {
        parse_fail(line_no, "duplicate table [instructions." + section + "]");
      }
      p.instructions[section] = MatrixInstruction{};
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      parse_fail(line_no, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      parse_fail(line_no, "expected 'key = value'");
    }
    auto& keys = seen[section];
    for (const auto& k : keys) {
      if (k == key) parse_fail(line_no, "duplicate key '" + key + "'");
    }
    keys.push_back(key);

    if (!section.empty()) {
      MatrixInstruction& mi = p.instructions[section];
      if (key == "mi_m") mi.mi_m = parse_int(value, line_no, key);
      else if (key == "mi_n") mi.mi_n = parse_int(value, line_no, key);
      else if (key == "mi_k") mi.mi_k = parse_int(value, line_no, key);
      else if (key == "latency_cycles") mi.latency_cycles = parse_real(value, line_no, key);
      else if (key == "bytes_per_element") mi.bytes_per_element = parse_int(value, line_no, key);
      else parse_fail(line_no, "unknown instruction field '" + key + "'");
      continue;
    }

    if (key == "name") p.name = parse_string(value, line_no, key);
    else if (key == "compute_units") p.compute_units = parse_int(value, line_no, key);
    else if (key == "cu_groups_per_l2") p.cu_groups_per_l2 = parse_int(value, line_no, key);
    else if (key == "simds_per_cu") p.simds_per_cu = parse_int(value, line_no, key);
    else if (key == "lds_capacity_bytes") p.lds_capacity_bytes = parse_int(value, line_no, key);
    else if (key == "l1_rate_bytes_per_cycle") p.l1_rate_bytes_per_cycle = parse_real(value, line_no, key);
    else if (key == "l2_bandwidth_bytes_per_cycle") p.l2_bandwidth_bytes_per_cycle = parse_real(value, line_no, key);
    else if (key == "l2_capacity_bytes") p.l2_capacity_bytes = parse_real(value, line_no, key);
    else if (key == "llc_bandwidth_bytes_per_cycle") p.llc_bandwidth_bytes_per_cycle = parse_real(value, line_no, key);
    else if (key == "llc_capacity_bytes") p.llc_capacity_bytes = parse_real(value, line_no, key);
    else if (key == "mem_bandwidth_bytes_per_cycle") p.mem_bandwidth_bytes_per_cycle = parse_real(value, line_no, key);
    else if (key == "mem_latency_cycles") p.mem_latency_cycles = parse_real(value, line_no, key);
    else if (key == "max_pipeline_stages") p.max_pipeline_stages = parse_int(value, line_no, key);
    else parse_fail(line_no, "unknown field '" + key + "'");
  }

  static constexpr std::string_view kRequired[] = {
      "name", "compute_units", "cu_groups_per_l2", "simds_per_cu",
      "lds_capacity_bytes", "l1_rate_bytes_per_cycle",
      "l2_bandwidth_bytes_per_cycle", "l2_capacity_bytes",
      "llc_bandwidth_bytes_per_cycle", "llc_capacity_bytes",
      "mem_bandwidth_bytes_per_cycle", "mem_latency_cycles",
      "max_pipeline_stages"};
  static constexpr std::string_view kRequiredInstr[] = {
      "mi_m", "mi_n", "mi_k", "latency_cycles", "bytes_per_element"};
  auto require = [&seen](const std::string& sect, std::string_view key) {
    const auto& keys = seen[sect];
    for (const auto& k : keys) {
      if (k == key) return;
    }
    throw ProfileParseError(
        "missing field '" +
        (sect.empty() ? std::string(key)
                      : "instructions." + sect + "." + std::string(key)) +
        "'");
  };
  for (auto key : kRequired) require("", key);
  for (const auto& [dtype, mi] : p.instructions) {
    for (auto key : kRequiredInstr) require(dtype, key);
  }
  return p;
}

HardwareProfile load_profile_text(std::string_view text) {
  HardwareProfile p = parse_profile(text);
  const auto violations = validate(p);
  if (!violations.empty()) {
    throw ProfileValidationError("invalid hardware profile '" + p.name +
                                 "': " + violations.front());
  }
  return p;
}

HardwareProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ProfileParseError("cannot open hardware profile: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_profile_text(buf.str());
  } catch (const ProfileParseError& e) {
    throw ProfileParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_profile(const HardwareProfile& p) {
  std::ostringstream out;
  out << "name = \"" << p.name << "\"\n"
      << "compute_units = " << p.compute_units << "\n"
      << "cu_groups_per_l2 = " << p.cu_groups_per_l2 << "\n"
      << "simds_per_cu = " << p.simds_per_cu << "\n"
      << "lds_capacity_bytes = " << p.lds_capacity_bytes << "\n"
      << "l1_rate_bytes_per_cycle = " << format_real(p.l1_rate_bytes_per_cycle) << "\n"
      << "l2_bandwidth_bytes_per_cycle = " << format_real(p.l2_bandwidth_bytes_per_cycle) << "\n"
      << "l2_capacity_bytes = " << format_real(p.l2_capacity_bytes) << "\n"
      << "llc_bandwidth_bytes_per_cycle = " << format_real(p.llc_bandwidth_bytes_per_cycle) << "\n"
      << "llc_capacity_bytes = " << format_real(p.llc_capacity_bytes) << "\n"
      << "mem_bandwidth_bytes_per_cycle = " << format_real(p.mem_bandwidth_bytes_per_cycle) << "\n"
      << "mem_latency_cycles = " << format_real(p.mem_latency_cycles) << "\n"
      << "max_pipeline_stages = " << p.max_pipeline_stages << "\n";
  for (const auto& [dtype, mi] : p.instructions) {
    out << "\n[instructions." << dtype << "]\n"
        << "mi_m = " << mi.mi_m << "\n"
        << "mi_n = " << mi.mi_n << "\n"
        << "mi_k = " << mi.mi_k << "\n"
        << "latency_cycles = " << format_real(mi.latency_cycles) << "\n"
        << "bytes_per_element = " << mi.bytes_per_element << "\n";
  }
  return out.str();
}

std::filesystem::path resolve_profile_path(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) return name_or_path;
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("TILESELECT_PROFILE_DIR")) {
    dirs.emplace_back(env);
  }
  if (std::string_view(TILESELECT_PROFILE_DIR).size() > 0) {
    dirs.emplace_back(TILESELECT_PROFILE_DIR);
  }
  for (const auto& dir : dirs) {
    const fs::path candidate = dir / (name_or_path + ".toml");
    if (fs::exists(candidate)) return candidate;
  }
  return name_or_path;
}

}  // namespace tileselect
