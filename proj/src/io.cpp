// SPDX-License-Identifier: Apache-2.0
#include "qbrain/io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#ifndef QBRAIN_VERSION_STRING
#define QBRAIN_VERSION_STRING "0.0.0"
#endif

namespace qbrain::io {

using nlohmann::json;

namespace {

// ordered_json keeps the canonical key order in the output.
using ojson = nlohmann::ordered_json;

double as_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x < -2147483647LL || x > 2147483647LL) throw ConfigError(key, "integer out of range");
    return static_cast<int>(x);
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::floor(x) == x && std::abs(x) < 2.1e9) return static_cast<int>(x);
  }
  throw ConfigError(key, "expected an integer");
}

// "auto" or a positive integer; "auto" maps to 0.
int auto_or_int(const json& v, const std::string& key) {
  if (v.is_string()) {
    if (v.get<std::string>() == "auto") return 0;
    throw ConfigError(key, "expected \"auto\" or an integer");
  }
  const int x = as_int(v, key);
  if (x < 1) throw ConfigError(key, "must be >= 1 or \"auto\"");
  return x;
}

double parse_real(std::string_view text, const std::string& key) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, fmt::format("cannot parse '{}' as a number", text));
  return v;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"N",  "gamma", "g0",    "h",  "tau_r",         "tau_f",
                                                "U_base", "r0", "U0", "initial", "t_max", "dt",
                                                "record_stride", "block_size", "renormalize"};
  return keys;
}

std::string config_to_json(const SimulationConfig& c) {
  ojson j;
  j["N"] = c.N;
  j["gamma"] = c.lmg.gamma;
  j["g0"] = c.lmg.g0;
  j["h"] = c.lmg.h;
  j["tau_r"] = c.plasticity.tau_r;
  j["tau_f"] = c.plasticity.tau_f;
  j["U_base"] = c.plasticity.U_base;
  j["r0"] = c.plasticity.r0;
  j["U0"] = c.plasticity.U0;
  ojson init;
  if (c.initial.kind == InitialCondition::Kind::count)
    init["count"] = c.initial.count;
  else
    init["fraction"] = c.initial.fraction;
  j["initial"] = init;
  j["t_max"] = c.t_max;
  if (c.dt)
    j["dt"] = *c.dt;
  else
    j["dt"] = "auto";
  if (c.record_stride > 0)
    j["record_stride"] = c.record_stride;
  else
    j["record_stride"] = "auto";
  if (c.block_size > 0)
    j["block_size"] = c.block_size;
  else
    j["block_size"] = "auto";
  j["renormalize"] = c.renormalize;
  return j.dump(2) + "\n";
}

SimulationConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<json>", e.what());
  }
  if (!j.is_object()) throw ConfigError("<json>", "top level must be an object");

  SimulationConfig c;
  const auto& keys = config_keys();
  for (const auto& [key, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(key, "unknown key");
    if (key == "N") {
      c.N = as_int(v, key);
    } else if (key == "gamma") {
      c.lmg.gamma = as_real(v, key);
    } else if (key == "g0") {
      c.lmg.g0 = as_real(v, key);
    } else if (key == "h") {
      c.lmg.h = as_real(v, key);
    } else if (key == "tau_r") {
      c.plasticity.tau_r = as_real(v, key);
    } else if (key == "tau_f") {
      c.plasticity.tau_f = as_real(v, key);
    } else if (key == "U_base") {
      c.plasticity.U_base = as_real(v, key);
    } else if (key == "r0") {
      c.plasticity.r0 = as_real(v, key);
    } else if (key == "U0") {
      c.plasticity.U0 = as_real(v, key);
    } else if (key == "initial") {
      if (!v.is_object() || v.size() != 1) throw ConfigError(key, "expected {\"count\": n} or {\"fraction\": f}");
      if (v.contains("count"))
        c.initial = InitialCondition::excitations(as_int(v["count"], "initial"));
      else if (v.contains("fraction"))
        c.initial = InitialCondition::excited_fraction(as_real(v["fraction"], "initial"));
      else
        throw ConfigError(key, "expected {\"count\": n} or {\"fraction\": f}");
    } else if (key == "t_max") {
      c.t_max = as_real(v, key);
    } else if (key == "dt") {
      if (v.is_string()) {
        if (v.get<std::string>() != "auto") throw ConfigError(key, "expected \"auto\" or a number");
        c.dt.reset();
      } else {
        c.dt = as_real(v, key);
      }
    } else if (key == "record_stride") {
      c.record_stride = auto_or_int(v, key);
    } else if (key == "block_size") {
      c.block_size = auto_or_int(v, key);
    } else if (key == "renormalize") {
      if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
      c.renormalize = v.get<bool>();
    }
  }
  c.validate();
  return c;
}

SimulationConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void set_config_value(SimulationConfig& c, std::string_view key_view, std::string_view value) {
  const std::string key(key_view);
  const auto as_int_text = [&](std::string_view t) {
    int v = 0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ConfigError(key, fmt::format("cannot parse '{}' as an integer", t));
    return v;
  };
  if (key == "N") {
    c.N = as_int_text(value);
  } else if (key == "gamma") {
    c.lmg.gamma = parse_real(value, key);
  } else if (key == "g0") {
    c.lmg.g0 = parse_real(value, key);
  } else if (key == "h") {
    c.lmg.h = parse_real(value, key);
  } else if (key == "tau_r") {
    c.plasticity.tau_r = parse_real(value, key);
  } else if (key == "tau_f") {
    c.plasticity.tau_f = parse_real(value, key);
  } else if (key == "U_base") {
    c.plasticity.U_base = parse_real(value, key);
  } else if (key == "r0") {
    c.plasticity.r0 = parse_real(value, key);
  } else if (key == "U0") {
    c.plasticity.U0 = parse_real(value, key);
  } else if (key == "t_max") {
    c.t_max = parse_real(value, key);
  } else if (key == "dt") {
    if (value == "auto")
      c.dt.reset();
    else
      c.dt = parse_real(value, key);
  } else if (key == "record_stride") {
    c.record_stride = value == "auto" ? 0 : as_int_text(value);
  } else if (key == "block_size") {
    c.block_size = value == "auto" ? 0 : as_int_text(value);
  } else if (key == "initial.count" || key == "count") {
    c.initial = InitialCondition::excitations(as_int_text(value));
  } else if (key == "initial.fraction" || key == "fraction") {
    c.initial = InitialCondition::excited_fraction(parse_real(value, key));
  } else if (key == "renormalize") {
    if (value != "true" && value != "false") throw ConfigError(key, "expected true or false");
    c.renormalize = value == "true";
  } else {
    throw ConfigError(key, "not a scalar config field");
  }
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string config_hash(const SimulationConfig& config) { return fnv1a_hex(config_to_json(config)); }

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

const std::vector<double>& CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return columns[i];
  throw std::out_of_range(fmt::format("no column '{}'; available: {}", name, fmt::join(header, ", ")));
}

std::string format_csv(const CsvTable& table) {
  std::string out = fmt::format("{}\n", fmt::join(table.header, ","));
  for (std::size_t row = 0; row < table.rows(); ++row) {
    for (std::size_t col = 0; col < table.columns.size(); ++col) {
      if (col) out += ',';
      out += format_double(table.columns[col][row]);
    }
    out += '\n';
  }
  return out;
}

std::string format_trajectory_csv(const Trajectory& traj) {
  std::string out = fmt::format("{}\n", fmt::join(trajectory_columns(), ","));
  out.reserve(out.size() + traj.records.size() * 9 * 24);
  for (const auto& r : traj.records) {
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                   r.t, r.E, r.r, r.U, r.fidelity, r.S_block, r.S_linear, r.energy, r.norm);
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t line_no = 0;
  auto split = [](std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      table.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != table.header.size())
      throw std::runtime_error(fmt::format("line {}: expected {} fields, got {}", line_no, table.header.size(), cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = 0.0;
      const auto cell = cells[i];
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw std::runtime_error(fmt::format("line {}: cannot parse '{}' as a number", line_no, cell));
      table.columns[i].push_back(v);
    }
  }
  if (table.header.empty()) throw std::runtime_error("CSV has no header row");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_to_json(const RunManifest& m) {
  ojson j;
  j["config_hash"] = m.config_hash;
  j["version"] = m.version;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

std::string_view version() { return QBRAIN_VERSION_STRING; }

}  // namespace qbrain::io
