// SPDX-License-Identifier: Apache-2.0
#pragma once

// Config files (JSON), CSV tables and run manifests.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qbrain/dynamics.hpp"

namespace qbrain::io {

/// Keys accepted in a config file, in canonical order.
const std::vector<std::string>& config_keys();

/// Canonical JSON text (2-space indent, trailing newline).
std::string config_to_json(const SimulationConfig& config);

/// Parses and validates. Unknown keys, wrong types and invalid values throw
/// ConfigError naming the key; malformed JSON throws ConfigError with key
/// "<json>". Missing keys keep their defaults.
SimulationConfig config_from_json(std::string_view text);

SimulationConfig read_config_file(const std::filesystem::path& path);

/// Sets one scalar field from its textual value, e.g. ("tau_r", "10").
/// Throws ConfigError for unknown keys or unparsable values.
void set_config_value(SimulationConfig& config, std::string_view key, std::string_view value);

/// FNV-1a 64 as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// fnv1a_hex of the canonical JSON.
std::string config_hash(const SimulationConfig& config);

/// 17 significant digits, shortest exact form not attempted.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  ///< one vector per header entry

  std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws std::out_of_range listing the available columns.
  const std::vector<double>& column(std::string_view name) const;
};

std::string format_csv(const CsvTable& table);
std::string format_trajectory_csv(const Trajectory& traj);

/// Throws std::runtime_error on unreadable files, ragged rows or bad numbers.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Writes via a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::string started;   ///< ISO 8601 UTC
  std::string finished;  ///< ISO 8601 UTC
  std::vector<std::string> outputs;
};

std::string utc_timestamp();
std::string manifest_to_json(const RunManifest& manifest);

/// The library version string.
std::string_view version();

}  // namespace qbrain::io
