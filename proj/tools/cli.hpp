// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qbrain/io.hpp"

namespace qbrain::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kNumericalFailure = 2;

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Static line chart of `columns` against the first column of `table`.
/// Throws std::invalid_argument for an empty table.
std::string render_svg(const io::CsvTable& table, const std::vector<std::string>& columns);

}  // namespace qbrain::cli
