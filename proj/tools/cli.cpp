// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "qbrain/analysis.hpp"
#include "qbrain/kernels.hpp"
#include "qbrain/presets.hpp"

namespace qbrain::cli {

namespace fs = std::filesystem;

namespace {

// Unwinds to run() with an exit status and message.
struct Failure {
  int code;
  std::string message;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

SimulationConfig load_config(const std::string& config_path, const std::string& preset_name,
                             const std::vector<std::string>& overrides) {
  SimulationConfig config;
  if (!preset_name.empty()) {
    try {
      config = preset(preset_name);
    } catch (const std::out_of_range& e) {
      throw Failure{kUsageError, e.what()};
    }
  } else {
    config = io::read_config_file(config_path);
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(kv, "override must look like key=value");
    io::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.validate();
  return config;
}

void write_manifest(const fs::path& path, const std::string& hash, const std::string& started,
                    std::vector<std::string> outputs) {
  io::RunManifest m{hash, std::string(io::version()), started, io::utc_timestamp(), std::move(outputs)};
  io::write_file_atomic(path, io::manifest_to_json(m));
}

fs::path manifest_path_for(const fs::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

const std::vector<double>& need_column(const io::CsvTable& table, const std::string& name) {
  try {
    return table.column(name);
  } catch (const std::out_of_range& e) {
    throw Failure{kUsageError, e.what()};
  }
}

io::CsvTable load_table(const std::string& path) {
  try {
    return io::read_csv(path);
  } catch (const std::exception& e) {
    throw Failure{kUsageError, e.what()};
  }
}

// Rows whose first column lies in [tmin, tmax].
std::vector<std::size_t> rows_in_window(const io::CsvTable& table, std::optional<double> tmin, std::optional<double> tmax) {
  std::vector<std::size_t> rows;
  const auto& t = table.columns.front();
  for (std::size_t i = 0; i < t.size(); ++i)
    if ((!tmin || t[i] >= *tmin) && (!tmax || t[i] <= *tmax)) rows.push_back(i);
  return rows;
}

// Mean spacing; throws Failure when any spacing deviates by more than 1e-9
// relative.
double uniform_interval(const std::vector<double>& t) {
  if (t.size() < 2) throw Failure{kUsageError, "need at least two samples"};
  const double mean_dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(mean_dt > 0.0)) throw Failure{kUsageError, "time column must be strictly increasing"};
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double d = t[i] - t[i - 1];
    if (std::abs(d - mean_dt) > 1e-9 * mean_dt)
      throw Failure{kUsageError, fmt::format("non-uniform sampling at row {} (spacing {:.17g}, mean {:.17g})", i, d, mean_dt)};
  }
  return mean_dt;
}

double dominant_s_block_frequency(const Trajectory& traj) {
  if (traj.records.size() < 8) return std::numeric_limits<double>::quiet_NaN();
  const auto s = traj.column("S_block");
  const auto spec = analysis::periodogram(s, traj.dt * traj.record_stride);
  return analysis::dominant_frequency(spec).frequency;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string preset;
  std::string out;
  std::vector<std::string> overrides;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const std::string started = io::utc_timestamp();
  const SimulationConfig config = load_config(a.config, a.preset, a.overrides);
  const Trajectory traj = simulate(config);
  const fs::path csv = a.out;
  ensure_parent(csv);
  io::write_file_atomic(csv, io::format_trajectory_csv(traj));
  write_manifest(manifest_path_for(csv), io::config_hash(config), started, {csv.string()});
  out << fmt::format("wrote {} records (dt = {:.6g}, {} steps) to {}\n", traj.records.size(), traj.dt, traj.steps,
                     csv.string());
  return kOk;
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  std::string in;
  std::string column = "S_block";
  std::string out;
  std::string window = "rectangular";
  int welch = 1;
  std::optional<double> tmin;
  std::optional<double> tmax;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const std::string started = io::utc_timestamp();
  const io::CsvTable table = load_table(a.in);
  const auto& values = need_column(table, a.column);
  const auto rows = rows_in_window(table, a.tmin, a.tmax);
  std::vector<double> t, x;
  for (auto i : rows) {
    t.push_back(table.columns.front()[i]);
    x.push_back(values[i]);
  }
  const double interval = uniform_interval(t);
  analysis::PeriodogramOptions opts;
  opts.window = a.window == "hann" ? analysis::Window::hann : analysis::Window::rectangular;
  opts.welch_segments = a.welch;
  analysis::Spectrum spec;
  try {
    spec = analysis::periodogram(x, interval, opts);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsageError, e.what()};
  }
  const auto peak = analysis::dominant_frequency(spec);
  const fs::path dest = a.out;
  ensure_parent(dest);
  io::write_file_atomic(dest, io::format_csv({{"frequency", "power"}, {spec.frequencies, spec.power}}));
  write_manifest(manifest_path_for(dest), io::fnv1a_hex(io::format_csv(table)), started, {dest.string()});
  out << fmt::format("dominant frequency: {:.17g}\n", peak.frequency);
  out << fmt::format("dominant power: {:.17g}{}\n", peak.power, peak.degenerate ? " (degenerate: all-zero spectrum)" : "");
  for (const auto& p : analysis::top_peaks(spec, 5)) out << fmt::format("peak: {:.17g} {:.17g}\n", p.frequency, p.power);
  return kOk;
}

// --- hist -------------------------------------------------------------------

struct HistArgs {
  std::string in;
  std::string column = "S_block";
  int bins = 50;
  std::string out;
  std::optional<double> tmin;
  std::optional<double> tmax;
};

int cmd_hist(const HistArgs& a, std::ostream& out) {
  const std::string started = io::utc_timestamp();
  const io::CsvTable table = load_table(a.in);
  const auto& values = need_column(table, a.column);
  std::vector<double> x;
  for (auto i : rows_in_window(table, a.tmin, a.tmax)) x.push_back(values[i]);
  analysis::Histogram h;
  try {
    h = analysis::histogram(x, a.bins);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsageError, e.what()};
  }
  io::CsvTable result{{"bin_left", "bin_right", "density"}, {{}, {}, {}}};
  for (std::size_t b = 0; b < h.densities.size(); ++b) {
    result.columns[0].push_back(h.edges[b]);
    result.columns[1].push_back(h.edges[b + 1]);
    result.columns[2].push_back(h.densities[b]);
  }
  const fs::path dest = a.out;
  ensure_parent(dest);
  io::write_file_atomic(dest, io::format_csv(result));
  write_manifest(manifest_path_for(dest), io::fnv1a_hex(io::format_csv(table)), started, {dest.string()});
  out << fmt::format("bins: {}\nmean: {:.17g}\n", h.densities.size(), h.mean());
  return kOk;
}

// --- plot -------------------------------------------------------------------

struct PlotArgs {
  std::string in;
  std::string columns = "E,r,U";
  std::string out;
};

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  const std::string started = io::utc_timestamp();
  const io::CsvTable table = load_table(a.in);
  const auto names = split(a.columns, ',');
  for (const auto& n : names) need_column(table, n);
  if (table.rows() == 0) throw Failure{kUsageError, "trajectory has no rows"};
  const fs::path dest = a.out;
  ensure_parent(dest);
  io::write_file_atomic(dest, render_svg(table, names));
  write_manifest(manifest_path_for(dest), io::fnv1a_hex(io::format_csv(table)), started, {dest.string()});
  out << fmt::format("wrote {} series to {}\n", names.size(), dest.string());
  return kOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string preset;
  std::string vary;
  std::string out;
  int parallel = 1;
  std::vector<std::string> overrides;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const std::string started = io::utc_timestamp();
  const SimulationConfig base = load_config(a.config, a.preset, a.overrides);
  const auto eq = a.vary.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == a.vary.size())
    throw ConfigError("--vary", "expected key=v1,v2,...");
  const std::string key = a.vary.substr(0, eq);
  const auto values = split(a.vary.substr(eq + 1), ',');

  // Resolve every config up front so a bad key or value fails before any run.
  std::vector<SimulationConfig> configs;
  for (const auto& v : values) {
    SimulationConfig c = base;
    io::set_config_value(c, key, v);
    c.validate();
    configs.push_back(c);
  }

  const fs::path dir = a.out;
  fs::create_directories(dir);
  struct Outcome {
    double mean_E = 0.0;
    double dominant = 0.0;
    double max_U = 0.0;
    std::optional<StepError> failure;
  };
  std::vector<Outcome> outcomes(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const Trajectory traj = simulate(configs[i]);
        io::write_file_atomic(dir / fmt::format("{}={}.csv", key, values[i]), io::format_trajectory_csv(traj));
        const auto e = traj.column("E");
        const auto u = traj.column("U");
        outcomes[i].mean_E = analysis::mean(e);
        outcomes[i].dominant = dominant_s_block_frequency(traj);
        outcomes[i].max_U = *std::max_element(u.begin(), u.end());
      } catch (const StepError& e) {
        outcomes[i].failure = e;
      }
    }
  };
  const int workers = std::clamp(a.parallel, 1, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& o : outcomes)
    if (o.failure) throw *o.failure;

  std::string summary = "value,mean_E,dominant_frequency_S_block,max_U\n";
  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    summary += fmt::format("{},{},{},{}\n", values[i], io::format_double(outcomes[i].mean_E),
                           io::format_double(outcomes[i].dominant), io::format_double(outcomes[i].max_U));
    outputs.push_back((dir / fmt::format("{}={}.csv", key, values[i])).string());
  }
  io::write_file_atomic(dir / "summary.csv", summary);
  outputs.push_back((dir / "summary.csv").string());
  write_manifest(dir / "manifest.json", io::config_hash(base), started, outputs);
  out << fmt::format("{} runs written to {}\n", configs.size(), dir.string());
  return kOk;
}

// --- presets ----------------------------------------------------------------

int cmd_presets_list(std::ostream& out) {
  for (const auto& p : preset_catalog()) out << fmt::format("{:<22} {}\n", p.name, p.note);
  return kOk;
}

int cmd_presets_export(const std::string& name, const std::string& dest, std::ostream& out) {
  if (name == "all") {
    if (dest.empty()) throw Failure{kUsageError, "exporting all presets needs --out <dir>"};
    fs::create_directories(dest);
    for (const auto& p : preset_catalog())
      io::write_file_atomic(fs::path(dest) / (p.name + ".json"), io::config_to_json(p.config));
    out << fmt::format("{} presets written to {}\n", preset_catalog().size(), dest);
    return kOk;
  }
  Preset p;
  try {
    p = find_preset(name);
  } catch (const std::out_of_range& e) {
    throw Failure{kUsageError, e.what()};
  }
  if (dest.empty()) {
    out << io::config_to_json(p.config);
  } else {
    ensure_parent(dest);
    io::write_file_atomic(dest, io::config_to_json(p.config));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collective-qubit dynamics with synaptic plasticity feedback"};
  app.require_subcommand(1);
  std::string isa = "auto";
  app.add_option("--isa", isa, "Kernel variant: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  app.set_version_flag("--version", std::string(io::version()));

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate one configuration and write its trajectory CSV");
  auto* sim_config = simulate_cmd->add_option("--config", sim.config, "Config JSON file");
  auto* sim_preset = simulate_cmd->add_option("--preset", sim.preset, "Preset name (see `presets list`)");
  sim_config->excludes(sim_preset);
  simulate_cmd->add_option("--set", sim.overrides, "Override a field, key=value (repeatable)");
  simulate_cmd->add_option("--out", sim.out, "Trajectory CSV path")->required();

  SpectrumArgs spec;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Periodogram of one trajectory column");
  spectrum_cmd->add_option("--in", spec.in, "Trajectory CSV")->required();
  spectrum_cmd->add_option("--column", spec.column, "Column to analyse")->capture_default_str();
  spectrum_cmd->add_option("--out", spec.out, "Spectrum CSV path")->required();
  spectrum_cmd->add_option("--window", spec.window, "rectangular or hann")
      ->check(CLI::IsMember({"rectangular", "hann"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--welch", spec.welch, "Average this many half-overlapping segments")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  spectrum_cmd->add_option("--tmin", spec.tmin, "Drop samples before this time");
  spectrum_cmd->add_option("--tmax", spec.tmax, "Drop samples after this time");

  HistArgs hist;
  auto* hist_cmd = app.add_subcommand("hist", "Histogram of one trajectory column");
  hist_cmd->add_option("--in", hist.in, "Trajectory CSV")->required();
  hist_cmd->add_option("--column", hist.column, "Column to bin")->capture_default_str();
  hist_cmd->add_option("--bins", hist.bins, "Number of bins (>= 2)")->capture_default_str();
  hist_cmd->add_option("--out", hist.out, "Histogram CSV path")->required();
  hist_cmd->add_option("--tmin", hist.tmin, "Drop samples before this time");
  hist_cmd->add_option("--tmax", hist.tmax, "Drop samples after this time");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG line chart of trajectory columns");
  plot_cmd->add_option("--in", plot.in, "Trajectory CSV")->required();
  plot_cmd->add_option("--columns", plot.columns, "Comma-separated column names")->capture_default_str();
  plot_cmd->add_option("--out", plot.out, "SVG path")->required();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one simulation per value of a config field");
  auto* sweep_config = sweep_cmd->add_option("--config", sweep.config, "Base config JSON file");
  auto* sweep_preset = sweep_cmd->add_option("--preset", sweep.preset, "Base preset name");
  sweep_config->excludes(sweep_preset);
  sweep_cmd->add_option("--set", sweep.overrides, "Override a base field, key=value (repeatable)");
  sweep_cmd->add_option("--vary", sweep.vary, "key=v1,v2,...")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
  sweep_cmd->add_option("--parallel", sweep.parallel, "Concurrent runs")->check(CLI::PositiveNumber)->capture_default_str();

  auto* presets_cmd = app.add_subcommand("presets", "List or export the preset catalog");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "Print preset names and notes");
  std::string export_name;
  std::string export_out;
  auto* export_cmd = presets_cmd->add_subcommand("export", "Write a preset as config JSON");
  export_cmd->add_option("name", export_name, "Preset name, or `all`")->required();
  export_cmd->add_option("--out", export_out, "Destination file (directory for `all`); stdout if omitted");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    kernels::set_active_isa(kernels::parse_isa(isa));
    if (*simulate_cmd) {
      if (sim.config.empty() && sim.preset.empty()) throw Failure{kUsageError, "simulate needs --config or --preset"};
      return cmd_simulate(sim, out);
    }
    if (*spectrum_cmd) return cmd_spectrum(spec, out);
    if (*hist_cmd) return cmd_hist(hist, out);
    if (*plot_cmd) return cmd_plot(plot, out);
    if (*sweep_cmd) {
      if (sweep.config.empty() && sweep.preset.empty()) throw Failure{kUsageError, "sweep needs --config or --preset"};
      return cmd_sweep(sweep, out);
    }
    if (*list_cmd) return cmd_presets_list(out);
    if (*export_cmd) return cmd_presets_export(export_name, export_out, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const StepError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qbrain::cli
