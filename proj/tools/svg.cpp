// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "cli.hpp"

namespace qbrain::cli {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

struct Range {
  double lo;
  double hi;
};

// 1-2-5 tick spacing with roughly `target` ticks.
std::vector<double> ticks(Range r, int target) {
  const double span = r.hi - r.lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step)
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return out;
}

Range padded(double lo, double hi) {
  if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_svg(const io::CsvTable& table, const std::vector<std::string>& columns) {
  if (table.rows() == 0) throw std::invalid_argument("nothing to plot: the table has no rows");
  const auto& x = table.columns.front();
  double ylo = INFINITY, yhi = -INFINITY;
  for (const auto& name : columns)
    for (double v : table.column(name))
      if (std::isfinite(v)) {
        ylo = std::min(ylo, v);
        yhi = std::max(yhi, v);
      }
  if (!std::isfinite(ylo)) ylo = yhi = 0.0;
  const Range xr = x.front() < x.back() ? Range{x.front(), x.back()} : padded(x.front(), x.back());
  const Range yr = padded(ylo, yhi);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double v) { return kTop + (yr.hi - v) / (yr.hi - yr.lo) * ph; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                     kTop, pw, ph);
  for (double t : ticks(xr, 8)) {
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n", px(t),
                       kTop + ph, kTop + ph + 5);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:g}</text>\n", px(t), kTop + ph + 20, t);
  }
  for (double t : ticks(yr, 6)) {
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", kLeft - 5,
                       py(t), kLeft);
    svg += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\" dominant-baseline=\"middle\">{:g}</text>\n",
                       kLeft - 8, py(t), t);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2, kHeight - 15,
                     table.header.front());

  // Per horizontal pixel keep the first, min, max and last sample so long
  // oscillating series keep their envelope.
  const auto buckets = static_cast<std::size_t>(pw);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& y = table.column(columns[c]);
    std::string points;
    std::size_t i = 0;
    while (i < y.size()) {
      const auto bucket = std::min(buckets - 1, static_cast<std::size_t>((px(x[i]) - kLeft) / pw * buckets));
      std::size_t end = i;
      std::size_t imin = i, imax = i;
      while (end < y.size() &&
             std::min(buckets - 1, static_cast<std::size_t>((px(x[end]) - kLeft) / pw * buckets)) == bucket) {
        if (y[end] < y[imin]) imin = end;
        if (y[end] > y[imax]) imax = end;
        ++end;
      }
      std::vector<std::size_t> keep = {i, imin, imax, end - 1};
      std::sort(keep.begin(), keep.end());
      keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
      for (auto k : keep)
        if (std::isfinite(y[k])) points += fmt::format("{:.2f},{:.2f} ", px(x[k]), py(y[k]));
      i = end;
    }
    if (!points.empty()) points.pop_back();
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n",
                       kPalette[c % kPalette.size()], points);
  }

  for (std::size_t c = 0; c < columns.size(); ++c) {
    const double ly = kTop + 10 + 20.0 * static_cast<double>(c);
    const double lx = kLeft + pw + 15;
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n", lx, ly,
                       lx + 25, ly, kPalette[c % kPalette.size()]);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" dominant-baseline=\"middle\">{}</text>\n", lx + 32, ly, columns[c]);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace qbrain::cli
