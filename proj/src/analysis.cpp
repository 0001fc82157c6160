// SPDX-License-Identifier: Apache-2.0
#include "qbrain/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qbrain::analysis {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

// |X_k|^2 for k = 0..M/2 of a real series.
std::vector<double> squared_magnitudes(const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * x.size())));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (x.size() / 2 + 1))));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(m, in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);
  std::vector<double> mag(x.size() / 2 + 1);
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = out.get()[k][0] * out.get()[k][0] + out.get()[k][1] * out.get()[k][1];
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return mag;
}

std::vector<double> segment_power(std::span<const double> seg, Window window) {
  const std::size_t m = seg.size();
  double mu = 0.0;
  for (double v : seg) mu += v;
  mu /= static_cast<double>(m);
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) {
    double w = 1.0;
    if (window == Window::hann) w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m));
    x[i] = w * (seg[i] - mu);
  }
  std::vector<double> p = squared_magnitudes(x);
  const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  for (std::size_t k = 0; k < p.size(); ++k) {
    const bool unpaired = k == 0 || (m % 2 == 0 && k == m / 2);
    p[k] *= unpaired ? scale : 2.0 * scale;
  }
  return p;
}

}  // namespace

Spectrum periodogram(std::span<const double> samples, double sample_interval, PeriodogramOptions options) {
  if (samples.size() < 8)
    throw std::invalid_argument("periodogram needs at least 8 samples, got " + std::to_string(samples.size()));
  if (!(sample_interval > 0.0) || !std::isfinite(sample_interval))
    throw std::invalid_argument("sample interval must be positive");
  for (double v : samples)
    if (!std::isfinite(v)) throw std::invalid_argument("periodogram input contains non-finite values");

  const int segments = std::max(1, options.welch_segments);
  // K half-overlapping segments of length L cover (K + 1) L / 2 samples.
  const std::size_t seg_len = segments == 1 ? samples.size() : 2 * samples.size() / static_cast<std::size_t>(segments + 1);
  if (seg_len < 8) throw std::invalid_argument("too many Welch segments for the series length");
  const std::size_t hop = segments == 1 ? 0 : seg_len / 2;

  Spectrum spec;
  spec.power.assign(seg_len / 2 + 1, 0.0);
  for (int s = 0; s < segments; ++s) {
    const auto p = segment_power(samples.subspan(static_cast<std::size_t>(s) * hop, seg_len), options.window);
    for (std::size_t k = 0; k < p.size(); ++k) spec.power[k] += p[k] / segments;
  }
  spec.frequencies.resize(spec.power.size());
  const double df = 1.0 / (static_cast<double>(seg_len) * sample_interval);
  for (std::size_t k = 0; k < spec.frequencies.size(); ++k) spec.frequencies[k] = static_cast<double>(k) * df;
  return spec;
}

Peak dominant_frequency(const Spectrum& spectrum) {
  if (spectrum.power.size() < 2) throw std::invalid_argument("spectrum has no non-DC bins");
  std::size_t best = 1;
  for (std::size_t k = 2; k < spectrum.power.size(); ++k)
    if (spectrum.power[k] > spectrum.power[best]) best = k;
  Peak peak{best, spectrum.frequencies[best], spectrum.power[best], false};
  peak.degenerate = !(peak.power > 0.0);
  return peak;
}

Peak dominant_frequency_in_band(const Spectrum& spectrum, double f_lo, double f_hi) {
  Peak best;
  bool found = false;
  for (std::size_t k = 1; k < spectrum.power.size(); ++k) {
    const double f = spectrum.frequencies[k];
    if (f < f_lo || f > f_hi) continue;
    if (!found || spectrum.power[k] > best.power) {
      best = Peak{k, f, spectrum.power[k], false};
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("no spectral bins inside the requested band");
  best.degenerate = !(best.power > 0.0);
  return best;
}

std::vector<Peak> top_peaks(const Spectrum& spectrum, std::size_t count) {
  std::vector<Peak> peaks;
  const auto& p = spectrum.power;
  for (std::size_t k = 1; k < p.size(); ++k) {
    const bool left = k == 1 || p[k] > p[k - 1];
    const bool right = k + 1 == p.size() || p[k] >= p[k + 1];
    if (left && right && p[k] > 0.0) peaks.push_back(Peak{k, spectrum.frequencies[k], p[k], false});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.power > b.power; });
  if (peaks.size() > count) peaks.resize(count);
  return peaks;
}

HalfMaxSpan half_max_span(const Spectrum& spectrum, const Peak& peak) {
  const double half = 0.5 * peak.power;
  std::size_t lo = peak.bin;
  std::size_t hi = peak.bin;
  while (lo > 1 && spectrum.power[lo - 1] >= half) --lo;
  while (hi + 1 < spectrum.power.size() && spectrum.power[hi + 1] >= half) ++hi;
  return {spectrum.frequencies[lo], spectrum.frequencies[hi]};
}

double Histogram::mean() const {
  double s = 0.0;
  for (std::size_t b = 0; b < densities.size(); ++b) {
    const double width = edges[b + 1] - edges[b];
    s += 0.5 * (edges[b] + edges[b + 1]) * densities[b] * width;
  }
  return s;
}

Histogram histogram(std::span<const double> samples, int bins) {
  if (bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
  if (samples.empty()) throw std::invalid_argument("histogram of an empty series");
  for (double v : samples)
    if (!std::isfinite(v)) throw std::invalid_argument("histogram input contains non-finite values");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  Histogram h;
  if (!(hi > lo)) {
    h.edges = {lo - 0.5, lo + 0.5};
    h.densities = {1.0};
    return h;
  }
  const double width = (hi - lo) / bins;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + b * width;
  h.edges.back() = hi;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double v : samples) {
    auto b = static_cast<long>((v - lo) / width);
    b = std::clamp(b, 0L, static_cast<long>(bins) - 1);
    counts[static_cast<std::size_t>(b)] += 1.0;
  }
  h.densities.resize(counts.size());
  const double total = static_cast<double>(samples.size());
  for (std::size_t b = 0; b < counts.size(); ++b) h.densities[b] = counts[b] / (total * (h.edges[b + 1] - h.edges[b]));
  return h;
}

double mean(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("mean of an empty series");
  double s = 0.0;
  for (double v : samples) s += v;
  return s / static_cast<double>(samples.size());
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("correlation of series with different lengths");
  if (a.size() < 2) throw std::invalid_argument("correlation needs at least 2 samples");
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw std::invalid_argument("correlation undefined for a zero-variance series");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace qbrain::analysis
