// SPDX-License-Identifier: Apache-2.0
#pragma once

// Post-hoc analysis of recorded time series: one-sided periodograms,
// spectral peaks, histograms and correlation.

#include <cstddef>
#include <span>
#include <vector>

namespace qbrain::analysis {

enum class Window { rectangular, hann };

struct PeriodogramOptions {
  Window window = Window::rectangular;
  /// > 1 averages that many half-overlapping segments (Welch).
  int welch_segments = 1;
};

/// Frequencies in cycles per unit time, 0 .. 1/(2 dt), uniformly spaced.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> power;
};

/// Mean-removed, windowed periodogram. Power is one-sided and normalised so
/// that sum(power) equals the mean square of the windowed series (for the
/// rectangular window: the variance). Throws std::invalid_argument for fewer
/// than 8 samples, non-finite samples or a non-positive interval.
Spectrum periodogram(std::span<const double> samples, double sample_interval, PeriodogramOptions options = {});

struct Peak {
  std::size_t bin = 0;
  double frequency = 0.0;
  double power = 0.0;
  bool degenerate = false;  ///< set when every non-DC bin is zero
};

/// Largest non-DC bin, ties to the lower frequency. Throws
/// std::invalid_argument if the spectrum has no non-DC bin.
Peak dominant_frequency(const Spectrum& spectrum);

/// Largest local maxima (non-DC), by descending power.
std::vector<Peak> top_peaks(const Spectrum& spectrum, std::size_t count);

/// Dominant bin restricted to frequencies in [f_lo, f_hi].
Peak dominant_frequency_in_band(const Spectrum& spectrum, double f_lo, double f_hi);

/// Frequencies of the outermost contiguous bins around `peak` whose power is
/// at least half the peak power.
struct HalfMaxSpan {
  double low = 0.0;
  double high = 0.0;
};
HalfMaxSpan half_max_span(const Spectrum& spectrum, const Peak& peak);

struct Histogram {
  std::vector<double> edges;      ///< bins + 1 edges
  std::vector<double> densities;  ///< integrates to 1
  double mean() const;
};

/// Equal-width bins over [min, max]. Constant samples give a single
/// unit-width bin centred on the value. Throws std::invalid_argument for
/// bins < 2, empty or non-finite input.
Histogram histogram(std::span<const double> samples, int bins);

/// Throws std::invalid_argument on length mismatch, fewer than 2 samples or
/// zero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> samples);

}  // namespace qbrain::analysis
