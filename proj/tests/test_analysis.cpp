// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qbrain/analysis.hpp"
#include "support.hpp"

namespace qbrain::analysis {
namespace {

std::vector<double> sines(std::size_t n, double dt, std::initializer_list<std::pair<double, double>> parts) {
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (auto [amp, f] : parts) x[i] += amp * std::sin(2.0 * M_PI * f * static_cast<double>(i) * dt);
  return x;
}

// Direct O(n^2) one-sided DFT of the mean-removed series with the same
// normalisation: interior bins doubled, total equal to the variance.
std::vector<double> direct_periodogram(std::vector<double> x) {
  const double mu = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (auto& v : x) v -= mu;
  const std::size_t n = x.size();
  std::vector<double> p(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(k * i % n) / n);
    const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
    p[k] = std::norm(acc) / (static_cast<double>(n) * n) * (edge ? 1.0 : 2.0);
  }
  return p;
}

TEST(Periodogram, SingleSineConcentrates) {
  const auto x = sines(1000, 1.0, {{1.0, 0.05}});
  const auto spec = periodogram(x, 1.0);
  EXPECT_EQ(spec.frequencies.size(), 501u);
  EXPECT_DOUBLE_EQ(spec.frequencies[50], 0.05);
  const auto peak = dominant_frequency(spec);
  EXPECT_EQ(peak.bin, 50u);
  EXPECT_FALSE(peak.degenerate);
  const double total = std::accumulate(spec.power.begin(), spec.power.end(), 0.0);
  EXPECT_GE(peak.power / total, 0.99);
}

TEST(Periodogram, ConstantSeriesHasNoPower) {
  const std::vector<double> x(64, 3.7);
  const auto spec = periodogram(x, 0.5);
  for (double p : spec.power) EXPECT_NEAR(p, 0.0, 1e-28);
  const auto peak = dominant_frequency(spec);
  EXPECT_TRUE(peak.degenerate);
  EXPECT_EQ(peak.bin, 1u);
  EXPECT_EQ(peak.power, 0.0);
}

TEST(Periodogram, TwoSinesPowerRatio) {
  const auto x = sines(1000, 1.0, {{1.0, 0.01}, {0.5, 0.03}});
  const auto spec = periodogram(x, 1.0);
  const auto peaks = top_peaks(spec, 2);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_DOUBLE_EQ(peaks[0].frequency, 0.01);
  EXPECT_DOUBLE_EQ(peaks[1].frequency, 0.03);
  EXPECT_NEAR(peaks[1].power / peaks[0].power, 0.25, 0.25 * 0.05);
}

TEST(Periodogram, MatchesDirectDftProperty) {
  test::Gen gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(8, 300));
    std::vector<double> x(n);
    for (auto& v : x) v = gen.normal() + 2.0;
    const auto spec = periodogram(x, 1.0);
    const auto want = direct_periodogram(x);
    ASSERT_EQ(spec.power.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(spec.power[k], want[k], 1e-12) << "n=" << n;
  }
}

TEST(Periodogram, ParsevalProperty) {
  test::Gen gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(8, 5000));
    std::vector<double> x(n);
    for (auto& v : x) v = gen.uniform(-3, 5);
    const double mu = mean(x);
    double var = 0.0;
    for (double v : x) var += (v - mu) * (v - mu);
    var /= static_cast<double>(n);
    const auto spec = periodogram(x, gen.uniform(0.01, 2.0));
    EXPECT_NEAR(std::accumulate(spec.power.begin(), spec.power.end(), 0.0), var, 1e-10 * var);
  }
}

TEST(Periodogram, DominantBinInvariantUnderScalingProperty) {
  test::Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const double f = gen.integer(3, 120) / 512.0;
    auto x = sines(512, 1.0, {{1.0, f}});
    for (auto& v : x) v += 0.1 * gen.normal();
    const auto base = dominant_frequency(periodogram(x, 1.0));
    const double scale = gen.uniform(1e-3, 1e3);
    for (auto& v : x) v *= scale;
    EXPECT_EQ(dominant_frequency(periodogram(x, 1.0)).bin, base.bin);
    EXPECT_DOUBLE_EQ(base.frequency, f);
  }
}

TEST(Periodogram, WindowsAndWelch) {
  const auto x = sines(4096, 0.5, {{1.0, 0.1234}});
  for (auto opts : {PeriodogramOptions{Window::hann, 1}, PeriodogramOptions{Window::rectangular, 4},
                    PeriodogramOptions{Window::hann, 7}}) {
    const auto spec = periodogram(x, 0.5, opts);
    EXPECT_NEAR(dominant_frequency(spec).frequency, 0.1234, 2.0 * spec.frequencies[1]);
  }
}

TEST(Periodogram, Errors) {
  EXPECT_THROW(periodogram(std::vector<double>(7, 1.0), 1.0), std::invalid_argument);
  EXPECT_THROW(periodogram(std::vector<double>(16, 1.0), 0.0), std::invalid_argument);
  std::vector<double> bad(16, 1.0);
  bad[3] = NAN;
  EXPECT_THROW(periodogram(bad, 1.0), std::invalid_argument);
}

TEST(DominantFrequency, TiesGoToLowerFrequencyAndBandLimits) {
  Spectrum s{{0.0, 0.1, 0.2, 0.3, 0.4}, {9.0, 1.0, 3.0, 3.0, 2.0}};
  EXPECT_EQ(dominant_frequency(s).bin, 2u);
  EXPECT_EQ(dominant_frequency_in_band(s, 0.25, 0.45).bin, 3u);
  const auto span = half_max_span(s, dominant_frequency(s));
  EXPECT_DOUBLE_EQ(span.low, 0.2);
  EXPECT_DOUBLE_EQ(span.high, 0.4);
  EXPECT_THROW(dominant_frequency(Spectrum{{0.0}, {1.0}}), std::invalid_argument);
}

TEST(Histogram, NormalisedDensities) {
  test::Gen gen(44);
  std::vector<double> x(10000);
  for (auto& v : x) v = gen.normal();
  const auto h = histogram(x, 50);
  ASSERT_EQ(h.edges.size(), 51u);
  double area = 0.0;
  for (std::size_t i = 0; i < h.densities.size(); ++i) area += h.densities[i] * (h.edges[i + 1] - h.edges[i]);
  EXPECT_NEAR(area, 1.0, 1e-12);
  EXPECT_EQ(h.edges.front(), *std::min_element(x.begin(), x.end()));
  EXPECT_EQ(h.edges.back(), *std::max_element(x.begin(), x.end()));
  EXPECT_NEAR(h.mean(), mean(x), 0.05);
}

TEST(Histogram, ConstantSamplesGiveSingleBin) {
  const auto h = histogram(std::vector<double>(10, 2.5), 10);
  ASSERT_EQ(h.densities.size(), 1u);
  EXPECT_DOUBLE_EQ(h.edges[0], 2.0);
  EXPECT_DOUBLE_EQ(h.edges[1], 3.0);
  EXPECT_DOUBLE_EQ(h.densities[0], 1.0);
  EXPECT_DOUBLE_EQ(h.mean(), 2.5);
  EXPECT_THROW(histogram(std::vector<double>{1.0, 2.0}, 1), std::invalid_argument);
  EXPECT_THROW(histogram(std::vector<double>{}, 4), std::invalid_argument);
}

TEST(Pearson, Examples) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const std::vector<double> c{5, 4, 3, 2, 1};
  EXPECT_NEAR(pearson_correlation(a, b), 1.0, 1e-15);
  EXPECT_NEAR(pearson_correlation(a, c), -1.0, 1e-15);
  EXPECT_THROW(pearson_correlation(a, std::vector<double>(5, 1.0)), std::invalid_argument);
  EXPECT_THROW(pearson_correlation(a, std::vector<double>{1, 2}), std::invalid_argument);
}

}  // namespace
}  // namespace qbrain::analysis
