#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace losdof {

/// Pairwise (cascade) summation. Result depends only on the order of `values`.
inline double pairwise_sum(std::span<const double> values)
{
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct SampleSummary {
  double mean = 0.0;
  double std_dev = 0.0;    ///< unbiased (n - 1) estimator; 0 for a single sample
  double std_error = 0.0;  ///< std_dev / sqrt(n)
};

inline SampleSummary summarize(std::span<const double> samples)
{
  SampleSummary s;
  if (samples.empty()) return s;
  const double n = static_cast<double>(samples.size());
  s.mean = pairwise_sum(samples) / n;
  if (samples.size() < 2) return s;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) sq[i] = (samples[i] - s.mean) * (samples[i] - s.mean);
  s.std_dev = std::sqrt(pairwise_sum(sq) / (n - 1.0));
  s.std_error = s.std_dev / std::sqrt(n);
  return s;
}

/// Ordinary least-squares slope of y against x; nullopt with < 2 distinct x.
inline std::optional<double> least_squares_slope(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double xbar = pairwise_sum(x) / static_cast<double>(x.size());
  const double ybar = pairwise_sum(y) / static_cast<double>(y.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - xbar) * (y[i] - ybar);
    sxx += (x[i] - xbar) * (x[i] - xbar);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace losdof
