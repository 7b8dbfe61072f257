#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracstoch {

/// Monte Carlo estimate; std_error is the sample standard deviation over √n.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;

  bool within(double expected, double n_stderr, double abs_floor = 0.0) const;
};

/// Two-pass mean and standard error, summed in index order.
McEstimate estimate(std::span<const double> samples);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail probability Q(λ) = 2 Σ (−1)^{k−1} e^{−2k²λ²}.
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the usual effective-size
/// correction. Ties across samples are handled by advancing both sides.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace fracstoch
