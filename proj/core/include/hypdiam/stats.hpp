#pragma once

// Small statistics helpers for the Monte Carlo checks.

#include <cstdint>
#include <vector>

namespace hypdiam {

/// Pearson statistic against a common expected count per cell.
double chi_square_statistic(const std::vector<std::int64_t>& observed, const std::vector<double>& expected);

/// P(X >= stat) for X chi-square with `dof` degrees of freedom.
double chi_square_pvalue(double stat, double dof);

/// Critical value c with P(X >= c) = alpha.
double chi_square_critical(double alpha, double dof);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double confidence);

/// Median of a nonempty sample (mean of the two middle values for even size).
double median(std::vector<double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y ~ slope x + intercept; needs two distinct x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct KsResult {
  double statistic = 0.0;
  double pvalue = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace hypdiam
