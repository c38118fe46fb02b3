#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace wvc::stats {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // Bessel-corrected; 0 when n < 2
};

SampleSummary summarise(std::span<const double> xs);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom (df may be fractional).
double student_t_two_sided_p(double t, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  // Both samples have zero variance; t is 0 or +-inf and df is nominal.
  bool degenerate_variance = false;
};

/// Two-sided Welch's unequal-variance t-test of mean(a) - mean(b).
/// Requires at least two observations per sample (std::invalid_argument otherwise).
WelchResult welch_t(std::span<const double> a, std::span<const double> b);

/// "***", "**", "*" at p < 0.001, 0.01, 0.05; "n.s." otherwise.
std::string_view significance_stars(double p);

}  // namespace wvc::stats
