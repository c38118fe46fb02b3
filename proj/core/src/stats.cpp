#include "wvc/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wvc::stats {

SampleSummary summarise(std::span<const double> xs) {
  SampleSummary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  return s;
}

namespace {

// Continued fraction for I_x(a, b); converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a and b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("student_t_two_sided_p: df must be positive");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  // x = df / (df + t^2) written to avoid cancellation for large |t|.
  const double x = 1.0 / (1.0 + (t / df) * t);
  return incomplete_beta(df / 2.0, 0.5, x);
}

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t: each sample needs at least two values");
  const SampleSummary sa = summarise(a);
  const SampleSummary sb = summarise(b);
  const double va = sa.sd * sa.sd / static_cast<double>(sa.n);
  const double vb = sb.sd * sb.sd / static_cast<double>(sb.n);
  WelchResult r;
  const double diff = sa.mean - sb.mean;
  if (va + vb == 0.0) {
    r.degenerate_variance = true;
    r.df = static_cast<double>(sa.n + sb.n - 2);
    if (diff == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    return r;
  }
  r.t = diff / std::sqrt(va + vb);
  const double denom = va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1);
  r.df = (va + vb) * (va + vb) / denom;
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

std::string_view significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "n.s.";
}

}  // namespace wvc::stats
