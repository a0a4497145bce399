#include "polytree/student_t.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 20000;
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
  for (int m = 1; m <= kMaxIter; ++m) {
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
  throw InternalError("incomplete beta continued fraction did not converge");
}

// Upper tail P(T > t) for t >= 0.
double upper_tail(double t, double df) { return 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t)); }

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_pdf(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
  if (std::isnan(t)) return t;
  const double tail = upper_tail(std::abs(t), df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double prob, double df) {
  if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
  if (!(prob > 0.0 && prob < 1.0)) throw InvalidArgument("quantile probability must lie in (0, 1)");
  if (prob == 0.5) return 0.0;
  if (prob < 0.5) return -student_t_quantile(1.0 - prob, df);

  const double target = 1.0 - prob;  // upper-tail mass
  double lo = 0.0;
  double hi = 1.0;
  while (upper_tail(hi, df) > target) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw InternalError("t quantile bracket diverged");
  }

  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double g = upper_tail(t, df) - target;
    if (g > 0.0)
      lo = t;
    else
      hi = t;
    // d/dt of the upper tail is -pdf(t).
    double next = t + g / student_t_pdf(t, df);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-12 || hi - lo <= 1e-12) return next;
    t = next;
  }
  throw InternalError("t quantile iteration did not converge");
}

}  // namespace polytree
