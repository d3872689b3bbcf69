#include "howmany/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "howmany/error.hpp"

namespace howmany {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;

// Continued fraction for I_x(a, b), modified Lentz. Converges quickly for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers can pass a complement
// that was computed without cancellation.
double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

bool use_normal_limit(double df) { return df >= kNormalLimitDf; }

double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// P(T > x) for x >= 0.
double t_upper_tail(double x, double df) {
  if (use_normal_limit(df)) return normal_upper_tail(x);
  const double x2 = x * x;
  const double z = df / (df + x2);
  const double one_minus_z = x2 / (df + x2);
  return 0.5 * incomplete_beta(0.5 * df, 0.5, z, one_minus_z);
}

// Smallest x >= 0 with upper_tail(x) = q, for q in (0, 0.5]. Safeguarded
// Newton on log(tail), falling back to bisection whenever a step leaves the
// current bracket.
template <class Tail, class Density>
double solve_upper_tail(double q, Tail tail, Density density) {
  double lo = 0.0;
  double hi = 1.0;
  while (tail(hi) > q && hi < 1e300) {
    lo = hi;
    hi *= 2.0;
  }
  const double log_q = std::log(q);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double t = tail(x);
    if (t > q) {
      lo = x;
    } else {
      hi = x;
    }
    const double f = density(x);
    double next = 0.5 * (lo + hi);
    if (t > 0.0 && f > 0.0) {
      const double newton = x + (std::log(t) - log_q) * t / f;
      if (newton > lo && newton < hi) next = newton;
    }
    if (std::fabs(next - x) <= 1e-15 * std::max(1.0, std::fabs(x)) || hi - lo <= 1e-15 * hi) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "incomplete beta requires a, b > 0 and x in [0, 1]");
  }
  return incomplete_beta(a, b, x, 1.0 - x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double t_cdf(double x, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::kDomainError, "t distribution requires df > 0");
  if (std::isnan(x)) return x;
  if (use_normal_limit(df)) return normal_cdf(x);
  return x >= 0.0 ? 1.0 - t_upper_tail(x, df) : t_upper_tail(-x, df);
}

double t_pdf(double x, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::kDomainError, "t distribution requires df > 0");
  if (use_normal_limit(df)) return normal_pdf(x);
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

double normal_quantile(double p) { return t_quantile(p, std::numeric_limits<double>::infinity()); }

double t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::kInvalidQuantileRequest, "p must lie in (0, 1)");
  }
  if (!(df > 0.0)) {
    throw Error(ErrorKind::kInvalidQuantileRequest, "df must be positive");
  }
  if (p == 0.5) return 0.0;
  // 1 - p is exact for p in [0.5, 1).
  const double q = p > 0.5 ? 1.0 - p : p;
  auto tail = [df](double x) { return t_upper_tail(x, df); };
  auto density = [df](double x) { return t_pdf(x, df); };
  const double x = solve_upper_tail(q, tail, density);
  return p > 0.5 ? x : -x;
}

}  // namespace howmany
