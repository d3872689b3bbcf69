#pragma once

// Normal and Student-t distribution functions. Quantiles are found by
// inverting the CDF numerically rather than by closed-form approximations,
// so both share one root finder and carry the same accuracy (about 1e-12
// in x for moderate p).

namespace howmany {

/// Degrees of freedom at or above which the t distribution is treated as
/// standard normal.
inline constexpr double kNormalLimitDf = 1e6;

/// Regularized incomplete beta function I_x(a, b), for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

double normal_cdf(double x);
double normal_pdf(double x);

/// Student-t CDF. df >= kNormalLimitDf (including +inf) uses the normal limit.
double t_cdf(double x, double df);
double t_pdf(double x, double df);

/// Standard normal quantile. Throws Error(kInvalidQuantileRequest) unless p is in (0, 1).
double normal_quantile(double p);

/// Student-t quantile. Throws Error(kInvalidQuantileRequest) unless p is in
/// (0, 1) and df > 0.
double t_quantile(double p, double df);

}  // namespace howmany
