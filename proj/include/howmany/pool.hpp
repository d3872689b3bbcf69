#pragma once

#include <span>

#include "howmany/fmi.hpp"

namespace howmany {

/// One completed-data analysis: a point estimate and its squared SE.
struct ImputationResult {
  double estimate = 0.0;
  double within_variance = 0.0;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Rubin's-rules combination of m completed-data analyses.
///
/// v_total = w_bar + (1 + 1/m) * b, se = sqrt(v_total). gamma_raw is the
/// unclamped (1 + 1/m) * b / v_total; gamma_hat is the same value clamped to
/// [kGammaEpsilon, 1 - kGammaEpsilon], and df_hat = (m - 1) / gamma_hat^2.
struct PooledAnalysis {
  int m = 0;
  double theta = 0.0;
  double w_bar = 0.0;
  double b = 0.0;
  double v_total = 0.0;
  double se = 0.0;
  double gamma_raw = 0.0;
  double gamma_hat = 0.0;
  double df_hat = 0.0;
  GammaInterval gamma_interval;
  /// theta -/+ t_{(1+level)/2, df_hat} * se.
  Interval theta_interval;
};

/// Pools m >= 2 results at the given confidence level.
///
/// Throws Error(kInsufficientImputations) for fewer than two results and
/// Error(kInvalidInput) for non-finite values, negative within variances, or
/// a zero total variance.
PooledAnalysis pool(std::span<const ImputationResult> results, double level = 0.95);

}  // namespace howmany
