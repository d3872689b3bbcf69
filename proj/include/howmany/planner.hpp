#pragma once

#include "howmany/pool.hpp"

namespace howmany {

/// Default ceiling on any recommended number of imputations.
inline constexpr int kDefaultMaxImputations = 10000;

enum class TargetKind { kSdOfSe, kCvOfSe, kCvOfVariance, kDf };

/// A replicability goal for the pooled SE.
///
/// kSdOfSe is in parameter units and is turned into a CV with the pilot SE.
/// The two CV kinds must lie in (0, 1); a df goal must be at least 1.
struct ReplicabilityTarget {
  TargetKind kind = TargetKind::kCvOfSe;
  double value = 0.05;

  static ReplicabilityTarget sd_of_se(double sd) { return {TargetKind::kSdOfSe, sd}; }
  static ReplicabilityTarget cv_of_se(double cv) { return {TargetKind::kCvOfSe, cv}; }
  static ReplicabilityTarget cv_of_variance(double cv) { return {TargetKind::kCvOfVariance, cv}; }
  static ReplicabilityTarget df(double df) { return {TargetKind::kDf, df}; }

  /// Throws Error(kInvalidTarget) if value is outside the kind's domain.
  void validate() const;
};

/// Quadratic rule for the CV of the pooled SE: ceil(1 + (gamma / cv)^2 / 2),
/// clamped to [2, m_max].
int m_for_se_cv(double gamma, double cv, int m_max = kDefaultMaxImputations);

/// Quadratic rule for the CV of the pooled variance: ceil(1 + 2 (gamma / cv_v)^2).
int m_for_var_cv(double gamma, double cv_v, int m_max = kDefaultMaxImputations);

/// Quadratic rule for a target df: ceil(1 + df * gamma^2).
int m_for_df(double gamma, double df, int m_max = kDefaultMaxImputations);

enum class CvDfDirection { kCvToDf, kDfToCv };

/// df = 1 / (2 cv^2) and its inverse cv = sqrt(1 / (2 df)).
double cv_to_df(double cv);
double df_to_cv(double df);
double cv_df_convert(double x, CvDfDirection direction);

/// How much larger the variance and SE of the pooled point estimate are with
/// m imputations than with infinitely many.
struct VarianceInflation {
  double variance_factor = 1.0;
  double se_factor = 1.0;
};
VarianceInflation variance_inflation(double gamma, int m);

/// Plug-in CV target: the SD goal divided by the pilot SE.
double cv_for_sd_goal(double sd_goal, double se_pilot);

/// The pieces of a pilot pooling that planning needs.
struct PilotSummary {
  int m = 0;
  double gamma_hat = 0.0;
  double se = 0.0;
  double estimate = 0.0;

  static PilotSummary from(const PooledAnalysis& pooled) {
    return {pooled.m, pooled.gamma_hat, pooled.se, pooled.theta};
  }
};

struct PlanOptions {
  double level = 0.95;
  int m_max = kDefaultMaxImputations;
};

struct Recommendation {
  int m_required = 2;
  /// Pilot point estimate of gamma (clamped).
  double gamma_point = 0.0;
  /// Upper confidence bound for gamma; the value plugged into the rule.
  double gamma_used = 0.0;
  double cv_target = 0.0;
  double df_implied = 0.0;
  bool pilot_sufficient = false;
  int pilot_m = 0;
  /// The unclamped rule exceeded m_max.
  bool capped = false;
};

/// Second stage of the two-stage procedure: plug the upper confidence bound
/// for gamma from the pilot into the SE-CV rule.
Recommendation recommend(const PilotSummary& pilot, const ReplicabilityTarget& target,
                         const PlanOptions& options = {});
Recommendation recommend(const PooledAnalysis& pilot, const ReplicabilityTarget& target,
                         const PlanOptions& options = {});

}  // namespace howmany
