#include "howmany/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "howmany/error.hpp"

namespace howmany {
namespace {

struct Count {
  int value;
  bool capped;
};

// Ceiling of a real-valued rule. Values within 1e-9 (relative) of an integer
// snap to it, so algebraically equal rules agree despite rounding in their
// last bits.
Count to_count(double real, int m_max) {
  if (m_max < 2) throw Error(ErrorKind::kDomainError, "m_max must be at least 2");
  if (std::isnan(real)) throw Error(ErrorKind::kDomainError, "rule evaluated to NaN");
  if (real > static_cast<double>(m_max)) return {m_max, true};
  const double nearest = std::round(real);
  const double snapped =
      std::fabs(real - nearest) <= 1e-9 * std::max(1.0, std::fabs(real)) ? nearest
                                                                         : std::ceil(real);
  if (snapped > m_max) return {m_max, true};
  return {std::max(2, static_cast<int>(snapped)), false};
}

void require_unit_open(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(ErrorKind::kDomainError, std::string(name) + " must lie in (0, 1)");
  }
}

Count se_cv_rule(double gamma, double cv, int m_max) {
  const double ratio = gamma / cv;
  return to_count(1.0 + 0.5 * ratio * ratio, m_max);
}

}  // namespace

void ReplicabilityTarget::validate() const {
  const bool ok = [&] {
    switch (kind) {
      case TargetKind::kSdOfSe: return value > 0.0 && std::isfinite(value);
      case TargetKind::kCvOfSe:
      case TargetKind::kCvOfVariance: return value > 0.0 && value < 1.0;
      case TargetKind::kDf: return value >= 1.0 && std::isfinite(value);
    }
    return false;
  }();
  if (!ok) {
    throw Error(ErrorKind::kInvalidTarget,
                "target value " + std::to_string(value) + " is outside its domain");
  }
}

int m_for_se_cv(double gamma, double cv, int m_max) {
  require_unit_open(gamma, "gamma");
  require_unit_open(cv, "cv");
  return se_cv_rule(gamma, cv, m_max).value;
}

int m_for_var_cv(double gamma, double cv_v, int m_max) {
  require_unit_open(gamma, "gamma");
  require_unit_open(cv_v, "cv_v");
  const double ratio = gamma / cv_v;
  return to_count(1.0 + 2.0 * ratio * ratio, m_max).value;
}

int m_for_df(double gamma, double df, int m_max) {
  require_unit_open(gamma, "gamma");
  if (!(df >= 1.0) || !std::isfinite(df)) throw Error(ErrorKind::kDomainError, "df must be >= 1");
  return to_count(1.0 + df * gamma * gamma, m_max).value;
}

double cv_to_df(double cv) {
  require_unit_open(cv, "cv");
  return 1.0 / (2.0 * cv * cv);
}

double df_to_cv(double df) {
  if (!(df > 0.0) || !std::isfinite(df)) throw Error(ErrorKind::kDomainError, "df must be > 0");
  return std::sqrt(1.0 / (2.0 * df));
}

double cv_df_convert(double x, CvDfDirection direction) {
  return direction == CvDfDirection::kCvToDf ? cv_to_df(x) : df_to_cv(x);
}

VarianceInflation variance_inflation(double gamma, int m) {
  require_unit_open(gamma, "gamma");
  if (m < 1) throw Error(ErrorKind::kDomainError, "m must be at least 1");
  const double factor = 1.0 + gamma / m;
  return {factor, std::sqrt(factor)};
}

double cv_for_sd_goal(double sd_goal, double se_pilot) {
  if (!(sd_goal > 0.0) || !(se_pilot > 0.0) || !std::isfinite(sd_goal) ||
      !std::isfinite(se_pilot)) {
    throw Error(ErrorKind::kInvalidTarget, "SD goal and pilot SE must be positive and finite");
  }
  return sd_goal / se_pilot;
}

Recommendation recommend(const PilotSummary& pilot, const ReplicabilityTarget& target,
                         const PlanOptions& options) {
  target.validate();
  const GammaInterval interval = gamma_ci(pilot.gamma_hat, pilot.m, options.level);

  double cv = 0.0;
  switch (target.kind) {
    case TargetKind::kSdOfSe:
      if (!(pilot.se > 0.0)) throw Error(ErrorKind::kInvalidTarget, "an SD goal needs a pilot SE");
      cv = cv_for_sd_goal(target.value, pilot.se);
      break;
    case TargetKind::kCvOfSe: cv = target.value; break;
    case TargetKind::kCvOfVariance: cv = 0.5 * target.value; break;
    case TargetKind::kDf: cv = df_to_cv(target.value); break;
  }

  // An SD goal larger than the pilot SE gives cv >= 1; the rule still applies.
  const Count count = se_cv_rule(interval.upper, cv, options.m_max);
  Recommendation rec;
  rec.m_required = count.value;
  rec.capped = count.capped;
  rec.gamma_point = interval.point;
  rec.gamma_used = interval.upper;
  rec.cv_target = cv;
  rec.df_implied = 1.0 / (2.0 * cv * cv);
  rec.pilot_m = pilot.m;
  rec.pilot_sufficient = pilot.m >= rec.m_required;
  return rec;
}

Recommendation recommend(const PooledAnalysis& pilot, const ReplicabilityTarget& target,
                         const PlanOptions& options) {
  return recommend(PilotSummary::from(pilot), target, options);
}

}  // namespace howmany
