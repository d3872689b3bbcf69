#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "howmany/imputer.hpp"
#include "howmany/planner.hpp"
#include "howmany/random.hpp"

namespace howmany {

// Stream layout under ExperimentConfig::seed: index 0 generates the
// dataset, index r + 1 drives replication r, and kReferenceStream drives the
// high-m reference pooling.
inline constexpr std::uint64_t kDatasetStream = 0;
inline constexpr std::uint64_t kReferenceStream = std::uint64_t{1} << 63;

struct ExperimentConfig {
  int n = 2000;
  double rho = 0.0;
  double missing_fraction = 0.5;
  int pilot_m = 5;
  ReplicabilityTarget target = ReplicabilityTarget::cv_of_se(0.05);
  double level = 0.95;
  int reps = 100;
  std::uint64_t seed = kDefaultSeed;
  int m_max = kDefaultMaxImputations;
  /// Worker threads for replications; 0 means hardware concurrency.
  unsigned threads = 1;

  /// Throws Error(kInvalidInput) when a field is out of its domain.
  void validate() const;
};

/// Standard bivariate normal (x, y) with correlation rho; each y deleted
/// independently with probability missing_fraction.
IncompleteBivariate gen_incomplete(int n, double rho, double missing_fraction, RandomStream& rng);

/// The fixed dataset an experiment conditions on.
IncompleteBivariate experiment_dataset(const ExperimentConfig& config);

/// Pools m imputations of `data` (the high-m stand-in for the imputation limit).
PooledAnalysis reference_pool(const IncompleteBivariate& data, int m, RandomStream& rng);

struct TwoStageRecord {
  int rep_index = 0;
  PooledAnalysis pilot;
  Recommendation recommendation;
  /// The pilot itself when it was sufficient, otherwise a fresh pooling of
  /// recommendation.m_required imputations.
  PooledAnalysis final;
};

/// One pass of pilot, recommendation and (if needed) final analysis.
TwoStageRecord run_two_stage(const IncompleteBivariate& data, const ExperimentConfig& config,
                             RandomStream& rng, int rep_index = 0);

/// config.reps passes over the same data, replication r on stream (seed, r + 1).
std::vector<TwoStageRecord> run_two_stage_reps(const IncompleteBivariate& data,
                                               const ExperimentConfig& config);

struct FieldSummary {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Mean, SD (divisor n - 1), min and max. Needs at least two values.
FieldSummary summarize_field(std::span<const double> values);

struct TwoStageSummary {
  int reps = 0;
  FieldSummary final_m;
  FieldSummary final_estimate;
  FieldSummary final_se;
  FieldSummary final_df;
  FieldSummary final_gamma;
  FieldSummary recommended_m;
  /// SD of the final SEs across replications.
  double achieved_sd_of_se = 0.0;
};

/// Throws Error(kInsufficientReplications) for fewer than two records.
TwoStageSummary summarize_two_stage(std::span<const TwoStageRecord> records);

/// Imputation variability of the pooled variance and SE with the observed
/// data held fixed.
struct CvCheck {
  int m = 0;
  int reps = 0;
  double cv_v = 0.0;
  double cv_se = 0.0;
  double mean_gamma_hat = 0.0;
  /// mean_gamma_hat * sqrt(2 / (m - 1)).
  double predicted_cv_v = 0.0;
};

/// `reps` independent poolings of m imputations each; pooling r uses stream
/// (base_seed, r).
std::vector<PooledAnalysis> repeated_pools(const IncompleteBivariate& data, int m, int reps,
                                           std::uint64_t base_seed, unsigned threads = 1);

CvCheck summarize_cv(std::span<const PooledAnalysis> pools);

/// Needs reps >= 100. Draws one value from `rng` as the base seed for
/// repeated_pools, so the result does not depend on `threads`.
CvCheck empirical_cv(const IncompleteBivariate& data, int m, int reps, RandomStream& rng,
                     unsigned threads = 1);

struct SearchOptions {
  int m_lo = 2;
  int m_hi = 1000;
  int reps = 400;
  unsigned threads = 1;
  /// Extra probes at a candidate answer; a failed probe resumes the search above it.
  int confirmations = 3;
};

/// Smallest m in [m_lo, m_hi] whose empirical CV of the pooled SE is at or
/// below cv_target. Gallops up from m_lo, then bisects. Throws
/// Error(kSearchExhausted) if m_hi does not reach the target.
int required_m(const IncompleteBivariate& data, double cv_target, const SearchOptions& search,
               RandomStream& rng);

struct DfReliability {
  double threshold = 0.0;
  double fraction = 0.0;
  /// df_hat of each pilot pooling, in replication order.
  std::vector<double> df_hats;
  std::vector<double> gamma_hats;
};

/// Fraction of pilot poolings (config.pilot_m imputations of the config's
/// dataset) whose df_hat exceeds the threshold. Needs reps >= 100.
DfReliability df_reliability(const ExperimentConfig& config, double df_threshold, int reps);

struct CurveRow {
  double gamma = 0.0;
  int m_quadratic = 0;
  int m_linear = 0;
  /// (gamma / cv)^2 / 2, the rule without its leading 1; 200 gamma^2 at cv = .05.
  double m_simplified = 0.0;
  std::optional<int> m_simulated;
  /// Measured gamma of the simulated dataset, when simulated.
  std::optional<double> gamma_measured;
};

struct CurveSimulation {
  int n = 2000;
  int reference_m = 200;
  SearchOptions search;
  std::uint64_t seed = kDefaultSeed;
};

/// Quadratic rule against the linear rule ceil(100 gamma).
std::vector<CurveRow> curve_data(std::span<const double> gammas, double cv_target);

/// As above, plus a required_m search on a dataset calibrated to each gamma.
std::vector<CurveRow> curve_data(std::span<const double> gammas, double cv_target,
                                 const CurveSimulation& simulation);

struct DfCvPoint {
  double cv = 0.0;
  double df = 0.0;
};

/// df = 1 / (2 cv^2) over the given CVs.
std::vector<DfCvPoint> df_cv_curve(std::span<const double> cvs);

}  // namespace howmany
