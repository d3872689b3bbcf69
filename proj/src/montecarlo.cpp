#include "howmany/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "howmany/calibration.hpp"
#include "howmany/error.hpp"
#include "howmany/parallel.hpp"

namespace howmany {
namespace {

double mean_of(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double cv_of(std::span<const double> v) {
  const FieldSummary s = summarize_field(v);
  return s.sd / s.mean;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); };
  if (n < 4) fail("n must be at least 4");
  if (!(rho >= 0.0 && rho < 1.0)) fail("rho must lie in [0, 1)");
  if (!(missing_fraction > 0.0 && missing_fraction < 1.0)) fail("missing fraction must lie in (0, 1)");
  if (static_cast<double>(n) * (1.0 - missing_fraction) < 4.0) {
    fail("n * (1 - missing fraction) must be at least 4");
  }
  if (pilot_m < 2) fail("pilot m must be at least 2");
  if (!(level > 0.0 && level < 1.0)) fail("level must lie in (0, 1)");
  if (reps < 1) fail("reps must be at least 1");
  if (m_max < 2) fail("m_max must be at least 2");
  target.validate();
}

IncompleteBivariate gen_incomplete(int n, double rho, double missing_fraction, RandomStream& rng) {
  if (n < 4) throw Error(ErrorKind::kDomainError, "n must be at least 4");
  if (!(rho > -1.0 && rho < 1.0)) throw Error(ErrorKind::kDomainError, "|rho| must be < 1");
  if (!(missing_fraction >= 0.0 && missing_fraction < 1.0)) {
    throw Error(ErrorKind::kDomainError, "missing fraction must lie in [0, 1)");
  }
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  const double residual_sd = std::sqrt(1.0 - rho * rho);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<std::optional<double>> y(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z1 = normal(rng);
    const double z2 = normal(rng);
    x[i] = z1;
    const double yi = rho * z1 + residual_sd * z2;
    if (uniform(rng) >= missing_fraction) y[i] = yi;
  }
  return IncompleteBivariate(std::move(x), std::move(y));
}

IncompleteBivariate experiment_dataset(const ExperimentConfig& config) {
  config.validate();
  RandomStream rng = make_stream(config.seed, kDatasetStream);
  return gen_incomplete(config.n, config.rho, config.missing_fraction, rng);
}

PooledAnalysis reference_pool(const IncompleteBivariate& data, int m, RandomStream& rng) {
  const auto results = impute_and_analyze_mean(data, m, rng);
  return pool(results);
}

TwoStageRecord run_two_stage(const IncompleteBivariate& data, const ExperimentConfig& config,
                             RandomStream& rng, int rep_index) {
  TwoStageRecord record;
  record.rep_index = rep_index;
  record.pilot = pool(impute_and_analyze_mean(data, config.pilot_m, rng), config.level);
  record.recommendation =
      recommend(record.pilot, config.target, PlanOptions{config.level, config.m_max});
  if (record.recommendation.pilot_sufficient) {
    record.final = record.pilot;
  } else {
    record.final = pool(
        impute_and_analyze_mean(data, record.recommendation.m_required, rng), config.level);
  }
  return record;
}

std::vector<TwoStageRecord> run_two_stage_reps(const IncompleteBivariate& data,
                                               const ExperimentConfig& config) {
  config.validate();
  std::vector<TwoStageRecord> records(static_cast<std::size_t>(config.reps));
  parallel_for(records.size(), config.threads, [&](std::size_t r) {
    RandomStream rng = make_stream(config.seed, r + 1);
    records[r] = run_two_stage(data, config, rng, static_cast<int>(r));
  });
  return records;
}

FieldSummary summarize_field(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorKind::kInsufficientReplications, "a summary needs at least 2 values");
  }
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1)), *lo, *hi};
}

TwoStageSummary summarize_two_stage(std::span<const TwoStageRecord> records) {
  if (records.size() < 2) {
    throw Error(ErrorKind::kInsufficientReplications,
                "need at least 2 records, got " + std::to_string(records.size()));
  }
  auto column = [&](auto get) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(static_cast<double>(get(r)));
    return summarize_field(out);
  };
  TwoStageSummary s;
  s.reps = static_cast<int>(records.size());
  s.final_m = column([](const TwoStageRecord& r) { return r.final.m; });
  s.final_estimate = column([](const TwoStageRecord& r) { return r.final.theta; });
  s.final_se = column([](const TwoStageRecord& r) { return r.final.se; });
  s.final_df = column([](const TwoStageRecord& r) { return r.final.df_hat; });
  s.final_gamma = column([](const TwoStageRecord& r) { return r.final.gamma_hat; });
  s.recommended_m = column([](const TwoStageRecord& r) { return r.recommendation.m_required; });
  s.achieved_sd_of_se = s.final_se.sd;
  return s;
}

std::vector<PooledAnalysis> repeated_pools(const IncompleteBivariate& data, int m, int reps,
                                           std::uint64_t base_seed, unsigned threads) {
  if (reps < 1) throw Error(ErrorKind::kInsufficientReplications, "reps must be at least 1");
  std::vector<PooledAnalysis> pools(static_cast<std::size_t>(reps));
  parallel_for(pools.size(), threads, [&](std::size_t r) {
    RandomStream rng = make_stream(base_seed, r);
    pools[r] = pool(impute_and_analyze_mean(data, m, rng));
  });
  return pools;
}

CvCheck summarize_cv(std::span<const PooledAnalysis> pools) {
  if (pools.size() < 2) {
    throw Error(ErrorKind::kInsufficientReplications, "a CV needs at least 2 poolings");
  }
  std::vector<double> v;
  std::vector<double> se;
  std::vector<double> gamma;
  for (const auto& p : pools) {
    v.push_back(p.v_total);
    se.push_back(p.se);
    gamma.push_back(p.gamma_hat);
  }
  CvCheck out;
  out.m = pools.front().m;
  out.reps = static_cast<int>(pools.size());
  out.cv_v = cv_of(v);
  out.cv_se = cv_of(se);
  out.mean_gamma_hat = mean_of(gamma);
  out.predicted_cv_v = out.mean_gamma_hat * std::sqrt(2.0 / (out.m - 1));
  return out;
}

CvCheck empirical_cv(const IncompleteBivariate& data, int m, int reps, RandomStream& rng,
                     unsigned threads) {
  if (reps < 100) {
    throw Error(ErrorKind::kInsufficientReplications,
                "empirical CV needs reps >= 100, got " + std::to_string(reps));
  }
  const std::uint64_t base = rng();
  const auto pools = repeated_pools(data, m, reps, base, threads);
  return summarize_cv(pools);
}

int required_m(const IncompleteBivariate& data, double cv_target, const SearchOptions& search,
               RandomStream& rng) {
  if (!(cv_target > 0.0 && cv_target < 1.0)) {
    throw Error(ErrorKind::kDomainError, "cv target must lie in (0, 1)");
  }
  if (search.m_lo < 2 || search.m_lo >= search.m_hi) {
    throw Error(ErrorKind::kDomainError, "search range needs 2 <= m_lo < m_hi");
  }
  const std::uint64_t root = rng();
  // Within one attempt every probe shares a base seed, so poolings at
  // different m share their leading imputations and the probed CV is close
  // to monotone in m.
  auto reaches = [&](int m, int attempt) {
    const std::uint64_t base = splitmix64(root + static_cast<std::uint64_t>(attempt));
    const auto pools = repeated_pools(data, m, search.reps, base, search.threads);
    return summarize_cv(pools).cv_se <= cv_target;
  };
  auto search_from = [&](int start, int attempt) {
    if (start > search.m_hi) {
      throw Error(ErrorKind::kSearchExhausted,
                  "no m up to " + std::to_string(search.m_hi) + " reaches the target");
    }
    if (reaches(start, attempt)) return start;
    int lo = start;
    int hi = start;
    for (;;) {
      if (hi >= search.m_hi) {
        throw Error(ErrorKind::kSearchExhausted,
                    "no m up to " + std::to_string(search.m_hi) + " reaches the target");
      }
      lo = hi;
      hi = std::min(search.m_hi, std::max(hi + 1, 2 * hi));
      if (reaches(hi, attempt)) break;
    }
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (reaches(mid, attempt)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };

  int attempt = 0;
  int candidate = search_from(search.m_lo, attempt);
  for (int c = 0; c < search.confirmations; ++c) {
    ++attempt;
    if (reaches(candidate, attempt)) return candidate;
    candidate = search_from(candidate + 1, attempt);
  }
  return candidate;
}

DfReliability df_reliability(const ExperimentConfig& config, double df_threshold, int reps) {
  if (reps < 100) {
    throw Error(ErrorKind::kInsufficientReplications,
                "df reliability needs reps >= 100, got " + std::to_string(reps));
  }
  const IncompleteBivariate data = experiment_dataset(config);
  DfReliability out;
  out.threshold = df_threshold;
  out.df_hats.resize(static_cast<std::size_t>(reps));
  out.gamma_hats.resize(static_cast<std::size_t>(reps));
  parallel_for(out.df_hats.size(), config.threads, [&](std::size_t r) {
    RandomStream rng = make_stream(config.seed, r + 1);
    const PooledAnalysis pilot =
        pool(impute_and_analyze_mean(data, config.pilot_m, rng), config.level);
    out.df_hats[r] = pilot.df_hat;
    out.gamma_hats[r] = pilot.gamma_hat;
  });
  const auto above = std::count_if(out.df_hats.begin(), out.df_hats.end(),
                                   [&](double df) { return df > df_threshold; });
  out.fraction = static_cast<double>(above) / static_cast<double>(reps);
  return out;
}

std::vector<CurveRow> curve_data(std::span<const double> gammas, double cv_target) {
  std::vector<CurveRow> rows;
  rows.reserve(gammas.size());
  for (double g : gammas) {
    CurveRow row;
    row.gamma = g;
    row.m_quadratic = m_for_se_cv(g, cv_target);
    // The linear rule is a count; 100 * g carries round-off (100 * .29 > 29).
    row.m_linear = static_cast<int>(std::ceil(100.0 * g - 1e-9));
    row.m_simplified = 0.5 * (g / cv_target) * (g / cv_target);
    rows.push_back(row);
  }
  return rows;
}

std::vector<CurveRow> curve_data(std::span<const double> gammas, double cv_target,
                                 const CurveSimulation& simulation) {
  auto rows = curve_data(gammas, cv_target);
  GammaCalibrator calibrator(GammaCalibrator::Options{.threads = simulation.search.threads});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double g = rows[i].gamma;
    const double p = missing_fraction_for(g);
    const double rho = calibrator.rho_for(g, simulation.n, p, simulation.seed);
    RandomStream data_rng = make_stream(simulation.seed, kDatasetStream + i);
    const IncompleteBivariate data = gen_incomplete(simulation.n, rho, p, data_rng);
    RandomStream ref_rng = make_stream(simulation.seed, kReferenceStream + i);
    rows[i].gamma_measured = reference_pool(data, simulation.reference_m, ref_rng).gamma_hat;
    RandomStream search_rng = make_stream(simulation.seed, (kReferenceStream >> 1) + i);
    rows[i].m_simulated = required_m(data, cv_target, simulation.search, search_rng);
  }
  return rows;
}

std::vector<DfCvPoint> df_cv_curve(std::span<const double> cvs) {
  std::vector<DfCvPoint> out;
  out.reserve(cvs.size());
  for (double cv : cvs) out.push_back({cv, cv_to_df(cv)});
  return out;
}

}  // namespace howmany
