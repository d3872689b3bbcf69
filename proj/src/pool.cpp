#include "howmany/pool.hpp"

#include <cmath>
#include <string>

#include "howmany/distributions.hpp"
#include "howmany/error.hpp"

namespace howmany {

PooledAnalysis pool(std::span<const ImputationResult> results, double level) {
  const auto count = results.size();
  if (count < 2) {
    throw Error(ErrorKind::kInsufficientImputations,
                "pooling needs at least 2 results, got " + std::to_string(count));
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "level must lie in (0, 1)");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto& r = results[i];
    if (!std::isfinite(r.estimate) || !std::isfinite(r.within_variance) ||
        r.within_variance < 0.0) {
      throw Error(ErrorKind::kInvalidInput,
                  "result " + std::to_string(i + 1) +
                      " needs a finite estimate and a finite, non-negative within variance");
    }
  }

  const double m = static_cast<double>(count);
  double sum_estimates = 0.0;
  double sum_within = 0.0;
  for (const auto& r : results) {
    sum_estimates += r.estimate;
    sum_within += r.within_variance;
  }
  const double theta = sum_estimates / m;
  const double w_bar = sum_within / m;
  double ss = 0.0;
  for (const auto& r : results) {
    const double d = r.estimate - theta;
    ss += d * d;
  }
  const double b = ss / (m - 1.0);
  const double inflated_b = (1.0 + 1.0 / m) * b;
  const double v_total = w_bar + inflated_b;
  if (!(v_total > 0.0) || !std::isfinite(v_total)) {
    throw Error(ErrorKind::kInvalidInput, "total variance must be positive and finite");
  }

  PooledAnalysis out;
  out.m = static_cast<int>(count);
  out.theta = theta;
  out.w_bar = w_bar;
  out.b = b;
  out.v_total = v_total;
  out.se = std::sqrt(v_total);
  out.gamma_raw = inflated_b / v_total;
  out.gamma_hat = clamp_gamma(out.gamma_raw);
  out.df_hat = (m - 1.0) / (out.gamma_hat * out.gamma_hat);
  out.gamma_interval = gamma_ci(out.gamma_hat, out.m, level);
  const double t = t_quantile(0.5 * (1.0 + level), out.df_hat);
  out.theta_interval = {theta - t * out.se, theta + t * out.se};
  return out;
}

}  // namespace howmany
