#include "howmany/fmi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "howmany/distributions.hpp"
#include "howmany/error.hpp"

namespace howmany {

double clamp_gamma(double gamma) noexcept {
  return std::clamp(gamma, kGammaEpsilon, 1.0 - kGammaEpsilon);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::kDomainError, "logit requires p in (0, 1), got " + std::to_string(p));
  }
  return std::log(p / (1.0 - p));
}

double inv_logit(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

GammaInterval gamma_ci(double gamma_hat, int m, double level) {
  if (m < 2) {
    throw Error(ErrorKind::kInsufficientImputations,
                "a gamma interval needs m >= 2, got " + std::to_string(m));
  }
  if (!(gamma_hat >= 0.0 && gamma_hat <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "gamma_hat must lie in [0, 1]");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::kDomainError, "level must lie in (0, 1)");
  }
  const double point = clamp_gamma(gamma_hat);
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double half_width = z * std::sqrt(2.0 / m);
  const double centre = logit(point);
  return GammaInterval{
      .point = point,
      .lower = inv_logit(centre - half_width),
      .upper = inv_logit(centre + half_width),
      .level = level,
      .m = m,
  };
}

std::vector<GammaInterval> table1(std::span<const double> gammas, std::span<const int> ms,
                                  double level) {
  std::vector<GammaInterval> out;
  out.reserve(gammas.size() * ms.size());
  for (double g : gammas) {
    for (int m : ms) out.push_back(gamma_ci(g, m, level));
  }
  return out;
}

double round_half_away(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The nudge keeps values like 0.125 (stored as 0.12499999...) rounding up.
  const double scaled = std::fabs(x) * scale;
  const double rounded = std::floor(scaled + 0.5 + 1e-9);
  return std::copysign(rounded / scale, x);
}

}  // namespace howmany
