#include "howmany/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "howmany/error.hpp"
#include "howmany/montecarlo.hpp"
#include "howmany/parallel.hpp"

namespace howmany {

GammaCalibrator::GammaCalibrator() : GammaCalibrator(Options{}) {}

GammaCalibrator::GammaCalibrator(Options options) : options_(options) {}

std::vector<CalibrationPoint> GammaCalibrator::sweep(int n, double missing_fraction,
                                                     std::uint64_t seed) {
  const auto key = std::make_tuple(n, missing_fraction, seed);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  const int steps = static_cast<int>(std::floor(options_.rho_max / options_.rho_step + 1e-9));
  std::vector<CalibrationPoint> points(static_cast<std::size_t>(steps + 1));
  parallel_for(points.size(), options_.threads, [&](std::size_t j) {
    const double rho = options_.rho_step * static_cast<double>(j);
    double total = 0.0;
    for (int k = 0; k < options_.datasets; ++k) {
      RandomStream rng = make_stream(seed, (j << 16) | static_cast<std::uint64_t>(k));
      const IncompleteBivariate data = gen_incomplete(n, rho, missing_fraction, rng);
      total += reference_pool(data, options_.high_m, rng).gamma_hat;
    }
    points[j] = {rho, total / options_.datasets};
  });

  std::lock_guard lock(mutex_);
  cache_.emplace(key, points);
  return points;
}

double GammaCalibrator::rho_for(double target_gamma, int n, double missing_fraction,
                                std::uint64_t seed) {
  if (!(target_gamma > 0.0 && target_gamma < 1.0)) {
    throw Error(ErrorKind::kDomainError, "target gamma must lie in (0, 1)");
  }
  const auto points = sweep(n, missing_fraction, seed);
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    const auto& a = points[j];
    const auto& b = points[j + 1];
    const bool brackets = (a.mean_gamma >= target_gamma && target_gamma >= b.mean_gamma);
    if (!brackets) continue;
    if (a.mean_gamma == b.mean_gamma) return a.rho;
    const double t = (a.mean_gamma - target_gamma) / (a.mean_gamma - b.mean_gamma);
    return a.rho + t * (b.rho - a.rho);
  }
  throw Error(ErrorKind::kDomainError,
              "gamma " + std::to_string(target_gamma) + " is not reachable with missing fraction " +
                  std::to_string(missing_fraction));
}

double missing_fraction_for(double gamma) { return std::min(0.95, std::max(0.5, gamma + 0.1)); }

}  // namespace howmany
