#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace howmany {

struct CalibrationPoint {
  double rho = 0.0;
  double mean_gamma = 0.0;
};

/// Maps the generator's correlation rho to the mean pooled gamma_hat it
/// produces at a fixed missing fraction, by simulation. Sweeps are cached per
/// (n, missing_fraction, seed); the cache is guarded, so one calibrator may be
/// shared between threads.
class GammaCalibrator {
 public:
  struct Options {
    int high_m = 100;
    int datasets = 4;
    double rho_step = 0.05;
    double rho_max = 0.95;
    unsigned threads = 1;
  };

  GammaCalibrator();
  explicit GammaCalibrator(Options options);

  /// Mean gamma_hat on the rho grid, decreasing in rho up to Monte Carlo noise.
  std::vector<CalibrationPoint> sweep(int n, double missing_fraction, std::uint64_t seed);

  /// rho whose mean gamma_hat matches target_gamma, by linear interpolation
  /// on the sweep. Throws Error(kDomainError) when the target lies outside
  /// the swept range.
  double rho_for(double target_gamma, int n, double missing_fraction, std::uint64_t seed);

 private:
  Options options_;
  std::mutex mutex_;
  std::map<std::tuple<int, double, std::uint64_t>, std::vector<CalibrationPoint>> cache_;
};

/// A missing fraction leaving headroom above gamma: max(.5, gamma + .1), at most .95.
double missing_fraction_for(double gamma);

}  // namespace howmany
