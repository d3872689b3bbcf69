#pragma once

#include <span>
#include <vector>

namespace howmany {

/// Lower clamp for an estimated fraction of missing information; the upper
/// clamp is 1 - kGammaEpsilon. Keeps logit finite when B = 0 or W = 0.
inline constexpr double kGammaEpsilon = 1e-6;

/// Confidence interval for the fraction of missing information, built on
/// the logit scale as logit(point) -/+ z * sqrt(2 / m).
struct GammaInterval {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  int m = 0;
};

double clamp_gamma(double gamma) noexcept;

/// ln(p / (1 - p)). Throws Error(kDomainError) unless p is in (0, 1).
double logit(double p);
double inv_logit(double x) noexcept;

/// Logit-scale interval for gamma. gamma_hat in [0, 1] is clamped to
/// [eps, 1 - eps] first; m must be at least 2.
GammaInterval gamma_ci(double gamma_hat, int m, double level = 0.95);

/// One interval per (gamma, m) pair, gammas in the outer loop.
std::vector<GammaInterval> table1(std::span<const double> gammas, std::span<const int> ms,
                                  double level = 0.95);

/// The grid of the standard reference table.
inline constexpr double kTable1Gammas[] = {0.1, 0.3, 0.5, 0.7, 0.9};
inline constexpr int kTable1Ms[] = {5, 10, 15, 20};

/// Half-away-from-zero rounding to a fixed number of decimals.
double round_half_away(double x, int decimals);

}  // namespace howmany
