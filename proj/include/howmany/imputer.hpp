#pragma once

#include <optional>
#include <vector>

#include "howmany/pool.hpp"
#include "howmany/random.hpp"

namespace howmany {

/// A fully observed auxiliary x and an outcome y with absent values.
/// Construction enforces equal lengths, finite values and at least four
/// observed outcomes.
class IncompleteBivariate {
 public:
  IncompleteBivariate(std::vector<double> x, std::vector<std::optional<double>> y);

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<std::optional<double>>& y() const noexcept { return y_; }
  std::size_t n() const noexcept { return x_.size(); }
  std::size_t n_obs() const noexcept { return n_obs_; }

 private:
  std::vector<double> x_;
  std::vector<std::optional<double>> y_;
  std::size_t n_obs_ = 0;
};

/// Regression parameters drawn from their posterior given the complete cases.
struct PosteriorDraw {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double sigma = 0.0;
};

struct CompletedDataset {
  std::vector<double> x;
  std::vector<double> y;
  /// true where y was filled in.
  std::vector<bool> imputed;
};

/// Draws (beta0, beta1, sigma) from the posterior of the complete-case
/// regression of y on x under the standard noninformative prior:
///   sigma^2 = RSS / chi2_{n_obs - 2},
///   beta | sigma ~ N(beta_ls, sigma^2 (X'X)^-1).
/// Always consumes the same number of variates from `rng`.
PosteriorDraw fit_and_draw(const IncompleteBivariate& data, RandomStream& rng);

/// Fills each absent y_i with beta0 + beta1 x_i + sigma z_i.
CompletedDataset impute_once(const IncompleteBivariate& data, const PosteriorDraw& draw,
                             RandomStream& rng);

/// m independent draw-then-impute passes.
std::vector<CompletedDataset> impute_m(const IncompleteBivariate& data, int m, RandomStream& rng);

/// Sample mean of y and its squared SE, var(y) / n.
ImputationResult analyze_mean(const CompletedDataset& completed);

/// impute_m followed by analyze_mean on each dataset, without keeping the
/// datasets around. Consumes `rng` exactly as impute_m does.
std::vector<ImputationResult> impute_and_analyze_mean(const IncompleteBivariate& data, int m,
                                                      RandomStream& rng);

}  // namespace howmany
