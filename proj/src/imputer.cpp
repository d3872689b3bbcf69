#include "howmany/imputer.hpp"

#include <cmath>
#include <string>

#include "howmany/error.hpp"

namespace howmany {
namespace {

struct LeastSquares {
  double intercept;
  double slope;
  double x_mean;
  double sxx;
  double rss;
  std::size_t count;
};

LeastSquares complete_case_fit(const IncompleteBivariate& data) {
  const auto& xs = data.x();
  const auto& ys = data.y();
  double sum_x = 0.0;
  double sum_y = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ys[i]) continue;
    sum_x += xs[i];
    sum_y += *ys[i];
    ++count;
  }
  const double x_mean = sum_x / static_cast<double>(count);
  const double y_mean = sum_y / static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  double sum_x2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ys[i]) continue;
    const double dx = xs[i] - x_mean;
    const double dy = *ys[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
    sum_x2 += xs[i] * xs[i];
  }
  if (!(sxx > 1e-12 * sum_x2)) {
    throw Error(ErrorKind::kSingularDesign, "x has no spread among the complete cases");
  }
  const double slope = sxy / sxx;
  const double intercept = y_mean - slope * x_mean;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ys[i]) continue;
    const double r = *ys[i] - intercept - slope * xs[i];
    rss += r * r;
  }
  // Collinear data leaves only round-off in the residuals.
  if (rss <= 1e-24 * syy) rss = 0.0;
  return {intercept, slope, x_mean, sxx, rss, count};
}

template <class Sink>
void fill_missing(const IncompleteBivariate& data, const PosteriorDraw& draw, RandomStream& rng,
                  Sink&& sink) {
  std::normal_distribution<double> normal;
  const auto& xs = data.x();
  const auto& ys = data.y();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i]) {
      sink(i, *ys[i], false);
    } else {
      const double z = normal(rng);
      sink(i, draw.beta0 + draw.beta1 * xs[i] + draw.sigma * z, true);
    }
  }
}

ImputationResult mean_and_variance(const std::vector<double>& y) {
  const auto n = y.size();
  if (n < 2) {
    throw Error(ErrorKind::kInsufficientData,
                "the mean's SE needs n >= 2, got " + std::to_string(n));
  }
  double sum = 0.0;
  for (double v : y) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : y) {
    const double d = v - mean;
    ss += d * d;
  }
  const double variance = ss / static_cast<double>(n - 1);
  return {mean, variance / static_cast<double>(n)};
}

}  // namespace

IncompleteBivariate::IncompleteBivariate(std::vector<double> x,
                                         std::vector<std::optional<double>> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw Error(ErrorKind::kInvalidInput, "x and y must have the same length");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || (y_[i] && !std::isfinite(*y_[i]))) {
      throw Error(ErrorKind::kInvalidInput, "non-finite value at row " + std::to_string(i + 1));
    }
    if (y_[i]) ++n_obs_;
  }
  if (n_obs_ < 4) {
    throw Error(ErrorKind::kInsufficientCompleteCases,
                "need at least 4 observed outcomes, got " + std::to_string(n_obs_));
  }
}

PosteriorDraw fit_and_draw(const IncompleteBivariate& data, RandomStream& rng) {
  const LeastSquares ls = complete_case_fit(data);
  const double dof = static_cast<double>(ls.count) - 2.0;
  std::chi_squared_distribution<double> chi2(dof);
  std::normal_distribution<double> normal;
  const double chi = chi2(rng);
  const double z_level = normal(rng);
  const double z_slope = normal(rng);

  const double sigma = std::sqrt(ls.rss / chi);
  if (sigma == 0.0) return {ls.intercept, ls.slope, 0.0};
  // Centred parametrisation: the intercept at x_mean and the slope are
  // independent with variances sigma^2 / n_obs and sigma^2 / sxx.
  const double slope = ls.slope + sigma * z_slope / std::sqrt(ls.sxx);
  const double level = ls.intercept + ls.slope * ls.x_mean +
                       sigma * z_level / std::sqrt(static_cast<double>(ls.count));
  return {level - slope * ls.x_mean, slope, sigma};
}

CompletedDataset impute_once(const IncompleteBivariate& data, const PosteriorDraw& draw,
                             RandomStream& rng) {
  if (!std::isfinite(draw.beta0) || !std::isfinite(draw.beta1) || !std::isfinite(draw.sigma) ||
      draw.sigma < 0.0) {
    throw Error(ErrorKind::kInvalidInput, "posterior draw must be finite with sigma >= 0");
  }
  CompletedDataset out;
  out.x = data.x();
  out.y.resize(data.n());
  out.imputed.resize(data.n());
  fill_missing(data, draw, rng, [&](std::size_t i, double value, bool imputed) {
    out.y[i] = value;
    out.imputed[i] = imputed;
  });
  return out;
}

std::vector<CompletedDataset> impute_m(const IncompleteBivariate& data, int m, RandomStream& rng) {
  if (m < 2) {
    throw Error(ErrorKind::kInsufficientImputations, "m must be at least 2");
  }
  std::vector<CompletedDataset> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const PosteriorDraw draw = fit_and_draw(data, rng);
    out.push_back(impute_once(data, draw, rng));
  }
  return out;
}

ImputationResult analyze_mean(const CompletedDataset& completed) {
  return mean_and_variance(completed.y);
}

std::vector<ImputationResult> impute_and_analyze_mean(const IncompleteBivariate& data, int m,
                                                      RandomStream& rng) {
  if (m < 2) {
    throw Error(ErrorKind::kInsufficientImputations, "m must be at least 2");
  }
  std::vector<ImputationResult> out;
  out.reserve(static_cast<std::size_t>(m));
  std::vector<double> y(data.n());
  for (int k = 0; k < m; ++k) {
    const PosteriorDraw draw = fit_and_draw(data, rng);
    fill_missing(data, draw, rng, [&](std::size_t i, double value, bool) { y[i] = value; });
    out.push_back(mean_and_variance(y));
  }
  return out;
}

}  // namespace howmany
