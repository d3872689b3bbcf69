#include <doctest.h>

#include <cmath>
#include <random>

#include "howmany/error.hpp"
#include "howmany/planner.hpp"

using namespace howmany;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidInput;
}

}  // namespace

TEST_SUITE("planner") {
  TEST_CASE("cv from an SD goal") {
    CHECK(std::fabs(cv_for_sd_goal(0.001, 0.023) - 0.043478) < 1e-6);
    CHECK(std::fabs(cv_for_sd_goal(0.001, 0.021) - 0.047619) < 1e-6);
    CHECK(cv_for_sd_goal(0.37, 0.37) == 1.0);
    CHECK(kind_of([] { cv_for_sd_goal(0.0, 0.02); }) == ErrorKind::kInvalidTarget);
    CHECK(kind_of([] { cv_for_sd_goal(0.001, -1.0); }) == ErrorKind::kInvalidTarget);
  }

  TEST_CASE("SE-CV rule") {
    CHECK(m_for_se_cv(0.5, 0.05) == 51);
    CHECK(m_for_se_cv(0.69, 0.043478) == 127);
    CHECK(m_for_se_cv(kGammaEpsilon, 0.05) == 2);
    CHECK(m_for_se_cv(0.9, 0.05) == 163);
    CHECK(m_for_se_cv(0.1, 0.05) == 3);
    CHECK(m_for_se_cv(0.99, 0.001) == kDefaultMaxImputations);
    CHECK(m_for_se_cv(0.99, 0.001, 500) == 500);
    CHECK(kind_of([] { m_for_se_cv(0.0, 0.05); }) == ErrorKind::kDomainError);
    CHECK(kind_of([] { m_for_se_cv(0.5, 1.0); }) == ErrorKind::kDomainError);
  }

  TEST_CASE("variance-CV rule") {
    CHECK(m_for_var_cv(0.5, 0.1) == 51);
    CHECK(m_for_var_cv(0.9, 0.05) == 649);
    CHECK(kind_of([] { m_for_var_cv(1.0, 0.1); }) == ErrorKind::kDomainError);
  }

  TEST_CASE("df rule") {
    CHECK(m_for_df(0.5, 200) == 51);
    CHECK(m_for_df(0.3, 100) == 10);
    CHECK(m_for_df(kGammaEpsilon, 200) == 2);
    CHECK(kind_of([] { m_for_df(0.3, 0.5); }) == ErrorKind::kDomainError);
  }

  TEST_CASE("cv and df conversions") {
    CHECK(cv_to_df(0.05) == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(df_to_cv(200.0) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(cv_df_convert(0.05, CvDfDirection::kCvToDf) == doctest::Approx(200.0));
    for (double x : {10.0, 50.0, 1000.0}) {
      CHECK(cv_to_df(df_to_cv(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK(kind_of([] { cv_to_df(1.5); }) == ErrorKind::kDomainError);
    CHECK(kind_of([] { df_to_cv(0.0); }) == ErrorKind::kDomainError);
  }

  TEST_CASE("variance inflation") {
    auto vi = variance_inflation(0.8, 10);
    CHECK(vi.variance_factor == doctest::Approx(1.08));
    CHECK(vi.se_factor == doctest::Approx(std::sqrt(1.08)));
    CHECK(std::fabs(vi.se_factor - 1.0392) < 1e-4);
    vi = variance_inflation(0.5, 5);
    CHECK(vi.variance_factor == doctest::Approx(1.10));
    CHECK(std::fabs(vi.se_factor - 1.0488) < 1e-4);
    vi = variance_inflation(0.99, 100000000);
    CHECK(vi.variance_factor == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(kind_of([] { variance_inflation(0.5, 0); }) == ErrorKind::kDomainError);
  }

  TEST_CASE("rule identities over a grid") {
    for (int i = 1; i <= 99; ++i) {
      const double g = i / 100.0;
      for (int j = 1; j <= 20; ++j) {
        const double cv = j / 100.0;
        INFO("gamma=" << g << " cv=" << cv);
        const int m = m_for_se_cv(g, cv);
        CHECK(m == m_for_df(g, cv_df_convert(cv, CvDfDirection::kCvToDf)));
        CHECK(m == m_for_var_cv(g, 2.0 * cv));
      }
    }
  }

  TEST_CASE("rule monotonicity and quadratic shape") {
    for (int j = 1; j <= 20; ++j) {
      const double cv = j / 100.0;
      int previous = 0;
      for (int i = 1; i <= 99; ++i) {
        const int m = m_for_se_cv(i / 100.0, cv);
        CHECK(m >= previous);
        previous = m;
      }
    }
    for (int i = 1; i <= 99; ++i) {
      int previous = 1 << 30;
      for (int j = 1; j <= 20; ++j) {
        const int m = m_for_se_cv(i / 100.0, j / 100.0);
        CHECK(m <= previous);
        previous = m;
      }
    }
    // (g / cv)^2 / 2 is an integer for these, so the ceiling is inert and
    // doubling gamma quadruples m - 1.
    for (double g : {0.1, 0.2, 0.3, 0.4}) {
      const double cv = 0.05;
      CHECK(m_for_se_cv(2 * g, cv) - 1 == 4 * (m_for_se_cv(g, cv) - 1));
    }
  }

  TEST_CASE("target validation") {
    CHECK_NOTHROW(ReplicabilityTarget::sd_of_se(0.001).validate());
    CHECK(kind_of([] { ReplicabilityTarget::sd_of_se(0.0).validate(); }) == ErrorKind::kInvalidTarget);
    CHECK(kind_of([] { ReplicabilityTarget::cv_of_se(1.0).validate(); }) == ErrorKind::kInvalidTarget);
    CHECK(kind_of([] { ReplicabilityTarget::cv_of_variance(0.0).validate(); }) ==
          ErrorKind::kInvalidTarget);
    CHECK(kind_of([] { ReplicabilityTarget::df(0.5).validate(); }) == ErrorKind::kInvalidTarget);
  }

  TEST_CASE("worked example recommendation") {
    const PilotSummary pilot{5, 0.39, 0.023, 16.642};
    const auto rec = recommend(pilot, ReplicabilityTarget::sd_of_se(0.001));
    CHECK(std::fabs(rec.gamma_used - 0.69) <= 0.005);
    CHECK(rec.m_required >= 124);
    CHECK(rec.m_required <= 128);
    CHECK(rec.pilot_m == 5);
    CHECK_FALSE(rec.pilot_sufficient);
    CHECK(rec.gamma_point == doctest::Approx(0.39));
    CHECK(rec.df_implied == doctest::Approx(1.0 / (2.0 * rec.cv_target * rec.cv_target)));
  }

  TEST_CASE("large pilot with little missing information") {
    const PilotSummary pilot{500, 0.1, 1.0, 0.0};
    const auto rec = recommend(pilot, ReplicabilityTarget::cv_of_se(0.05));
    CHECK(rec.gamma_used < 0.17);
    CHECK(rec.m_required <= 7);
    CHECK(rec.pilot_sufficient);
  }

  TEST_CASE("no between variance needs the minimum") {
    const PilotSummary pilot{5, 0.0, 1.0, 0.0};
    const auto rec = recommend(pilot, ReplicabilityTarget::cv_of_se(0.05));
    CHECK(rec.m_required == 2);
    CHECK(rec.pilot_sufficient);
  }

  TEST_CASE("target kinds agree") {
    const PilotSummary pilot{10, 0.4, 0.02, 0.0};
    const int by_cv = recommend(pilot, ReplicabilityTarget::cv_of_se(0.05)).m_required;
    CHECK(recommend(pilot, ReplicabilityTarget::cv_of_variance(0.1)).m_required == by_cv);
    CHECK(recommend(pilot, ReplicabilityTarget::df(200)).m_required == by_cv);
    CHECK(recommend(pilot, ReplicabilityTarget::sd_of_se(0.001)).m_required == by_cv);
  }

  TEST_CASE("cap and a generous SD goal") {
    const PilotSummary pilot{5, 0.95, 1.0, 0.0};
    const auto capped = recommend(pilot, ReplicabilityTarget::cv_of_se(0.001), {0.95, 300});
    CHECK(capped.m_required == 300);
    CHECK(capped.capped);
    const auto loose = recommend(pilot, ReplicabilityTarget::sd_of_se(5.0));
    CHECK(loose.cv_target == 5.0);
    CHECK(loose.m_required == 2);
    CHECK_FALSE(loose.capped);
  }

  TEST_CASE("recommendations are conservative and monotone in the pilot gamma") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> g_dist(0.0, 1.0);
    std::uniform_int_distribution<int> m_dist(2, 100);
    for (int trial = 0; trial < 300; ++trial) {
      const int m = m_dist(rng);
      const double g1 = g_dist(rng);
      const double g2 = g_dist(rng);
      const auto target = ReplicabilityTarget::cv_of_se(0.05);
      const auto r1 = recommend(PilotSummary{m, g1, 1.0, 0.0}, target);
      const auto r2 = recommend(PilotSummary{m, g2, 1.0, 0.0}, target);
      CHECK(r1.gamma_used >= r1.gamma_point);
      CHECK(r1.pilot_sufficient == (m >= r1.m_required));
      if (r1.gamma_used <= r2.gamma_used) {
        CHECK(r1.m_required <= r2.m_required);
      } else {
        CHECK(r1.m_required >= r2.m_required);
      }
    }
  }
}
