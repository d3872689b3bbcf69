#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "howmany/error.hpp"
#include "howmany/fmi.hpp"

using namespace howmany;

namespace {

// Published 95% intervals, gammas {.1,.3,.5,.7,.9} by M {5,10,15,20}.
constexpr double kPublished[20][2] = {
    {.03, .28}, {.04, .21}, {.05, .19}, {.06, .17},  //
    {.11, .60}, {.15, .51}, {.17, .47}, {.19, .44},  //
    {.22, .78}, {.29, .71}, {.33, .67}, {.35, .65},  //
    {.40, .89}, {.49, .85}, {.53, .83}, {.56, .81},  //
    {.72, .97}, {.79, .96}, {.81, .95}, {.83, .94},
};

}  // namespace

TEST_SUITE("fmi") {
  TEST_CASE("logit") {
    CHECK(logit(0.5) == 0.0);
    CHECK(std::fabs(logit(0.9) - std::log(9.0)) < 1e-12);
    CHECK(std::fabs(logit(0.9) - 2.197225) < 1e-5);
    CHECK(inv_logit(0.0) == 0.5);
    for (double p : {1e-6, 0.01, 0.3, 0.77, 0.999999}) {
      CHECK(std::fabs(inv_logit(logit(p)) - p) < 1e-12);
    }
    CHECK(inv_logit(-800.0) == 0.0);
    CHECK(inv_logit(800.0) == 1.0);
    for (double bad : {0.0, 1.0, -0.5, 2.0}) {
      try {
        logit(bad);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kDomainError);
      }
    }
  }

  TEST_CASE("gamma_ci examples") {
    auto ci = gamma_ci(0.3, 5);
    CHECK(round_half_away(ci.lower, 2) == doctest::Approx(0.11));
    CHECK(round_half_away(ci.upper, 2) == doctest::Approx(0.60));
    ci = gamma_ci(0.5, 10);
    CHECK(round_half_away(ci.lower, 2) == doctest::Approx(0.29));
    CHECK(round_half_away(ci.upper, 2) == doctest::Approx(0.71));
    ci = gamma_ci(0.9, 20);
    CHECK(round_half_away(ci.lower, 2) == doctest::Approx(0.83));
    CHECK(round_half_away(ci.upper, 2) == doctest::Approx(0.94));
    for (int m : {2, 3, 7, 50, 1000}) {
      const auto sym = gamma_ci(0.5, m);
      CHECK(sym.lower + sym.upper == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("gamma_ci clamps the boundary and rejects bad input") {
    CHECK(gamma_ci(0.0, 5).point == kGammaEpsilon);
    CHECK(gamma_ci(1.0, 5).point == 1.0 - kGammaEpsilon);
    CHECK(gamma_ci(1.0, 5).upper < 1.0);
    CHECK_THROWS_AS(gamma_ci(0.3, 1), Error);
    try {
      gamma_ci(0.3, 1);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInsufficientImputations);
    }
    CHECK_THROWS_AS(gamma_ci(1.2, 5), Error);
    CHECK_THROWS_AS(gamma_ci(0.3, 5, 1.0), Error);
  }

  TEST_CASE("reference table reproduces every cell") {
    const auto rows = table1(kTable1Gammas, kTable1Ms);
    REQUIRE(rows.size() == 20);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      INFO("row " << i << " gamma=" << rows[i].point << " m=" << rows[i].m);
      CHECK(std::fabs(rows[i].lower - kPublished[i][0]) <= 0.005);
      CHECK(std::fabs(rows[i].upper - kPublished[i][1]) <= 0.005);
      CHECK(round_half_away(rows[i].lower, 2) == doctest::Approx(kPublished[i][0]));
      CHECK(round_half_away(rows[i].upper, 2) == doctest::Approx(kPublished[i][1]));
    }
    CHECK(rows[4].point == doctest::Approx(0.3));
    CHECK(rows[4].m == 5);
  }

  TEST_CASE("table1 subsets") {
    const double g1[] = {0.1};
    const auto rows = table1(g1, kTable1Ms);
    REQUIRE(rows.size() == 4);
    const double expected[4][2] = {{.03, .28}, {.04, .21}, {.05, .19}, {.06, .17}};
    for (int i = 0; i < 4; ++i) {
      CHECK(round_half_away(rows[i].lower, 2) == doctest::Approx(expected[i][0]));
      CHECK(round_half_away(rows[i].upper, 2) == doctest::Approx(expected[i][1]));
    }
    const double g7[] = {0.7};
    const int m5[] = {5};
    const auto single = table1(g7, m5);
    REQUIRE(single.size() == 1);
    CHECK(round_half_away(single[0].lower, 2) == doctest::Approx(0.40));
    CHECK(round_half_away(single[0].upper, 2) == doctest::Approx(0.89));
    CHECK(table1(std::span<const double>{}, kTable1Ms).empty());
  }

  TEST_CASE("interval properties on random inputs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> g_dist(0.001, 0.999);
    std::uniform_int_distribution<int> m_dist(2, 500);
    for (int trial = 0; trial < 500; ++trial) {
      const double g = g_dist(rng);
      const int m = m_dist(rng);
      const auto ci = gamma_ci(g, m);
      CHECK(0.0 < ci.lower);
      CHECK(ci.lower <= ci.point);
      CHECK(ci.point <= ci.upper);
      CHECK(ci.upper < 1.0);

      const auto wider_m = gamma_ci(g, m + 1);
      CHECK(wider_m.upper - wider_m.lower < ci.upper - ci.lower);

      const auto ninety = gamma_ci(g, m, 0.90);
      CHECK(ci.lower <= ninety.lower);
      CHECK(ninety.upper <= ci.upper);

      const auto mirror = gamma_ci(1.0 - g, m);
      CHECK(mirror.lower == doctest::Approx(1.0 - ci.upper).epsilon(1e-9));
      CHECK(mirror.upper == doctest::Approx(1.0 - ci.lower).epsilon(1e-9));
    }
  }

  TEST_CASE("half-away rounding") {
    CHECK(round_half_away(0.125, 2) == doctest::Approx(0.13));
    CHECK(round_half_away(-0.125, 2) == doctest::Approx(-0.13));
    CHECK(round_half_away(0.1249, 2) == doctest::Approx(0.12));
    CHECK(round_half_away(0.695, 2) == doctest::Approx(0.70));
  }
}
