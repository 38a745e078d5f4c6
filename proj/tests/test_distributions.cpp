#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "truncauct/distributions.hpp"

using namespace truncauct;

TEST_CASE("uniform quantile and virtual value") {
  const auto d = ValueDistribution::uniform(0.0, 1.0);
  CHECK(d.quantile(0.3) == 0.3);
  CHECK(d.quantile_deriv(0.3) == 1.0);
  CHECK(std::abs(d.virtual_value(0.3) - (-0.4)) <= 1e-15);
  CHECK(std::abs(d.virtual_value(0.8) - 0.6) <= 1e-15);
  CHECK(d.check_regularity().regular);

  const auto s = ValueDistribution::shifted_uniform(1.0, 3.0);
  CHECK(s.quantile(0.0) == 1.0);
  CHECK(s.quantile(0.5) == 2.0);
  CHECK(s.quantile(1.0) == 3.0);
  CHECK(s.quantile_deriv(0.25) == 2.0);
}

TEST_CASE("power law quantile, derivative, and irregular region") {
  const auto d = ValueDistribution::power_law(2.0, 0.0, 1.0);
  CHECK(d.quantile(0.5) == 0.25);
  CHECK(d.quantile_deriv(0.5) == 1.0);
  // J(a) = 3a^2 - 2a, negative-slope below 1/3.
  CHECK(std::abs(d.virtual_value(0.2) - (-0.28)) <= 1e-12);
  CHECK_FALSE(d.check_regularity().regular);
  CHECK_FALSE(d.check_regularity().violations.empty());

  const auto d15 = ValueDistribution::power_law(1.5, 0.0, 1.0);
  // J(a) = sqrt(a) (2.5 a - 1.5).
  CHECK(std::abs(d15.virtual_value(0.04) - (-0.28)) <= 1e-12);
  CHECK_FALSE(d15.check_regularity().regular);

  const auto droot = ValueDistribution::power_law(0.5, 0.0, 1.0);
  CHECK_THROWS(droot.quantile_deriv(0.0));
  CHECK(std::abs(droot.quantile_deriv(0.25) - 1.0) <= 1e-12);
}

TEST_CASE("tabulated quantile interpolates its knots") {
  const auto d = ValueDistribution::tabulated({{0.0, 0.0}, {0.5, 1.0}, {1.0, 3.0}});
  CHECK(d.quantile(0.25) == 0.5);
  CHECK(d.quantile(0.75) == 2.0);
  CHECK(d.quantile_deriv(0.25) == 2.0);
  CHECK(d.quantile_deriv(0.75) == 4.0);
  CHECK(d.support_lo() == 0.0);
  CHECK(d.support_hi() == 3.0);
}

TEST_CASE("invalid distribution parameters are rejected") {
  CHECK_THROWS(ValueDistribution::uniform(1.0, 0.0));
  CHECK_THROWS(ValueDistribution::power_law(0.0));
  CHECK_THROWS(ValueDistribution::power_law(-1.0));
  // Knot grids must span [0,1] and increase in both coordinates.
  CHECK_THROWS(ValueDistribution::tabulated({{0.1, 0.0}, {1.0, 1.0}}));
  CHECK_THROWS(ValueDistribution::tabulated({{0.0, 0.0}, {0.5, 0.2}, {1.0, 0.1}}));
  CHECK_THROWS(ValueDistribution::uniform(-0.5, 1.0));
}

TEST_CASE("seller preferences: risk neutral, CRRA, tabulated") {
  const auto rn = SellerPreferences::risk_neutral(0.2);
  CHECK(rn.utility(0.7) == 0.7);
  CHECK(rn.marginal_utility(0.7) == 1.0);
  CHECK(rn.outside_value() == 0.2);

  const auto c = SellerPreferences::crra(0.5, 0.0);
  CHECK(c.utility(4.0) == 2.0);
  CHECK(std::abs(c.marginal_utility(4.0) - 0.25) <= 1e-15);
  CHECK(std::isinf(c.marginal_utility(0.0)));

  const auto lin = SellerPreferences::crra(1.0, 0.0);
  CHECK(lin.utility(0.37) == 0.37);

  CHECK_THROWS(SellerPreferences::crra(0.0, 0.0));
  CHECK_THROWS(SellerPreferences::crra(1.2, 0.0));

  const auto tab =
      SellerPreferences::tabulated({{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.5}}, 0.0);
  CHECK(tab.utility(0.5) == 0.5);
  CHECK(tab.utility(1.5) == 1.25);
  // Convex increments are rejected.
  CHECK_THROWS(
      SellerPreferences::tabulated({{0.0, 0.0}, {1.0, 0.5}, {2.0, 1.5}}, 0.0));
}
