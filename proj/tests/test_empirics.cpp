#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "truncauct/empirics.hpp"

using namespace truncauct;

namespace {
std::vector<double> quadratic_sample(std::size_t n) {
  // Order statistics of T(u) = u^2 placed at the type-7 positions, so the
  // empirical quantile reproduces the curve without sampling noise.
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    s[i] = u * u;
  }
  return s;
}
}  // namespace

TEST_CASE("empirical quantile interpolates order statistics (type 7)") {
  const EmpiricalQuantile q({5.0, 1.0, 3.0, 2.0, 4.0});
  CHECK(q.eval(0.0) == 1.0);
  CHECK(q.eval(1.0) == 5.0);
  CHECK(q.eval(0.5) == 3.0);
  CHECK(q.eval(0.25) == 2.0);
  CHECK(q.eval(0.125) == 1.5);
  CHECK(q.size() == 5);
  CHECK(q.min() == 1.0);
  CHECK(q.max() == 5.0);
}

TEST_CASE("quantile derivatives recover smooth curves") {
  const EmpiricalQuantile q(quadratic_sample(20001));
  CHECK(std::abs(q.eval(0.5) - 0.25) <= 1e-6);
  CHECK(std::abs(q.deriv(0.5) - 1.0) <= 0.01);
  CHECK(std::abs(q.deriv(0.25) - 0.5) <= 0.01);
  CHECK(std::abs(q.second_deriv(0.5) - 2.0) <= 0.1);
  // One-sided stencils at the edges stay finite and close.
  CHECK(std::abs(q.deriv(1.0) - 2.0) <= 0.1);
  CHECK(std::abs(q.second_deriv(0.0) - 2.0) <= 0.3);
  CHECK(q.default_bandwidth() > 0.0);
  CHECK(q.default_bandwidth2() > q.default_bandwidth());
}

TEST_CASE("mass, cdf, and survival at an atom") {
  const EmpiricalQuantile q({0.0, 0.5, 0.5, 1.0});
  CHECK(q.mass_at(0.5) == 0.5);
  CHECK(q.mass_at(0.25) == 0.0);
  CHECK(q.mass_at(0.5 + 1e-12, 1e-9) == 0.5);
  CHECK(q.cdf(0.5) == 0.75);
  CHECK(q.cdf(0.4) == 0.25);
  CHECK(q.survival(0.5) == 0.25);
  CHECK(q.survival(2.0) == 0.0);
}

TEST_CASE("count stats summarize observed bidder counts") {
  ObservedDataset ds;
  ds.rows = {{0, 1.0, 2}, {1, 1.5, 2}, {2, 0.7, 1}};
  ds.l = 3;
  ds.l_invalid = 1;
  const auto cs = count_stats(ds);
  CHECK(cs.total_valid == 3);
  CHECK(cs.k_max == 2);
  CHECK(std::abs(cs.share_of(1) - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(cs.share_of(2) - 2.0 / 3.0) <= 1e-15);
  CHECK(cs.share_of(3) == 0.0);
  REQUIRE(cs.invalid_share.has_value());
  CHECK(std::abs(*cs.invalid_share - 0.25) <= 1e-15);

  ObservedDataset no_counts;
  no_counts.rows = {{0, 1.0, std::nullopt}};
  no_counts.l = 1;
  const auto cs2 = count_stats(no_counts);
  CHECK(cs2.shares.empty());
  CHECK_FALSE(cs2.invalid_share.has_value());
}

TEST_CASE("price extraction filters") {
  ObservedDataset ds;
  ds.rows = {{0, 1.0, 2}, {1, 1.5, 2}, {2, 0.7, 1}};
  ds.l = 3;
  CHECK(prices(ds) == std::vector<double>{1.0, 1.5, 0.7});
  CHECK(prices_with_nobs(ds, 2) == std::vector<double>{1.0, 1.5});
  CHECK(prices_with_nobs(ds, 1) == std::vector<double>{0.7});
  CHECK(prices_with_nobs(ds, 4).empty());
  CHECK(prices_above(ds, 0.9) == std::vector<double>{1.0, 1.5});
}

TEST_CASE("empirical quantile rejects empty samples") {
  CHECK_THROWS(EmpiricalQuantile(std::vector<double>{}));
}
