#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "truncauct/numeric.hpp"

using namespace truncauct;

TEST_CASE("integrate hits smooth closed forms at the requested tolerance") {
  const double third = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(std::abs(third - 1.0 / 3.0) <= 1e-9);

  const double e1 = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(std::abs(e1 - (std::exp(1.0) - 1.0)) <= 1e-9);

  const double zero = integrate([](double x) { return x; }, 0.7, 0.7);
  CHECK(zero == 0.0);

  // Sharp but smooth integrand: adaptivity has to subdivide.
  const double peak = integrate(
      [](double x) { return 1.0 / (1e-4 + (x - 0.5) * (x - 0.5)); }, 0.0, 1.0);
  const double target = 2.0 / 1e-2 * std::atan(0.5 / 1e-2);
  CHECK(std::abs(peak - target) <= 1e-6 * target);
}

TEST_CASE("bisect finds roots from either sign orientation") {
  const double up = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(std::abs(up - std::sqrt(2.0)) <= 1e-11);

  const double down = bisect([](double x) { return 2.0 - x * x; }, 0.0, 2.0);
  CHECK(std::abs(down - std::sqrt(2.0)) <= 1e-11);

  const double at_end = bisect([](double x) { return x; }, 0.0, 1.0);
  CHECK(at_end == 0.0);

  CHECK_THROWS(bisect([](double x) { return x + 10.0; }, 0.0, 1.0));
}

TEST_CASE("LinearInterp evaluates, clamps, and reports segment slopes") {
  const LinearInterp f({0.0, 1.0, 2.0}, {0.0, 2.0, 3.0});
  CHECK(f.eval(0.5) == 1.0);
  CHECK(f.eval(1.5) == 2.5);
  CHECK(f.eval(-1.0) == 0.0);
  CHECK(f.eval(3.0) == 3.0);
  CHECK(f.slope_at(0.5) == 2.0);
  CHECK(f.slope_at(1.5) == 1.0);

  CHECK_THROWS(LinearInterp({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}));
  CHECK_THROWS(LinearInterp({0.0, 1.0}, {0.0}));
}

TEST_CASE("monotone_rearrange sorts and reports the disturbed fraction") {
  std::vector<double> v = {1.0, 3.0, 2.0};
  const double freq = monotone_rearrange(v);
  CHECK(v == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(std::abs(freq - 2.0 / 3.0) <= 1e-15);

  std::vector<double> sorted = {1.0, 2.0, 3.0};
  CHECK(monotone_rearrange(sorted) == 0.0);
}

TEST_CASE("is_increasing_on_grid flags non-monotone functions") {
  CHECK(is_increasing_on_grid([](double x) { return x; }, 0.0, 1.0));
  CHECK_FALSE(is_increasing_on_grid([](double x) { return -x; }, 0.0, 1.0));
  CHECK_FALSE(
      is_increasing_on_grid([](double x) { return x * x; }, -1.0, 1.0));
}
