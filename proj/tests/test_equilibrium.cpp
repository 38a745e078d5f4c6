#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "truncauct/equilibrium.hpp"

using namespace truncauct;

namespace {
const ValueDistribution kUnif = ValueDistribution::uniform(0.0, 1.0);
const ValueDistribution kPl15 = ValueDistribution::power_law(1.5, 0.0, 1.0);
}  // namespace

TEST_CASE("first-price reserve bid matches the uniform closed form") {
  // Uniform, N=2: b(a; a0) = (a^2 + a0^2) / (2a).
  CHECK(std::abs(fp_bid_reserve(kUnif, 2, 0.0, 0.8) - 0.4) <= 1e-9);
  CHECK(std::abs(fp_bid_reserve(kUnif, 2, 0.5, 1.0) - 0.625) <= 1e-9);
  CHECK(std::abs(fp_bid_reserve(kUnif, 2, 0.5, 0.75) -
                 (0.5625 + 0.25) / 1.5) <= 1e-9);
  // At the screening level the bid equals the value there.
  CHECK(std::abs(fp_bid_reserve(kUnif, 3, 0.4, 0.4) - 0.4) <= 1e-9);
}

TEST_CASE("bid identity b + (a/(N-1)) b' = V holds off the closed form") {
  const double h = 1e-5;
  for (const int n : {2, 3, 5}) {
    for (const double a : {0.45, 0.7, 0.95}) {
      const double b = fp_bid_reserve(kPl15, n, 0.3, a);
      const double bp = (fp_bid_reserve(kPl15, n, 0.3, a + h) -
                         fp_bid_reserve(kPl15, n, 0.3, a - h)) /
                        (2.0 * h);
      CHECK(std::abs(b + a / (n - 1) * bp - kPl15.quantile(a)) <= 1e-6);
    }
  }
}

TEST_CASE("screening sensitivity of the reserve bid") {
  CHECK(std::abs(fp_bid_reserve_sensitivity(kUnif, 2, 0.5, 1.0) - 0.5) <=
        1e-12);
  CHECK(std::abs(fp_bid_reserve_sensitivity(kUnif, 3, 0.5, 0.5) - 1.0) <=
        1e-12);
}

TEST_CASE("entry threshold solves V(a) a^(N-1) = F") {
  CHECK(std::abs(entry_threshold(kUnif, 2, 0.25) - 0.5) <= 1e-10);
  CHECK(std::abs(entry_threshold(kUnif, 3, 0.125) - 0.5) <= 1e-10);
  CHECK(std::abs(entry_threshold(kUnif, 1, 0.5) - 0.5) <= 1e-10);
  CHECK(std::abs(entry_threshold(kUnif, 2, 0.2) - std::sqrt(0.2)) <= 1e-10);
  CHECK(std::abs(entry_threshold(kUnif, 3, 0.2) - std::cbrt(0.2)) <= 1e-10);
}

TEST_CASE("entry bid: zero at the threshold, closed form at the top") {
  CHECK(std::abs(fp_bid_entry(kUnif, 2, 0.25, 1.0) - 0.375) <= 1e-9);
  CHECK(std::abs(fp_bid_entry(kUnif, 2, 0.2, 1.0) - 0.4) <= 1e-9);
  CHECK(std::abs(fp_bid_entry(kUnif, 3, 0.2, 1.0) - (1.0 - 0.2 - 0.8 / 3.0)) <=
        1e-9);
  for (const int n : {2, 3, 5}) {
    const double a_star = entry_threshold(kUnif, n, 0.25);
    CHECK(std::abs(fp_bid_entry(kUnif, n, 0.25, a_star)) <= 1e-8);
  }
}

TEST_CASE("second-price bid is the value") {
  CHECK(sp_bid(kUnif, 0.3) == 0.3);
  CHECK(sp_bid(kPl15, 0.49) == kPl15.quantile(0.49));
}

TEST_CASE("optimal screening: frozen roots per format, family, utility") {
  const auto rn0 = SellerPreferences::risk_neutral(0.0);
  const auto rn2 = SellerPreferences::risk_neutral(0.2);
  const auto cr0 = SellerPreferences::crra(0.5, 0.0);
  const auto cr2 = SellerPreferences::crra(0.5, 0.2);
  const auto sp = AuctionFormat::SecondPrice;
  const auto fp = AuctionFormat::FirstPrice;
  const auto warn = RegularityPolicy::Warn;

  CHECK(std::abs(optimal_screening(kUnif, rn0, sp) - 0.5) <= 1e-9);
  CHECK(std::abs(optimal_screening(kUnif, rn2, sp) - 0.6) <= 1e-9);
  CHECK(std::abs(optimal_screening(kUnif, cr0, sp) - 1.0 / 3.0) <= 1e-9);
  CHECK(std::abs(optimal_screening(kUnif, cr2, sp) - 5.0 / 9.0) <= 1e-9);
  CHECK(std::abs(optimal_screening(kPl15, rn0, sp, warn) - 0.6) <= 1e-9);
  CHECK(std::abs(optimal_screening(kPl15, rn2, sp, warn) - 0.6958995789) <=
        1e-8);
  CHECK(std::abs(optimal_screening(kPl15, cr0, sp, warn) -  3.0 / 7.0) <=
        1e-9);
  CHECK(std::abs(optimal_screening(kPl15, cr2, sp, warn) - 0.6588035596) <=
        1e-8);

  // Risk-neutral first-price brackets coincide with second-price ones.
  CHECK(std::abs(optimal_screening(kPl15, rn2, fp, warn) -
                 optimal_screening(kPl15, rn2, sp, warn)) <= 1e-8);

  // CRRA first-price roots depend on the bid function's N.
  CHECK(std::abs(optimal_screening(kUnif, cr0, fp, warn, 2) - 0.30505922) <=
        1e-7);
  CHECK(std::abs(optimal_screening(kUnif, cr0, fp, warn, 6) - 0.27088177) <=
        1e-7);
  CHECK(std::abs(optimal_screening(kPl15, cr2, fp, warn, 2) - 0.65476173) <=
        1e-7);

  // Rejecting policy refuses irregular families.
  const auto pl2 = ValueDistribution::power_law(2.0, 0.0, 1.0);
  CHECK_THROWS(optimal_screening(pl2, rn0, sp, RegularityPolicy::Reject));
}

TEST_CASE("seller payoff: frozen values and grid consistency") {
  const auto rn0 = SellerPreferences::risk_neutral(0.0);
  const auto cr2 = SellerPreferences::crra(0.5, 0.2);
  const auto sp = AuctionFormat::SecondPrice;
  const auto fp = AuctionFormat::FirstPrice;

  CHECK(std::abs(seller_payoff(kUnif, rn0, sp, 2, 0.5) - 5.0 / 12.0) <= 1e-9);
  CHECK(std::abs(seller_payoff(kUnif, rn0, fp, 2, 0.5) - 5.0 / 12.0) <= 1e-9);
  CHECK(std::abs(seller_payoff(kUnif, rn0, sp, 2, 0.0) - 1.0 / 3.0) <= 1e-9);
  CHECK(std::abs(seller_payoff(kUnif, rn0, sp, 3, 0.3) - 0.51485) <= 1e-5);
  CHECK(std::abs(seller_payoff(kUnif, cr2, sp, 2, 0.5) -
                 0.6687069582478744) <= 1e-9);
  CHECK(std::abs(seller_payoff(kUnif, cr2, fp, 3, 0.4) -
                 0.7279604844980508) <= 1e-9);

  for (const auto format : {sp, fp}) {
    const auto grid = seller_payoff_grid(kUnif, cr2, format, 3, 101);
    REQUIRE(grid.size() == 101);
    for (const int i : {0, 25, 50, 75, 100}) {
      CHECK(std::abs(grid[i] -
                     seller_payoff(kUnif, cr2, format, 3, i / 100.0)) <= 1e-8);
    }
  }
}

TEST_CASE("tabulated bid curve tracks the pointwise bid") {
  const auto reserve = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.5);
  const auto curve = tabulate_fp_bid(kUnif, 2, reserve);
  CHECK(std::abs(curve.eval(1.0) - 0.625) <= 1e-6);
  CHECK(std::abs(curve.eval(0.75) - (0.5625 + 0.25) / 1.5) <= 1e-6);
  CHECK(std::abs(curve.eval(0.5) - 0.5) <= 1e-6);

  const auto entry = AuctionDesign::entry(AuctionFormat::FirstPrice, 0.25);
  const auto ecurve = tabulate_fp_bid(kUnif, 2, entry);
  CHECK(std::abs(ecurve.eval(1.0) - 0.375) <= 1e-6);
  CHECK(std::abs(ecurve.eval(0.5)) <= 1e-6);
}

TEST_CASE("design construction and derived quantities") {
  const auto r = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.3);
  CHECK(r.threshold(kUnif, 2) == 0.3);
  CHECK(r.threshold(kUnif, 5) == 0.3);
  CHECK(r.reserve_value(kUnif) == 0.3);

  const auto e = AuctionDesign::entry(AuctionFormat::SecondPrice, 0.25);
  CHECK(std::abs(e.threshold(kUnif, 2) - 0.5) <= 1e-10);
  CHECK(e.reserve_value(kUnif) == 0.0);

  CHECK_THROWS(AuctionDesign::reserve(AuctionFormat::SecondPrice, 1.0));
  CHECK_THROWS(AuctionDesign::reserve(AuctionFormat::SecondPrice, -0.1));
  CHECK_THROWS(AuctionDesign::entry(AuctionFormat::SecondPrice, 0.0));
  CHECK_THROWS(AuctionDesign::entry(AuctionFormat::SecondPrice, 2.0)
                   .validate(kUnif));
}
