#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "truncauct/empirics.hpp"
#include "truncauct/simulator.hpp"

using namespace truncauct;

namespace {
const ValueDistribution kUnif = ValueDistribution::uniform(0.0, 1.0);
}

TEST_CASE("population spec validation") {
  CHECK(PopulationSpec::degenerate(3).n_max() == 3);
  const auto mixed = PopulationSpec::of({{2, 0.5}, {3, 0.5}});
  CHECK(mixed.n_max() == 3);
  CHECK_THROWS(PopulationSpec::of({{2, 0.5}, {3, 0.4}}).validate());
  CHECK_THROWS(PopulationSpec::of({{0, 1.0}}).validate());
  CHECK_THROWS(PopulationSpec::of({{2, -0.5}, {3, 1.5}}).validate());
}

TEST_CASE("simulation is deterministic in the seed") {
  const auto design = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.3);
  const auto pop = PopulationSpec::of({{2, 0.5}, {3, 0.5}});
  const auto a = simulate(kUnif, design, pop, 500, 99);
  const auto b = simulate(kUnif, design, pop, 500, 99);
  const auto c = simulate(kUnif, design, pop, 500, 100);
  REQUIRE(a.size() == 500);
  bool identical = true, all_same_as_c = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    identical = identical && a[i].transaction_price == b[i].transaction_price &&
                a[i].n == b[i].n && a[i].types == b[i].types;
    all_same_as_c =
        all_same_as_c && a[i].transaction_price == c[i].transaction_price;
  }
  CHECK(identical);
  CHECK_FALSE(all_same_as_c);
}

TEST_CASE("raw auction bookkeeping matches the screening rule") {
  const auto design = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.5);
  const auto raw = simulate(kUnif, design, PopulationSpec::degenerate(2),
                            4000, 7);
  int singles = 0;
  for (const auto& r : raw) {
    int above = 0;
    for (const double t : r.types) above += t >= 0.5 ? 1 : 0;
    CHECK(r.n_act == above);
    CHECK(r.bids.size() == r.types.size());
    for (std::size_t i = 0; i < r.types.size(); ++i) {
      CHECK(std::isnan(r.bids[i]) == (r.types[i] < 0.5));
    }
    if (r.n_act == 0) {
      CHECK_FALSE(r.transaction_price.has_value());
    } else if (r.n_act == 1) {
      // Single active bidder pays the reserve value, written verbatim.
      CHECK(*r.transaction_price == 0.5);
      ++singles;
    } else {
      CHECK(*r.transaction_price >= 0.5);
    }
  }
  CHECK(singles > 0);
}

TEST_CASE("first-price prices live on the bid range") {
  const auto design = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.5);
  const auto raw = simulate(kUnif, design, PopulationSpec::degenerate(2),
                            4000, 11);
  // Uniform, N=2: bids run from b(0.5)=0.5 to b(1)=0.625.
  for (const auto& r : raw) {
    if (!r.transaction_price) continue;
    CHECK(*r.transaction_price >= 0.5 - 1e-9);
    CHECK(*r.transaction_price <= 0.625 + 1e-6);
  }
}

TEST_CASE("observe applies the info structure") {
  const auto design = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.5);
  const auto raw = simulate(kUnif, design, PopulationSpec::degenerate(2),
                            4000, 7);

  InfoStructure full;
  full.observe_nobs = true;
  full.observe_invalid_count = true;
  const auto ds = observe(raw, full, design.format, design.truncation, 0.5);
  REQUIRE(ds.l > 0);
  REQUIRE(ds.l_invalid.has_value());
  CHECK(ds.l + *ds.l_invalid == 4000);
  // Invalid share concentrates near alpha0^N = 0.25.
  CHECK(std::abs(static_cast<double>(*ds.l_invalid) / 4000.0 - 0.25) <= 0.03);
  for (const auto& r : ds.rows) REQUIRE(r.n_obs.has_value());

  InfoStructure masked;
  const auto ds2 = observe(raw, masked, design.format, design.truncation, 0.5);
  CHECK_FALSE(ds2.l_invalid.has_value());
  for (const auto& r : ds2.rows) CHECK_FALSE(r.n_obs.has_value());
  CHECK(ds2.l == ds.l);

  InfoStructure dropped;
  dropped.drop_at_reserve = true;
  const auto ds3 =
      observe(raw, dropped, design.format, design.truncation, 0.5);
  CHECK(ds3.l < ds2.l);
  for (const auto& r : ds3.rows) CHECK(r.transaction_price > 0.5);
}

TEST_CASE("entry-cost designs price the single-active case at zero") {
  const auto design = AuctionDesign::entry(AuctionFormat::SecondPrice, 0.25);
  const auto raw = simulate(kUnif, design, PopulationSpec::degenerate(2),
                            4000, 13);
  const double a_star = design.threshold(kUnif, 2);  // 0.5
  for (const auto& r : raw) {
    int above = 0;
    for (const double t : r.types) above += t >= a_star ? 1 : 0;
    CHECK(r.n_act == above);
    if (r.n_act == 1) CHECK(*r.transaction_price == 0.0);
  }
}

TEST_CASE("mixed populations draw N with the configured shares") {
  const auto design = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.0);
  const auto pop = PopulationSpec::of({{2, 0.3}, {5, 0.7}});
  const auto raw = simulate(kUnif, design, pop, 20000, 17);
  double twos = 0;
  for (const auto& r : raw) {
    CHECK((r.n == 2 || r.n == 5));
    twos += r.n == 2 ? 1 : 0;
  }
  CHECK(std::abs(twos / 20000.0 - 0.3) <= 0.02);
}

TEST_CASE("replay prices recorded bids without an equilibrium map") {
  const std::vector<std::vector<double>> bids = {{3, 4}, {2, 3}, {1, 2}};

  const auto fp = replay_recorded_bids(bids, AuctionFormat::FirstPrice, 2.5);
  REQUIRE(fp.size() == 3);
  CHECK(fp[0].n_act == 2);
  CHECK(*fp[0].transaction_price == 4.0);
  CHECK(fp[1].n_act == 1);
  CHECK(*fp[1].transaction_price == 3.0);
  CHECK(fp[2].n_act == 0);
  CHECK_FALSE(fp[2].transaction_price.has_value());

  const auto sp = replay_recorded_bids(bids, AuctionFormat::SecondPrice, 2.5);
  CHECK(*sp[0].transaction_price == 3.0);
  CHECK(*sp[1].transaction_price == 2.5);
  CHECK_FALSE(sp[2].transaction_price.has_value());
}
