#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "truncauct/identification.hpp"
#include "truncauct/simulator.hpp"

using namespace truncauct;

namespace {

const ValueDistribution kUnif = ValueDistribution::uniform(0.0, 1.0);

ObservedDataset make_ds(const AuctionDesign& design, const PopulationSpec& pop,
                        const InfoStructure& info, std::uint64_t l,
                        std::uint64_t seed) {
  const auto raw = simulate(kUnif, design, pop, l, seed);
  return observe(raw, info, design.format, design.truncation,
                 design.reserve_value(kUnif));
}

double v_error(const IdentificationResult& res, double alpha_lo) {
  double worst = 0.0;
  for (const auto& [a, v] : res.v_grid) {
    if (a < alpha_lo + 0.049 || a > 0.951) continue;
    worst = std::max(worst, std::abs(v - kUnif.quantile(a)));
  }
  return worst;
}

bool set_contains(const std::vector<AlphaInterval>& set, double truth,
                  double pad) {
  for (const auto& iv : set) {
    if (iv.lo - pad <= truth && truth <= iv.hi + pad) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("order-statistic curves match closed forms") {
  CHECK(std::abs(phi_second_highest(3, 0.5) - 0.5) <= 1e-15);
  CHECK(std::abs(phi_second_highest(2, 0.5) - 0.75) <= 1e-15);
  CHECK(std::abs(reserve_mass_curve(2, 0.5) - 2.0 / 3.0) <= 1e-15);
  CHECK(std::abs(all_active_share_curve(2, 0.5) - 1.0 / 3.0) <= 1e-15);
  // Mass share rises with the screening level, all-active share falls.
  CHECK(reserve_mass_curve(3, 0.6) > reserve_mass_curve(3, 0.4));
  CHECK(all_active_share_curve(3, 0.6) < all_active_share_curve(3, 0.4));
}

TEST_CASE("mass inversion recovers the screening level (second price)") {
  const auto design = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.3);
  const auto ds = make_ds(design, PopulationSpec::degenerate(3), {}, 200000,
                          101);
  const auto res = id_sp_fixed_price_only(ds, 3);
  CHECK(res.proposition == "prop1");
  REQUIRE(res.alpha_star.has_value());
  CHECK(std::abs(*res.alpha_star - 0.3) <= 0.02);
  CHECK(v_error(res, 0.3) <= 0.05);
  CHECK_FALSE(res.v_grid.empty());
}

TEST_CASE("invalid-count inversion recovers the first-price model") {
  const auto design = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.3);
  InfoStructure info;
  info.observe_invalid_count = true;
  const auto ds = make_ds(design, PopulationSpec::degenerate(3), info, 200000,
                          102);

  EstimatorOptions chain;
  chain.prop2_chainrule = true;
  const auto res = id_fp_fixed_invalid(ds, 3, chain);
  CHECK(res.proposition == "prop2");
  REQUIRE(res.alpha_star.has_value());
  CHECK(std::abs(*res.alpha_star - 0.3) <= 0.02);
  CHECK(v_error(res, 0.3) <= 0.05);

  // The uncorrected value map drifts near the top of the support.
  const auto printed = id_fp_fixed_invalid(ds, 3, {});
  CHECK(v_error(printed, 0.3) > 0.05);
}

TEST_CASE("observed counts pin N and the screening level") {
  InfoStructure info;
  info.observe_nobs = true;

  const auto reserve = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.3);
  const auto ds = make_ds(reserve, PopulationSpec::degenerate(3), info, 200000,
                          103);
  const auto res = id_fixed_nobs(ds);
  CHECK(res.proposition == "prop3");
  CHECK(res.n_recovered == 3);
  REQUIRE(res.alpha_star.has_value());
  CHECK(std::abs(*res.alpha_star - 0.3) <= 0.02);

  const auto entry = AuctionDesign::entry(AuctionFormat::SecondPrice, 0.1);
  const auto ds2 = make_ds(entry, PopulationSpec::degenerate(3), info, 200000,
                           104);
  const auto res2 = id_fixed_nobs(ds2);
  CHECK(res2.proposition == "prop8");
  CHECK(res2.n_recovered == 3);
  const double truth = entry_threshold(kUnif, 3, 0.1);
  REQUIRE(res2.alpha_star.has_value());
  CHECK(std::abs(*res2.alpha_star - truth) <= 0.02);
  REQUIRE(res2.entry_cost.has_value());
  CHECK(std::abs(*res2.entry_cost - 0.1) <= 0.05);
}

TEST_CASE("two-population comparison is order-insensitive") {
  const auto design = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.4);
  InfoStructure info;
  info.drop_at_reserve = true;
  const auto ds3 = make_ds(design, PopulationSpec::degenerate(3), info, 200000,
                           105);
  const auto ds2 = make_ds(design, PopulationSpec::degenerate(2), info, 200000,
                           106);

  const auto ab =
      id_vary_known(ds3, ds2, 3, 2, AuctionFormat::SecondPrice);
  const auto ba =
      id_vary_known(ds2, ds3, 2, 3, AuctionFormat::SecondPrice);
  CHECK(ab.proposition == "prop4");
  REQUIRE(ab.alpha_star.has_value());
  CHECK(std::abs(*ab.alpha_star - 0.4) <= 0.08);
  REQUIRE(ba.alpha_star.has_value());
  CHECK(std::abs(*ab.alpha_star - *ba.alpha_star) <= 1e-12);
}

TEST_CASE("derivative-ratio estimator splits the bidder-count mixture") {
  const auto design = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.3);
  InfoStructure info;
  info.observe_nobs = true;
  const auto ds = make_ds(design, PopulationSpec::of({{2, 0.5}, {3, 0.5}}),
                          info, 200000, 107);
  const auto res = id_fp_vary_unknown(ds);
  CHECK(res.proposition == "prop5");
  CHECK(res.n_recovered == 3);
  REQUIRE(res.alpha_star.has_value());
  CHECK(std::abs(*res.alpha_star - 0.3) <= 0.05);
  REQUIRE(res.diagnostics.residuals.count("p_hat"));
  CHECK(std::abs(res.diagnostics.residuals.at("p_hat") - 0.4737) <= 0.05);
}

TEST_CASE("back-substitution set contains the truth") {
  const auto design = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.3);
  InfoStructure info;
  info.observe_nobs = true;
  info.observe_invalid_count = true;
  const auto ds = make_ds(design, PopulationSpec::of({{1, 0.2}, {2, 0.4}, {3, 0.4}}),
                          info, 100000, 108);
  const auto res = id_sp_vary_invalid_set(ds);
  CHECK(res.proposition == "prop6");
  CHECK_FALSE(res.alpha_set.empty());
  CHECK(set_contains(res.alpha_set, 0.3, 0.005));
  CHECK(res.diagnostics.tuning.at("grid_step") == 0.002);
}

TEST_CASE("entry-cost recovery with known N") {
  const double truth = entry_threshold(kUnif, 3, 0.1);

  const auto sp_design = AuctionDesign::entry(AuctionFormat::SecondPrice, 0.1);
  const auto sp_ds = make_ds(sp_design, PopulationSpec::degenerate(3), {},
                             200000, 109);
  const auto sp_res = id_entry_fixed(sp_ds, 3, AuctionFormat::SecondPrice);
  CHECK(sp_res.proposition == "prop7");
  REQUIRE(sp_res.alpha_star.has_value());
  CHECK(std::abs(*sp_res.alpha_star - truth) <= 0.02);
  REQUIRE(sp_res.entry_cost.has_value());
  CHECK(std::abs(*sp_res.entry_cost - 0.1) <= 0.05);

  const auto fp_design = AuctionDesign::entry(AuctionFormat::FirstPrice, 0.1);
  InfoStructure info;
  info.observe_invalid_count = true;
  const auto fp_ds = make_ds(fp_design, PopulationSpec::degenerate(3), info,
                             200000, 110);
  const auto fp_res = id_entry_fixed(fp_ds, 3, AuctionFormat::FirstPrice);
  REQUIRE(fp_res.alpha_star.has_value());
  CHECK(std::abs(*fp_res.alpha_star - truth) <= 0.02);

  // Without the invalid count the first-price threshold is invisible.
  const auto blind_ds = make_ds(fp_design, PopulationSpec::degenerate(3), {},
                                50000, 111);
  CHECK_THROWS_AS(id_entry_fixed(blind_ds, 3, AuctionFormat::FirstPrice),
                  NotIdentifiedError);
}

TEST_CASE("two-equation entry set accepts the true threshold pair") {
  const auto design = AuctionDesign::entry(AuctionFormat::SecondPrice, 0.1);
  const auto ds3 = make_ds(design, PopulationSpec::degenerate(3), {}, 50000,
                           112);
  const auto ds2 = make_ds(design, PopulationSpec::degenerate(2), {}, 50000,
                           113);
  const auto res =
      id_entry_vary_known_set(ds3, ds2, 3, 2, AuctionFormat::SecondPrice);
  CHECK(res.proposition == "prop9");
  REQUIRE_FALSE(res.accepted_pairs.empty());
  const double t1 = entry_threshold(kUnif, 3, 0.1);
  const double t2 = entry_threshold(kUnif, 2, 0.1);
  bool found = false;
  for (const auto& [a, b] : res.accepted_pairs) {
    found = found || (std::abs(a - t1) <= 0.01 && std::abs(b - t2) <= 0.01);
  }
  CHECK(found);
  REQUIRE(res.entry_cost.has_value());
  CHECK(std::abs(*res.entry_cost - 0.1) <= 0.05);
}

TEST_CASE("unknown varying N under entry costs") {
  InfoStructure info;
  info.observe_nobs = true;
  const auto pop = PopulationSpec::of({{2, 0.5}, {3, 0.5}});

  const auto fp_design = AuctionDesign::entry(AuctionFormat::FirstPrice, 0.1);
  const auto fp_ds = make_ds(fp_design, pop, info, 200000, 114);
  const auto fp_res = id_entry_vary_unknown(fp_ds, AuctionFormat::FirstPrice);
  CHECK(fp_res.proposition == "prop10");
  CHECK(fp_res.n_recovered == 3);
  REQUIRE(fp_res.alpha_star.has_value());
  CHECK(std::abs(*fp_res.alpha_star - entry_threshold(kUnif, 3, 0.1)) <= 0.05);

  const auto sp_design = AuctionDesign::entry(AuctionFormat::SecondPrice, 0.1);
  const auto sp_ds = make_ds(sp_design, pop, info, 100000, 115);
  const auto sp_res = id_entry_vary_unknown(sp_ds, AuctionFormat::SecondPrice);
  CHECK_FALSE(sp_res.accepted_pairs.empty());
  const double t_hi = entry_threshold(kUnif, 3, 0.1);
  const double t_lo = entry_threshold(kUnif, 2, 0.1);
  bool found = false;
  for (const auto& [a, b] : sp_res.accepted_pairs) {
    found = found || (std::abs(a - t_hi) <= 0.0125 && std::abs(b - t_lo) <= 0.0125);
  }
  CHECK(found);
}

TEST_CASE("estimators report missing observables instead of guessing") {
  const auto sp_reserve = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.3);
  InfoStructure dropped;
  dropped.drop_at_reserve = true;
  const auto no_atom = make_ds(sp_reserve, PopulationSpec::degenerate(3),
                               dropped, 20000, 116);
  CHECK_THROWS_AS(id_sp_fixed_price_only(no_atom, 3), NotIdentifiedError);

  const auto fp_reserve = AuctionDesign::reserve(AuctionFormat::FirstPrice, 0.3);
  const auto no_invalid = make_ds(fp_reserve, PopulationSpec::degenerate(3),
                                  {}, 20000, 117);
  CHECK_THROWS_AS(id_fp_fixed_invalid(no_invalid, 3), NotIdentifiedError);
  CHECK_THROWS(id_fixed_nobs(no_invalid));

  InfoStructure counts_only;
  counts_only.observe_nobs = true;
  const auto sp_no_invalid = make_ds(sp_reserve, PopulationSpec::degenerate(3),
                                     counts_only, 20000, 118);
  CHECK_THROWS_AS(id_sp_vary_invalid_set(sp_no_invalid), NotIdentifiedError);

  ObservedDataset empty;
  CHECK_THROWS_AS(id_sp_fixed_price_only(empty, 3), InconsistentDataError);
}
