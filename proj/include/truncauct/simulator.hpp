#ifndef TRUNCAUCT_SIMULATOR_HPP
#define TRUNCAUCT_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "truncauct/equilibrium.hpp"

namespace truncauct {

// Distribution of the number of potential bidders across auctions.
struct PopulationSpec {
  std::vector<std::pair<int, double>> support;  // (N, probability)

  static PopulationSpec degenerate(int n);
  static PopulationSpec of(std::vector<std::pair<int, double>> support);

  int n_max() const;
  void validate() const;
};

// Which fields of each auction make it into the released dataset.
// Transaction prices of valid auctions are always observed.
struct InfoStructure {
  bool observe_nobs = false;
  bool observe_invalid_count = false;
  // Second-price only: discard rows whose price sits exactly at the
  // reserve value, keeping strictly higher prices.
  bool drop_at_reserve = false;
};

// Ground-truth record of one auction before any observability filtering.
struct RawAuction {
  std::uint64_t auction_id = 0;
  int n = 0;                   // potential bidders
  std::vector<double> types;   // quantile-space draws, one per potential bidder
  std::vector<double> bids;    // NaN for bidders below the threshold
  std::optional<double> transaction_price;
  int n_act = 0;
};

struct ObservedRow {
  std::uint64_t auction_id = 0;
  double transaction_price = 0.0;
  std::optional<int> n_obs;
};

struct ObservedDataset {
  std::vector<ObservedRow> rows;
  std::uint64_t l = 0;  // number of rows
  std::optional<std::uint64_t> l_invalid;
  InfoStructure info;
  // Design echo: mechanism kinds only, never the true parameters.
  AuctionFormat format = AuctionFormat::SecondPrice;
  TruncationKind truncation = TruncationKind::Reserve;
};

// Draws L_total auctions. Each one draws N from pop, then N iid
// Uniform[0,1] types, and prices the auction with the equilibrium bid
// functions at the true N. Deterministic given seed, independent of
// generation order (per-auction RNG substreams).
std::vector<RawAuction> simulate(const ValueDistribution& dist,
                                 const AuctionDesign& design,
                                 const PopulationSpec& pop,
                                 std::uint64_t l_total, std::uint64_t seed);

// Applies the observability filter: drops invalid auctions, masks n_obs,
// optionally drops second-price rows at the reserve value. reserve_value
// must be the design's single-active-bidder price (V(alpha0) or 0).
ObservedDataset observe(const std::vector<RawAuction>& raw,
                        const InfoStructure& info, AuctionFormat format,
                        TruncationKind truncation, double reserve_value);

// Observability pass over externally recorded bid vectors, taken verbatim
// (no equilibrium mapping): a bidder is active iff bid >= reserve_value.
std::vector<RawAuction> replay_recorded_bids(
    const std::vector<std::vector<double>>& bids_per_auction,
    AuctionFormat format, double reserve_value);

}  // namespace truncauct

#endif  // TRUNCAUCT_SIMULATOR_HPP
