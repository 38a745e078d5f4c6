#include "truncauct/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "truncauct/rng.hpp"

namespace truncauct {

PopulationSpec PopulationSpec::degenerate(int n) {
  PopulationSpec pop;
  pop.support = {{n, 1.0}};
  pop.validate();
  return pop;
}

PopulationSpec PopulationSpec::of(std::vector<std::pair<int, double>> support) {
  PopulationSpec pop;
  pop.support = std::move(support);
  pop.validate();
  return pop;
}

int PopulationSpec::n_max() const {
  int best = 0;
  for (const auto& [n, p] : support) best = std::max(best, n);
  return best;
}

void PopulationSpec::validate() const {
  if (support.empty()) {
    throw std::invalid_argument("PopulationSpec: empty support");
  }
  double total = 0.0;
  int prev = 0;
  for (const auto& [n, p] : support) {
    if (n < 1) throw std::invalid_argument("PopulationSpec: counts must be >= 1");
    if (n <= prev) {
      throw std::invalid_argument(
          "PopulationSpec: counts must be strictly increasing");
    }
    if (!(p > 0.0)) {
      throw std::invalid_argument("PopulationSpec: probabilities must be positive");
    }
    prev = n;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("PopulationSpec: probabilities must sum to 1");
  }
}

std::vector<RawAuction> simulate(const ValueDistribution& dist,
                                 const AuctionDesign& design,
                                 const PopulationSpec& pop,
                                 std::uint64_t l_total, std::uint64_t seed) {
  pop.validate();
  design.validate(dist);

  // Per-N screening thresholds and, for first-price, tabulated bid curves.
  std::map<int, double> thresholds;
  std::map<int, LinearInterp> bid_curves;
  for (const auto& [n, p] : pop.support) {
    thresholds[n] = design.threshold(dist, n);
    if (design.format == AuctionFormat::FirstPrice) {
      bid_curves.emplace(n, tabulate_fp_bid(dist, n, design));
    }
  }
  const double reserve_value = design.reserve_value(dist);

  std::vector<RawAuction> out;
  out.reserve(l_total);
  for (std::uint64_t id = 0; id < l_total; ++id) {
    SplitMix64 rng = SplitMix64::stream(seed, id);
    RawAuction a;
    a.auction_id = id;

    double u = rng.uniform01();
    a.n = pop.support.back().first;
    double acc = 0.0;
    for (const auto& [n, p] : pop.support) {
      acc += p;
      if (u < acc) {
        a.n = n;
        break;
      }
    }

    const double threshold = thresholds[a.n];
    a.types.resize(a.n);
    for (int i = 0; i < a.n; ++i) a.types[i] = rng.uniform01();

    a.bids.assign(a.n, std::numeric_limits<double>::quiet_NaN());
    double top = -1.0, second = -1.0;
    for (int i = 0; i < a.n; ++i) {
      const double t = a.types[i];
      if (t < threshold) continue;
      ++a.n_act;
      if (t > top) {
        second = top;
        top = t;
      } else if (t > second) {
        second = t;
      }
    }

    if (design.format == AuctionFormat::FirstPrice) {
      const LinearInterp& curve = bid_curves.at(a.n);
      for (int i = 0; i < a.n; ++i) {
        if (a.types[i] >= threshold) a.bids[i] = curve.eval(a.types[i]);
      }
      if (a.n_act >= 1) a.transaction_price = curve.eval(top);
    } else {
      for (int i = 0; i < a.n; ++i) {
        if (a.types[i] >= threshold) a.bids[i] = dist.quantile(a.types[i]);
      }
      if (a.n_act >= 2) {
        a.transaction_price = dist.quantile(second);
      } else if (a.n_act == 1) {
        // Lone active bidder pays the reserve (or 0 under entry costs),
        // written verbatim so the price atom is bit-exact.
        a.transaction_price = reserve_value;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

ObservedDataset observe(const std::vector<RawAuction>& raw,
                        const InfoStructure& info, AuctionFormat format,
                        TruncationKind truncation, double reserve_value) {
  ObservedDataset ds;
  ds.info = info;
  ds.format = format;
  ds.truncation = truncation;
  std::uint64_t invalid = 0;
  for (const RawAuction& a : raw) {
    if (!a.transaction_price.has_value()) {
      ++invalid;
      continue;
    }
    const double price = *a.transaction_price;
    if (info.drop_at_reserve && format == AuctionFormat::SecondPrice &&
        std::abs(price - reserve_value) <= 1e-12) {
      continue;
    }
    ObservedRow row;
    row.auction_id = a.auction_id;
    row.transaction_price = price;
    if (info.observe_nobs) row.n_obs = a.n_act;
    ds.rows.push_back(row);
  }
  ds.l = ds.rows.size();
  if (info.observe_invalid_count) ds.l_invalid = invalid;
  return ds;
}

std::vector<RawAuction> replay_recorded_bids(
    const std::vector<std::vector<double>>& bids_per_auction,
    AuctionFormat format, double reserve_value) {
  std::vector<RawAuction> out;
  out.reserve(bids_per_auction.size());
  std::uint64_t id = 0;
  for (const std::vector<double>& bids : bids_per_auction) {
    RawAuction a;
    a.auction_id = id++;
    a.n = static_cast<int>(bids.size());
    a.bids = bids;
    double top = -std::numeric_limits<double>::infinity();
    double second = top;
    for (double b : bids) {
      if (b < reserve_value) continue;
      ++a.n_act;
      if (b > top) {
        second = top;
        top = b;
      } else if (b > second) {
        second = b;
      }
    }
    if (format == AuctionFormat::FirstPrice) {
      if (a.n_act >= 1) a.transaction_price = top;
    } else {
      if (a.n_act >= 2) {
        a.transaction_price = second;
      } else if (a.n_act == 1) {
        a.transaction_price = reserve_value;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace truncauct
