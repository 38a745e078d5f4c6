#ifndef TRUNCAUCT_EQUILIBRIUM_HPP
#define TRUNCAUCT_EQUILIBRIUM_HPP

#include <vector>

#include "truncauct/distributions.hpp"
#include "truncauct/numeric.hpp"

namespace truncauct {

enum class AuctionFormat { FirstPrice, SecondPrice };
enum class TruncationKind { Reserve, EntryCost };

// A format plus one truncation mechanism: either a reserve price screening
// out types below quantile alpha0, or a fixed cost paid by entrants.
struct AuctionDesign {
  AuctionFormat format = AuctionFormat::SecondPrice;
  TruncationKind truncation = TruncationKind::Reserve;
  double alpha0 = 0.0;  // Reserve only, in [0,1)
  double cost = 0.0;    // EntryCost only, in (0, V(1))

  static AuctionDesign reserve(AuctionFormat format, double alpha0);
  static AuctionDesign entry(AuctionFormat format, double cost);

  // Screening quantile for a given N; the entry threshold depends on N,
  // the reserve one does not.
  double threshold(const ValueDistribution& dist, int n) const;
  // Price recorded when a single active bidder wins a second-price
  // auction: V(alpha0) under a reserve, 0 under entry costs.
  double reserve_value(const ValueDistribution& dist) const;
  // Checks cost against the distribution's upper support.
  void validate(const ValueDistribution& dist) const;
};

// First-price equilibrium bid of the type at quantile alpha when types
// below alpha0 are screened out:
//   b(alpha; alpha0) = V(alpha) - A(alpha0, alpha) / alpha^(N-1),
//   A(a, b) = integral of V'(t) t^(N-1) over [a, b].
double fp_bid_reserve(const ValueDistribution& dist, int n, double alpha0,
                      double alpha);

// d b(alpha; alpha0) / d alpha0 = (alpha0/alpha)^(N-1) * V'(alpha0).
double fp_bid_reserve_sensitivity(const ValueDistribution& dist, int n,
                                  double alpha0, double alpha);

// Unique root of V(alpha) alpha^(N-1) = F. For N = 1 this is V(alpha) = F.
double entry_threshold(const ValueDistribution& dist, int n, double cost);

// First-price bid under an entry cost F: zero at the entry threshold,
//   b(alpha) = V(alpha) - (F + A(threshold, alpha)) / alpha^(N-1).
double fp_bid_entry(const ValueDistribution& dist, int n, double cost,
                    double alpha);

// Bidding the true value is weakly dominant in second-price auctions.
double sp_bid(const ValueDistribution& dist, double alpha);

enum class RegularityPolicy { Reject, Warn };

// First-order condition bracket for the seller's screening choice. Strictly
// decreasing under regularity, so its root is the unique optimum. The
// first-price bracket depends on a bid function and therefore on
// n_for_bid; the second-price one does not.
double screening_foc(const ValueDistribution& dist,
                     const SellerPreferences& prefs, AuctionFormat format,
                     double alpha, int n_for_bid = 2);

// Seller's optimal screening level: 0 when the FOC bracket is already
// non-positive near zero, otherwise the bisection root of the bracket.
double optimal_screening(const ValueDistribution& dist,
                         const SellerPreferences& prefs, AuctionFormat format,
                         RegularityPolicy policy = RegularityPolicy::Reject,
                         int n_for_bid = 2);

// Seller's expected utility when screening at quantile alpha with N
// potential bidders.
double seller_payoff(const ValueDistribution& dist,
                     const SellerPreferences& prefs, AuctionFormat format,
                     int n, double alpha);

// seller_payoff evaluated at grid_points equally spaced alphas on [0,1].
// Same quantities as the pointwise routine, organized around shared prefix
// integrals so that dense scans stay affordable.
std::vector<double> seller_payoff_grid(const ValueDistribution& dist,
                                       const SellerPreferences& prefs,
                                       AuctionFormat format, int n,
                                       int grid_points);

// Tabulated first-price bid curve on [threshold, 1], used for bulk pricing
// in the simulator. Cumulative Simpson on a uniform knot grid.
LinearInterp tabulate_fp_bid(const ValueDistribution& dist, int n,
                             const AuctionDesign& design, int knots = 4097);

}  // namespace truncauct

#endif  // TRUNCAUCT_EQUILIBRIUM_HPP
