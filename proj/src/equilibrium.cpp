#include "truncauct/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace truncauct {

namespace {

// Integrand of the bid-shading term, with the removable 0*inf at t=0
// patched by its limit (the product vanishes for N >= 2).
double shading_integrand(const ValueDistribution& dist, int n, double t) {
  if (t <= 0.0) return 0.0;
  return dist.quantile_deriv(t) * std::pow(t, n - 1);
}

double shading_integral(const ValueDistribution& dist, int n, double a,
                        double b) {
  return integrate(
      [&dist, n](double t) { return shading_integrand(dist, n, t); }, a, b);
}

void check_n_bidders(int n, int min_n) {
  if (n < min_n) throw std::invalid_argument("equilibrium: too few bidders");
}

}  // namespace

AuctionDesign AuctionDesign::reserve(AuctionFormat format, double alpha0) {
  if (!(alpha0 >= 0.0 && alpha0 < 1.0)) {
    throw std::invalid_argument("AuctionDesign: reserve quantile must lie in [0,1)");
  }
  AuctionDesign d;
  d.format = format;
  d.truncation = TruncationKind::Reserve;
  d.alpha0 = alpha0;
  return d;
}

AuctionDesign AuctionDesign::entry(AuctionFormat format, double cost) {
  if (!(cost > 0.0) || !std::isfinite(cost)) {
    throw std::invalid_argument("AuctionDesign: entry cost must be positive");
  }
  AuctionDesign d;
  d.format = format;
  d.truncation = TruncationKind::EntryCost;
  d.cost = cost;
  return d;
}

double AuctionDesign::threshold(const ValueDistribution& dist, int n) const {
  if (truncation == TruncationKind::Reserve) return alpha0;
  return entry_threshold(dist, n, cost);
}

double AuctionDesign::reserve_value(const ValueDistribution& dist) const {
  if (truncation == TruncationKind::Reserve) return dist.quantile(alpha0);
  return 0.0;
}

void AuctionDesign::validate(const ValueDistribution& dist) const {
  if (truncation == TruncationKind::EntryCost &&
      !(cost < dist.quantile(1.0))) {
    throw std::invalid_argument(
        "AuctionDesign: entry cost must be below the top value V(1)");
  }
}

double fp_bid_reserve(const ValueDistribution& dist, int n, double alpha0,
                      double alpha) {
  check_n_bidders(n, 2);
  if (!(alpha0 >= 0.0 && alpha0 < 1.0)) {
    throw std::domain_error("fp_bid_reserve: alpha0 outside [0,1)");
  }
  if (!(alpha >= alpha0 && alpha <= 1.0)) {
    throw std::domain_error("fp_bid_reserve: alpha outside [alpha0, 1]");
  }
  if (alpha == alpha0) return dist.quantile(alpha0);
  const double shading = shading_integral(dist, n, alpha0, alpha);
  return dist.quantile(alpha) - shading / std::pow(alpha, n - 1);
}

double fp_bid_reserve_sensitivity(const ValueDistribution& dist, int n,
                                  double alpha0, double alpha) {
  check_n_bidders(n, 2);
  if (!(alpha0 >= 0.0 && alpha0 < 1.0)) {
    throw std::domain_error("fp_bid_reserve_sensitivity: alpha0 outside [0,1)");
  }
  if (!(alpha >= alpha0 && alpha <= 1.0) || alpha == 0.0) {
    throw std::domain_error(
        "fp_bid_reserve_sensitivity: alpha outside [alpha0, 1]");
  }
  if (alpha0 == 0.0) return 0.0;
  return std::pow(alpha0 / alpha, n - 1) * dist.quantile_deriv(alpha0);
}

double entry_threshold(const ValueDistribution& dist, int n, double cost) {
  check_n_bidders(n, 1);
  if (!(cost > 0.0) || !(cost < dist.quantile(1.0))) {
    throw std::domain_error(
        "entry_threshold: no root, entry cost must lie in (0, V(1))");
  }
  const auto gap = [&dist, n, cost](double a) {
    return dist.quantile(a) * std::pow(a, n - 1) - cost;
  };
  if (gap(0.0) >= 0.0) return 0.0;  // cost at or below the lower support, N=1
  return bisect(gap, 0.0, 1.0, 1e-12, 200);
}

double fp_bid_entry(const ValueDistribution& dist, int n, double cost,
                    double alpha) {
  check_n_bidders(n, 2);
  const double threshold = entry_threshold(dist, n, cost);
  if (alpha < threshold - 1e-9 || alpha > 1.0) {
    throw std::domain_error("fp_bid_entry: alpha below the entry threshold");
  }
  if (alpha < threshold) alpha = threshold;
  const double shading = cost + shading_integral(dist, n, threshold, alpha);
  return dist.quantile(alpha) - shading / std::pow(alpha, n - 1);
}

double sp_bid(const ValueDistribution& dist, double alpha) {
  return dist.quantile(alpha);
}

double screening_foc(const ValueDistribution& dist,
                     const SellerPreferences& prefs, AuctionFormat format,
                     double alpha, int n_for_bid) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("screening_foc: alpha outside (0,1)");
  }
  const double u0 = prefs.utility(prefs.outside_value());
  const double v = dist.quantile(alpha);
  if (format == AuctionFormat::SecondPrice) {
    return u0 + prefs.marginal_utility(v) * dist.quantile_deriv(alpha) *
                    (1.0 - alpha) - prefs.utility(v);
  }
  check_n_bidders(n_for_bid, 2);
  const double tail = integrate(
      [&](double t) {
        return prefs.marginal_utility(
            fp_bid_reserve(dist, n_for_bid, alpha, t));
      },
      alpha, 1.0);
  return u0 - prefs.utility(v) + dist.quantile_deriv(alpha) * tail;
}

double optimal_screening(const ValueDistribution& dist,
                         const SellerPreferences& prefs, AuctionFormat format,
                         RegularityPolicy policy, int n_for_bid) {
  if (!(prefs.outside_value() < dist.quantile(1.0))) {
    throw std::invalid_argument(
        "optimal_screening: outside value must be below the top value V(1)");
  }
  const RegularityReport reg = dist.check_regularity(200);
  if (!reg.regular && policy == RegularityPolicy::Reject) {
    throw std::domain_error(
        "optimal_screening: virtual value is not strictly increasing on the "
        "solver grid, so the screening optimum may not be unique");
  }
  const double lo = 1e-9;
  const double hi = 1.0 - 1e-9;
  const auto g = [&](double a) {
    return screening_foc(dist, prefs, format, a, n_for_bid);
  };
  if (g(lo) <= 0.0) return 0.0;
  return bisect(g, lo, hi, 1e-12, 200);
}

double seller_payoff(const ValueDistribution& dist,
                     const SellerPreferences& prefs, AuctionFormat format,
                     int n, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("seller_payoff: alpha outside [0,1]");
  }
  const double u0 = prefs.utility(prefs.outside_value());
  if (format == AuctionFormat::SecondPrice) {
    check_n_bidders(n, 1);
    double value = u0 * std::pow(alpha, n);
    value += prefs.utility(dist.quantile(alpha)) * n *
             std::pow(alpha, n - 1) * (1.0 - alpha);
    if (n >= 2 && alpha < 1.0) {
      value += n * (n - 1) *
               integrate(
                   [&](double t) {
                     return prefs.utility(dist.quantile(t)) *
                            std::pow(t, n - 2) * (1.0 - t);
                   },
                   alpha, 1.0);
    }
    return value;
  }
  check_n_bidders(n, 2);
  double value = u0 * std::pow(alpha, n);
  if (alpha < 1.0) {
    value += integrate(
        [&](double t) {
          if (t <= 0.0) return 0.0;
          return prefs.utility(fp_bid_reserve(dist, n, alpha, t)) * n *
                 std::pow(t, n - 1);
        },
        alpha, 1.0);
  }
  return value;
}

namespace {

// Cumulative shading integral on the grid, each panel by Simpson with a
// midpoint evaluation. The leftmost panel integrates adaptively: quantile
// slopes may be unbounded at 0.
std::vector<double> cumulative_shading(const ValueDistribution& dist, int n,
                                       const std::vector<double>& alpha) {
  const std::size_t g = alpha.size();
  std::vector<double> cum(g, 0.0);
  if (g > 1) cum[1] = shading_integral(dist, n, alpha[0], alpha[1]);
  for (std::size_t k = 2; k < g; ++k) {
    const double a = alpha[k - 1];
    const double b = alpha[k];
    const double m = 0.5 * (a + b);
    cum[k] = cum[k - 1] +
             (b - a) / 6.0 *
                 (shading_integrand(dist, n, a) +
                  4.0 * shading_integrand(dist, n, m) +
                  shading_integrand(dist, n, b));
  }
  return cum;
}

}  // namespace

std::vector<double> seller_payoff_grid(const ValueDistribution& dist,
                                       const SellerPreferences& prefs,
                                       AuctionFormat format, int n,
                                       int grid_points) {
  if (grid_points < 3) {
    throw std::invalid_argument("seller_payoff_grid: need at least 3 points");
  }
  const std::size_t g = static_cast<std::size_t>(grid_points);
  const double h = 1.0 / (grid_points - 1);
  // Fine grid at half steps so every output panel carries a Simpson
  // midpoint; output point j sits at fine index 2j.
  const std::size_t gf = 2 * g - 1;
  std::vector<double> af(gf);
  for (std::size_t m = 0; m < gf; ++m) af[m] = 0.5 * h * m;
  af.back() = 1.0;

  const double u0 = prefs.utility(prefs.outside_value());
  std::vector<double> payoff(g, 0.0);

  if (format == AuctionFormat::SecondPrice) {
    check_n_bidders(n, 1);
    const auto w = [&](double t) {
      return prefs.utility(dist.quantile(t)) * std::pow(t, n - 2) * (1.0 - t);
    };
    std::vector<double> suffix(g, 0.0);
    if (n >= 2) {
      std::vector<double> wf(gf);
      for (std::size_t m = 0; m < gf; ++m) wf[m] = w(af[m]);
      for (std::size_t j = g - 1; j-- > 0;) {
        // Leftmost panel adaptively: U(V(t)) may have an unbounded slope
        // at 0.
        const std::size_t m = 2 * j;
        const double panel =
            j == 0 ? integrate(w, af[0], af[2])
                   : h / 6.0 * (wf[m] + 4.0 * wf[m + 1] + wf[m + 2]);
        suffix[j] = suffix[j + 1] + panel;
      }
    }
    for (std::size_t j = 0; j < g; ++j) {
      const double a = af[2 * j];
      payoff[j] = u0 * std::pow(a, n) +
                  prefs.utility(dist.quantile(a)) * n * std::pow(a, n - 1) *
                      (1.0 - a) +
                  n * (n - 1) * suffix[j];
    }
    return payoff;
  }

  check_n_bidders(n, 2);
  std::vector<double> vf(gf), npwf(gf), ipwf(gf);
  for (std::size_t m = 0; m < gf; ++m) {
    vf[m] = dist.quantile(af[m]);
    const double pw = std::pow(af[m], n - 1);
    npwf[m] = n * pw;
    ipwf[m] = (pw > 0.0) ? 1.0 / pw : 0.0;
  }
  const std::vector<double> cumf = cumulative_shading(dist, n, af);

  if (prefs.kind() == UtilityKind::RiskNeutral) {
    // U(b) integrates in closed decomposition:
    //   integral of (V - (cum - cum_j)/a^(N-1)) N a^(N-1)
    //     = suffix integral of [V npw - N cum] + N cum_j (1 - alpha_j).
    std::vector<double> core(gf);
    for (std::size_t m = 0; m < gf; ++m) {
      core[m] = vf[m] * npwf[m] - n * cumf[m];
    }
    std::vector<double> t1(g, 0.0);
    for (std::size_t j = g - 1; j-- > 0;) {
      const std::size_t m = 2 * j;
      t1[j] = t1[j + 1] + h / 6.0 * (core[m] + 4.0 * core[m + 1] + core[m + 2]);
    }
    for (std::size_t j = 0; j < g; ++j) {
      const double a = af[2 * j];
      payoff[j] = u0 * std::pow(a, n) + t1[j] + n * cumf[2 * j] * (1.0 - a);
    }
    return payoff;
  }

  // General utilities leave no closed decomposition; each screening level
  // rebuilds its bid curve, so this path is quadratic in the grid size.
  const bool sqrt_utility =
      prefs.kind() == UtilityKind::Crra && prefs.crra_rho() == 0.5;
  for (std::size_t j = 0; j < g; ++j) {
    const double cj = cumf[2 * j];
    const auto f = [&](std::size_t m) {
      const double b = vf[m] - (cumf[m] - cj) * ipwf[m];
      const double bb = b > 0.0 ? b : 0.0;
      return (sqrt_utility ? std::sqrt(bb) : prefs.utility(bb)) * npwf[m];
    };
    double sum = 0.0;
    double left = f(2 * j);
    for (std::size_t k = j; k + 1 < g; ++k) {
      const double right = f(2 * k + 2);
      sum += left + 4.0 * f(2 * k + 1) + right;
      left = right;
    }
    payoff[j] = u0 * std::pow(af[2 * j], n) + sum * h / 6.0;
  }
  return payoff;
}

LinearInterp tabulate_fp_bid(const ValueDistribution& dist, int n,
                             const AuctionDesign& design, int knots) {
  check_n_bidders(n, 2);
  if (knots < 2) throw std::invalid_argument("tabulate_fp_bid: need >= 2 knots");
  design.validate(dist);
  const double lo = design.threshold(dist, n);
  const double fixed =
      design.truncation == TruncationKind::EntryCost ? design.cost : 0.0;
  std::vector<double> alpha(knots), bid(knots);
  for (int k = 0; k < knots; ++k) {
    alpha[k] = lo + (1.0 - lo) * static_cast<double>(k) / (knots - 1);
  }
  alpha.back() = 1.0;
  const std::vector<double> cum = cumulative_shading(dist, n, alpha);
  for (int k = 0; k < knots; ++k) {
    const double pw = std::pow(alpha[k], n - 1);
    if (pw == 0.0) {
      bid[k] = dist.quantile(alpha[k]);
    } else {
      bid[k] = dist.quantile(alpha[k]) - (fixed + cum[k]) / pw;
    }
  }
  // The boundary bid is exact by construction: V(a0) under a reserve, 0 at
  // the entry threshold.
  bid.front() = design.truncation == TruncationKind::EntryCost
                    ? 0.0
                    : dist.quantile(lo);
  return LinearInterp(std::move(alpha), std::move(bid));
}

}  // namespace truncauct
