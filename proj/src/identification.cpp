#include "truncauct/identification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "truncauct/numeric.hpp"
#include "truncauct/rng.hpp"

namespace truncauct {

namespace {

// Stable factored forms near a = 1, where the raw differences cancel
// catastrophically:
//   1 - a^n                 = (1 - a)   * geom_sum(n, a)
//   1 - phi_second_highest  = (1 - a)^2 * geom_weighted_sum(n, a)

// 1 + a + ... + a^(n-1)
double geom_sum(int n, double a) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s = s * a + 1.0;
  return s;
}

// 1 + 2a + ... + (n-1) a^(n-2)
double geom_weighted_sum(int n, double a) {
  double s = 0.0;
  for (int k = n - 1; k >= 1; --k) s = s * a + k;
  return s;
}

}  // namespace

double phi_second_highest(int n, double a) {
  return n * std::pow(a, n - 1) - (n - 1) * std::pow(a, n);
}

double reserve_mass_curve(int n, double a) {
  return n * std::pow(a, n - 1) / geom_sum(n, a);
}

double all_active_share_curve(int n, double a) {
  return std::pow(1.0 - a, n - 1) / geom_sum(n, a);
}

namespace {

constexpr double kGridEdge = 1e-9;

void require(bool cond, const char* message) {
  if (!cond) throw std::invalid_argument(message);
}

double resolved_bw(const EmpiricalQuantile& t, const EstimatorOptions& opt) {
  return opt.bandwidth > 0.0 ? opt.bandwidth : t.default_bandwidth();
}

// Fraction of samples strictly below v.
double strict_cdf(const EmpiricalQuantile& t, double v) {
  return t.cdf(v) - t.mass_at(v, 0.0);
}

// Monotonicity pre-check on a 10^3 grid, then bisection. `increasing`
// states the expected direction; violations abort before inversion.
double invert_monotone(const std::function<double(double)>& f, double target,
                       bool increasing, const char* what) {
  const auto signed_f = [&](double a) {
    return increasing ? f(a) : -f(a);
  };
  if (!is_increasing_on_grid(signed_f, kGridEdge, 1.0 - kGridEdge, 1000)) {
    throw InconsistentDataError(std::string(what) +
                                ": inversion target is not monotone on the "
                                "check grid");
  }
  return bisect([&](double a) { return f(a) - target; }, kGridEdge,
                1.0 - kGridEdge, 1e-12, 200);
}

std::vector<double> output_alphas(double alpha_star, double step) {
  std::vector<double> out;
  double a = alpha_star;
  while (a < 1.0 - 1e-12) {
    out.push_back(a);
    a += step;
  }
  out.push_back(1.0);
  return out;
}

// Writes (alpha, V(alpha)) rows, then enforces monotonicity of the values
// by rearrangement, recording how much was moved.
void fill_v_grid(IdentificationResult& res, double alpha_star,
                 const std::function<double(double)>& curve, double step) {
  std::vector<double> values;
  const std::vector<double> alphas = output_alphas(alpha_star, step);
  values.reserve(alphas.size());
  for (double a : alphas) values.push_back(curve(a));
  const double moved = monotone_rearrange(values);
  res.diagnostics.rearranged = moved > 0.0;
  res.diagnostics.rearrange_frequency = moved;
  res.v_grid.clear();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    res.v_grid.emplace_back(alphas[i], values[i]);
  }
}

// First-price value recovery from the price quantile under a screening
// level a0: u(alpha) = (alpha^n - a0^n) / (1 - a0^n),
// V(alpha) = T(u) + (n/(n-1)) * alpha^n / denom * T'(u). The denominator is
// (1 - a0) as displayed, or (1 - a0^n) under the chain-rule variant.
std::function<double(double)> fp_value_curve(const EmpiricalQuantile& t,
                                             int n, double a0, bool chainrule,
                                             double bw) {
  const double a0n = std::pow(a0, n);
  const double denom = chainrule ? (1.0 - a0n) : (1.0 - a0);
  return [&t, n, a0n, denom, bw](double alpha) {
    const double an = std::pow(alpha, n);
    const double u = (an - a0n) / (1.0 - a0n);
    return t.eval(u) +
           (static_cast<double>(n) / (n - 1)) * an / denom * t.deriv(u, bw);
  };
}

// Second-price value recovery from prices strictly above the atom:
// V(alpha) = T2((phi(alpha) - phi(a0)) / (1 - phi(a0))).
std::function<double(double)> sp_value_curve(const EmpiricalQuantile& t2,
                                             int n, double a0) {
  const double p0 = phi_second_highest(n, a0);
  return [&t2, n, p0](double alpha) {
    return t2.eval((phi_second_highest(n, alpha) - p0) / (1.0 - p0));
  };
}

// Value recovery from prices conditional on all nbar bidders active:
// w = (alpha - a0)/(1 - a0), V = T(w^nbar) +
// (nbar/(nbar-1)) w^(nbar-1) (alpha/(1-a0)) T'(w^nbar).
std::function<double(double)> vary_fp_value_curve(const EmpiricalQuantile& t,
                                                  int nbar, double a0,
                                                  double bw) {
  // Conditional on all nbar active, the top type sits at w on [a0, 1] and
  // the price quantile is T(w^nbar). Differentiate in w, where the curve
  // is the bid function under an affine map and stays smooth; in u the
  // slope blows up like u^(1/nbar - 1) at the bottom and a windowed
  // estimate would average the singularity away.
  return [&t, nbar, a0, bw](double alpha) {
    const double w =
        std::min(std::max((alpha - a0) / (1.0 - a0), 0.0), 1.0);
    const double lo = std::max(w - bw, 0.0);
    const double hi = std::min(w + bw, 1.0);
    const double slope = (t.eval(std::pow(hi, nbar)) -
                          t.eval(std::pow(lo, nbar))) /
                         (hi - lo);
    return t.eval(std::pow(w, nbar)) +
           (alpha / (nbar - 1)) * slope / (1.0 - a0);
  };
}

// Conditional on all nbar active in a second-price auction, the price is
// the second-highest of nbar types uniform above a0.
std::function<double(double)> vary_sp_value_curve(const EmpiricalQuantile& t,
                                                  int nbar, double a0) {
  return [&t, nbar, a0](double alpha) {
    const double w = std::max((alpha - a0) / (1.0 - a0), 0.0);
    return t.eval(phi_second_highest(nbar, w));
  };
}

std::vector<double> rows_with_nobs_at_least(const ObservedDataset& ds, int k) {
  std::vector<double> out;
  for (const ObservedRow& row : ds.rows) {
    if (row.n_obs.has_value() && *row.n_obs >= k) {
      out.push_back(row.transaction_price);
    }
  }
  return out;
}

// Deterministic 10-way partition of a sorted sample. Keyed by the sorted
// index so every fold complement is itself sorted.
constexpr int kFolds = 10;

int fold_of(std::uint64_t array_id, std::size_t index) {
  return static_cast<int>(SplitMix64::mix(array_id * 0x9e3779b97f4a7c15ULL +
                                          index) %
                          kFolds);
}

std::vector<double> fold_complement(const std::vector<double>& sorted,
                                    std::uint64_t array_id, int fold) {
  std::vector<double> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (fold_of(array_id, i) != fold) out.push_back(sorted[i]);
  }
  return out;
}

// Delete-a-group jackknife standard error over kFolds replicates.
double jackknife_se(const std::vector<double>& replicates) {
  const double g = static_cast<double>(replicates.size());
  double mean = 0.0;
  for (double r : replicates) mean += r;
  mean /= g;
  double ss = 0.0;
  for (double r : replicates) ss += (r - mean) * (r - mean);
  return std::sqrt((g - 1.0) / g * ss);
}

double scale_of(double lhs, double rhs) {
  return std::max(0.5 * (std::abs(lhs) + std::abs(rhs)), 1e-12);
}

// Groups an increasing sequence of accepted grid values into maximal
// intervals (grid spacing `step`).
std::vector<AlphaInterval> group_intervals(std::vector<double> accepted,
                                           double step) {
  std::vector<AlphaInterval> out;
  if (accepted.empty()) return out;
  std::sort(accepted.begin(), accepted.end());
  accepted.erase(std::unique(accepted.begin(), accepted.end()),
                 accepted.end());
  AlphaInterval cur{accepted.front(), accepted.front()};
  for (std::size_t i = 1; i < accepted.size(); ++i) {
    if (accepted[i] - cur.hi <= step * 1.5) {
      cur.hi = accepted[i];
    } else {
      out.push_back(cur);
      cur = {accepted[i], accepted[i]};
    }
  }
  out.push_back(cur);
  return out;
}

void fill_v_band(IdentificationResult& res,
                 const std::function<double(double)>& curve_lo_endpoint,
                 const std::function<double(double)>& curve_hi_endpoint,
                 double alpha_from, double step) {
  for (double a : output_alphas(alpha_from, step)) {
    const double v1 = curve_lo_endpoint(a);
    const double v2 = curve_hi_endpoint(a);
    res.v_band.push_back({a, std::min(v1, v2), std::max(v1, v2)});
  }
}

}  // namespace

IdentificationResult id_sp_fixed_price_only(const ObservedDataset& ds, int n,
                                            const EstimatorOptions& opt) {
  require(ds.format == AuctionFormat::SecondPrice,
          "prop1 applies to second-price data");
  require(ds.truncation == TruncationKind::Reserve,
          "prop1 applies to reserve-price truncation");
  require(n >= 2, "prop1 needs N >= 2");
  if (ds.info.drop_at_reserve) {
    throw NotIdentifiedError(
        "prop1 inverts the price mass at the reserve; rows at the reserve "
        "were dropped from this data");
  }
  if (ds.rows.empty()) throw InconsistentDataError("prop1: empty dataset");

  IdentificationResult res;
  res.proposition = "prop1";
  res.diagnostics.tuning["mass_eps"] = opt.mass_eps;

  EmpiricalQuantile q(prices(ds));
  const double atom = q.min();
  const double mass = q.mass_at(atom, opt.mass_eps);
  const std::uint64_t atom_count =
      static_cast<std::uint64_t>(std::llround(mass * q.size()));

  if (atom_count <= 1) {
    res.alpha_star = 0.0;
    res.diagnostics.warnings.push_back(
        "no mass at the minimum price; treating the reserve as nonbinding");
    const auto curve = sp_value_curve(q, n, 0.0);
    fill_v_grid(res, 0.0, curve, opt.v_grid_step);
    return res;
  }
  if (mass >= reserve_mass_curve(n, 1.0 - kGridEdge)) {
    throw InconsistentDataError(
        "prop1: observed reserve-price mass exceeds the model maximum");
  }
  const double a_star = invert_monotone(
      [n](double a) { return reserve_mass_curve(n, a); }, mass, true, "prop1");
  res.alpha_star = a_star;
  res.diagnostics.residuals["mass_gap"] =
      reserve_mass_curve(n, a_star) - mass;

  const std::vector<double> above = prices_above(ds, atom);
  if (above.empty()) {
    throw InconsistentDataError("prop1: every price sits at the reserve");
  }
  EmpiricalQuantile t2(above);
  fill_v_grid(res, a_star, sp_value_curve(t2, n, a_star), opt.v_grid_step);
  return res;
}

IdentificationResult id_fp_fixed_invalid(const ObservedDataset& ds, int n,
                                         const EstimatorOptions& opt) {
  require(ds.format == AuctionFormat::FirstPrice,
          "prop2 applies to first-price data");
  require(ds.truncation == TruncationKind::Reserve,
          "prop2 applies to reserve-price truncation");
  require(n >= 2, "prop2 needs N >= 2");
  if (!ds.l_invalid.has_value()) {
    throw NotIdentifiedError(
        "prop2 requires the invalid-auction count; first-price transaction "
        "prices alone do not identify the reserve screening level");
  }
  if (ds.rows.empty()) throw InconsistentDataError("prop2: empty dataset");

  IdentificationResult res;
  res.proposition = "prop2";
  const double share = static_cast<double>(*ds.l_invalid) /
                       static_cast<double>(ds.l + *ds.l_invalid);
  const double a_star = std::pow(share, 1.0 / n);
  res.alpha_star = a_star;
  res.diagnostics.residuals["invalid_share"] = share;
  res.diagnostics.tuning["prop2_chainrule"] = opt.prop2_chainrule ? 1.0 : 0.0;

  EmpiricalQuantile t(prices(ds));
  const double bw = resolved_bw(t, opt);
  res.diagnostics.bandwidths["deriv"] = bw;
  fill_v_grid(res, a_star,
              fp_value_curve(t, n, a_star, opt.prop2_chainrule, bw),
              opt.v_grid_step);

  // Size of the open question: gap between the displayed factor and the
  // chain-rule factor at the midpoint of the recovered range.
  const double probe = 0.5 * (a_star + 1.0);
  res.diagnostics.residuals["factor_variant_gap"] =
      std::abs(fp_value_curve(t, n, a_star, false, bw)(probe) -
               fp_value_curve(t, n, a_star, true, bw)(probe));
  return res;
}

IdentificationResult id_fixed_nobs(const ObservedDataset& ds,
                                   const EstimatorOptions& opt) {
  const CountStats cs = count_stats(ds);
  if (cs.shares.empty()) {
    throw NotIdentifiedError(
        "prop3 requires observed active-bidder counts (n_obs)");
  }
  const int n_hat = cs.k_max;
  if (n_hat < 2) {
    throw NotIdentifiedError(
        "prop3: a maximum observed count of 1 leaves the screening level "
        "unidentified");
  }

  IdentificationResult res;
  res.proposition =
      ds.truncation == TruncationKind::Reserve ? "prop3" : "prop8";
  res.n_recovered = n_hat;

  const double share = cs.share_of(n_hat);
  double a_star = 0.0;
  if (share < 1.0 - 1e-12) {
    a_star = invert_monotone(
        [n_hat](double a) { return all_active_share_curve(n_hat, a); }, share,
        false, "prop3");
  }
  res.alpha_star = a_star;
  res.diagnostics.residuals["share_gap"] =
      all_active_share_curve(n_hat, a_star) - share;

  if (ds.format == AuctionFormat::FirstPrice) {
    EmpiricalQuantile t(prices(ds));
    const double bw = resolved_bw(t, opt);
    res.diagnostics.bandwidths["deriv"] = bw;
    res.diagnostics.tuning["prop2_chainrule"] =
        opt.prop2_chainrule ? 1.0 : 0.0;
    const auto curve =
        fp_value_curve(t, n_hat, a_star, opt.prop2_chainrule, bw);
    fill_v_grid(res, a_star, curve, opt.v_grid_step);
    if (ds.truncation == TruncationKind::EntryCost) {
      res.entry_cost = curve(a_star) * std::pow(a_star, n_hat - 1);
    }
  } else {
    const std::vector<double> two_plus = rows_with_nobs_at_least(ds, 2);
    if (two_plus.empty()) {
      throw InconsistentDataError(
          "prop3: no auctions with two or more active bidders");
    }
    EmpiricalQuantile t2(two_plus);
    fill_v_grid(res, a_star, sp_value_curve(t2, n_hat, a_star),
                opt.v_grid_step);
    if (ds.truncation == TruncationKind::EntryCost) {
      res.entry_cost = t2.eval(0.0) * std::pow(a_star, n_hat - 1);
    }
  }
  return res;
}

IdentificationResult id_vary_known(const ObservedDataset& ds_a,
                                   const ObservedDataset& ds_b, int n_a,
                                   int n_b, AuctionFormat format,
                                   const EstimatorOptions& opt) {
  require(n_a != n_b && n_a >= 2 && n_b >= 2,
          "prop4 needs two distinct counts, both >= 2");
  require(ds_a.truncation == TruncationKind::Reserve &&
              ds_b.truncation == TruncationKind::Reserve,
          "prop4 applies to reserve-price truncation");
  if (ds_a.rows.empty() || ds_b.rows.empty()) {
    throw InconsistentDataError("prop4: empty dataset");
  }

  // Internally N1 > N2; values are recovered from the larger-N dataset.
  const bool swap = n_a < n_b;
  const ObservedDataset& d1 = swap ? ds_b : ds_a;
  const ObservedDataset& d2 = swap ? ds_a : ds_b;
  const int n1 = swap ? n_b : n_a;
  const int n2 = swap ? n_a : n_b;

  EmpiricalQuantile t1(prices(d1));
  EmpiricalQuantile t2(prices(d2));

  const double pooled_lo = std::min(t1.min(), t2.min());
  const double pooled_hi = std::max(t1.max(), t2.max());
  if (std::abs(t1.min() - t2.min()) > 0.02 * (pooled_hi - pooled_lo)) {
    throw InconsistentDataError(
        "prop4: incompatible supports, the two datasets' minimum prices "
        "disagree, so they cannot share one reserve");
  }

  IdentificationResult res;
  res.proposition = "prop4";
  res.diagnostics.tuning["tau_eq"] = opt.tau_eq;
  const double bw1 = resolved_bw(t1, opt);
  const double bw2 = resolved_bw(t2, opt);
  res.diagnostics.bandwidths["deriv_n1"] = bw1;
  res.diagnostics.bandwidths["deriv_n2"] = bw2;

  // Pre-test: do the two zero-threshold value curves already agree?
  const auto candidate = [&](const EmpiricalQuantile& t, int n, double bw,
                             double alpha) {
    if (format == AuctionFormat::FirstPrice) {
      const double u = std::pow(alpha, n);
      return t.eval(u) +
             (static_cast<double>(n) / (n - 1)) * u * t.deriv(u, bw);
    }
    return t.eval(phi_second_highest(n, alpha));
  };
  double sup = 0.0;
  for (int i = 1; i <= 19; ++i) {
    const double alpha = 0.05 * i;
    sup = std::max(sup, std::abs(candidate(t1, n1, bw1, alpha) -
                                 candidate(t2, n2, bw2, alpha)));
  }
  res.diagnostics.residuals["curve_equality_sup"] = sup;

  double a_star = 0.0;
  if (sup > opt.tau_eq) {
    if (format == AuctionFormat::FirstPrice) {
      // A binding reserve starts the price quantile flat, so boundary
      // curvature is the one-sided secant 2(T(h) - T(0))/h^2. The third
      // derivative is large at that edge while prices pile up there and
      // pin the low quantiles tightly, so h shrinks like size^(-1/3),
      // much faster than an interior stencil could afford.
      const auto edge_bw = [&opt](const EmpiricalQuantile& t) {
        return opt.bandwidth > 0.0
                   ? opt.bandwidth
                   : 0.25 * std::pow(static_cast<double>(t.size()), -1.0 / 3.0);
      };
      const auto edge_curvature = [](const EmpiricalQuantile& t, double h) {
        return 2.0 * (t.eval(h) - t.eval(0.0)) / (h * h);
      };
      const double bww1 = edge_bw(t1);
      const double bww2 = edge_bw(t2);
      res.diagnostics.bandwidths["edge_curvature_n1"] = bww1;
      res.diagnostics.bandwidths["edge_curvature_n2"] = bww2;
      const double d1v = edge_curvature(t1, bww1);
      const double d2v = edge_curvature(t2, bww2);
      if (!(d1v > 0.0) || !(d2v > 0.0)) {
        throw InconsistentDataError(
            "prop4: boundary second derivative is not positive, the "
            "curvature ratio is undefined");
      }
      const double ratio =
          std::sqrt(static_cast<double>(n2) * n2 * (n1 - 1) /
                    (static_cast<double>(n1) * n1 * (n2 - 1)) * d2v / d1v);
      const auto f = [n1, n2](double a) {
        return std::pow(a, n1 - n2) * geom_sum(n2, a) / geom_sum(n1, a);
      };
      if (ratio >= f(1.0 - kGridEdge)) {
        throw InconsistentDataError(
            "prop4: curvature ratio exceeds the identified range");
      }
      res.diagnostics.residuals["curvature_ratio"] = ratio;
      a_star = invert_monotone(f, ratio, true, "prop4");
    } else {
      const double d1v = t1.deriv(0.0, bw1);
      const double d2v = t2.deriv(0.0, bw2);
      if (!(d1v > 1e-12)) {
        throw InconsistentDataError(
            "prop4: boundary derivative of the larger-N dataset is "
            "degenerate after the equality pre-test rejected");
      }
      const double ratio = static_cast<double>(n2) * (n2 - 1) /
                           (static_cast<double>(n1) * (n1 - 1)) * d2v / d1v;
      const auto f = [n1, n2](double a) {
        return std::pow(a, n1 - n2) * geom_weighted_sum(n2, a) /
               geom_weighted_sum(n1, a);
      };
      if (ratio >= f(1.0 - kGridEdge)) {
        throw InconsistentDataError(
            "prop4: derivative ratio exceeds the identified range");
      }
      res.diagnostics.residuals["derivative_ratio"] = ratio;
      a_star = invert_monotone(f, ratio, true, "prop4");
    }
  }
  res.alpha_star = a_star;

  if (format == AuctionFormat::FirstPrice) {
    fill_v_grid(res, a_star, fp_value_curve(t1, n1, a_star, true, bw1),
                opt.v_grid_step);
  } else {
    fill_v_grid(res, a_star, sp_value_curve(t1, n1, a_star), opt.v_grid_step);
  }
  return res;
}

IdentificationResult id_fp_vary_unknown(const ObservedDataset& ds,
                                        const EstimatorOptions& opt) {
  require(ds.format == AuctionFormat::FirstPrice,
          "prop5 applies to first-price data");
  require(ds.truncation == TruncationKind::Reserve,
          "prop5 applies to reserve-price truncation");
  const CountStats cs = count_stats(ds);
  if (cs.shares.empty()) {
    throw NotIdentifiedError(
        "prop5 requires observed active-bidder counts (n_obs)");
  }
  const int nbar = cs.k_max;
  if (nbar < 2) {
    throw NotIdentifiedError("prop5: needs auctions with two or more bidders");
  }

  IdentificationResult res;
  res.proposition = "prop5";
  res.n_recovered = nbar;
  res.diagnostics.tuning["prop2_chainrule"] = opt.prop2_chainrule ? 1.0 : 0.0;

  EmpiricalQuantile t_hi(prices_with_nobs(ds, nbar));
  const double bw_hi = resolved_bw(t_hi, opt);
  res.diagnostics.bandwidths["deriv_nbar"] = bw_hi;

  const double share_lo = cs.share_of(nbar - 1);
  double a_star = 0.0;
  double p_hat = 1.0;
  if (share_lo > 0.0) {
    EmpiricalQuantile t_lo(prices_with_nobs(ds, nbar - 1));
    const double bw_lo = resolved_bw(t_lo, opt);
    res.diagnostics.bandwidths["deriv_nbar_minus_1"] = bw_lo;
    p_hat = nbar * t_hi.deriv(1.0, bw_hi) /
            ((nbar - 1) * t_lo.deriv(1.0, bw_lo));
    res.diagnostics.residuals["p_hat_raw"] = p_hat;
    if (!(p_hat > 0.0) || p_hat > 1.0) {
      res.diagnostics.warnings.push_back(
          "tail-derivative ratio fell outside (0,1]; clamped");
      p_hat = std::min(std::max(p_hat, 1e-6), 1.0);
    }
    // alpha/(1-alpha) is increasing, so the inverse is closed-form.
    if (!is_increasing_on_grid([](double a) { return a / (1.0 - a); },
                               kGridEdge, 1.0 - kGridEdge, 1000)) {
      throw InconsistentDataError("prop5: odds curve is not monotone");
    }
    const double c = p_hat * (share_lo / cs.share_of(nbar)) / nbar;
    a_star = c / (1.0 + c);
  } else {
    res.diagnostics.warnings.push_back(
        "no auctions with N-1 active bidders; screening level pinned at 0");
  }
  res.diagnostics.residuals["p_hat"] = p_hat;
  res.alpha_star = a_star;

  fill_v_grid(res, a_star, vary_fp_value_curve(t_hi, nbar, a_star, bw_hi),
              opt.v_grid_step);
  return res;
}

IdentificationResult id_sp_vary_invalid_set(const ObservedDataset& ds,
                                            const EstimatorOptions& opt) {
  require(ds.format == AuctionFormat::SecondPrice,
          "prop6 applies to second-price data");
  require(ds.truncation == TruncationKind::Reserve,
          "prop6 applies to reserve-price truncation");
  if (!ds.l_invalid.has_value()) {
    throw NotIdentifiedError("prop6 requires the invalid-auction count");
  }
  const CountStats cs = count_stats(ds);
  if (cs.shares.empty()) {
    throw NotIdentifiedError(
        "prop6 requires observed active-bidder counts (n_obs)");
  }
  const int nbar = cs.k_max;

  IdentificationResult res;
  res.proposition = "prop6";
  res.n_recovered = nbar;
  res.diagnostics.tuning["eps_set"] = opt.eps_set;
  res.diagnostics.tuning["grid_step"] = opt.grid_step;

  // Empirical distribution of observed counts over all auctions, index 0
  // being the invalid ones.
  const double invalid_share = *cs.invalid_share;
  std::vector<double> p_obs(nbar + 1, 0.0);
  p_obs[0] = invalid_share;
  for (int k = 1; k <= nbar; ++k) {
    p_obs[k] = cs.share_of(k) * (1.0 - invalid_share);
  }

  std::vector<std::vector<double>> choose(nbar + 1,
                                          std::vector<double>(nbar + 1, 0.0));
  for (int n = 0; n <= nbar; ++n) {
    choose[n][0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      choose[n][k] = choose[n - 1][k - 1] + (k <= n - 1 ? choose[n - 1][k] : 0.0);
    }
  }

  // For each candidate screening level, unmix the count distribution by
  // back substitution and accept when the recovered population law is a
  // probability vector with no mass at N=0. The recovered vector is linear
  // in the multinomial count shares, so each coordinate gets an exact
  // plug-in standard error propagated through the same solve; the noise
  // slack keeps small samples from luck-rejecting the truth and vanishes
  // as the sample grows, letting the set tighten onto the population one.
  res.diagnostics.tuning["noise_slack_sigma"] = opt.noise_slack_sigma;
  const double n_total = static_cast<double>(ds.l + *ds.l_invalid);
  const bool use_slack = opt.noise_slack_sigma > 0.0 && n_total > 0.0;
  const auto unmix = [&](const std::vector<double>& rhs,
                         double a, std::vector<double>& out) {
    for (int k = nbar; k >= 0; --k) {
      double rest = 0.0;
      for (int n = k + 1; n <= nbar; ++n) {
        rest +=
            choose[n][k] * std::pow(1.0 - a, k) * std::pow(a, n - k) * out[n];
      }
      out[k] = (rhs[k] - rest) / std::pow(1.0 - a, k);
    }
  };
  std::vector<double> accepted;
  double best_violation = std::numeric_limits<double>::infinity();
  std::vector<double> x(nbar + 1, 0.0);
  std::vector<double> basis(nbar + 1, 0.0);
  std::vector<double> col(nbar + 1, 0.0);
  std::vector<double> slack(nbar + 1, 0.0);
  for (double a = 0.0; a < 1.0 - 0.5 * opt.grid_step; a += opt.grid_step) {
    unmix(p_obs, a, x);
    if (use_slack) {
      // Var(x_k) = (E_p[row_k^2] - x_k^2) / n for multinomial shares; the
      // rows of the inverse mixing matrix come out column by column.
      std::vector<double> m2(nbar + 1, 0.0);
      for (int j = 0; j <= nbar; ++j) {
        std::fill(basis.begin(), basis.end(), 0.0);
        basis[j] = 1.0;
        unmix(basis, a, col);
        for (int k = 0; k <= nbar; ++k) m2[k] += col[k] * col[k] * p_obs[j];
      }
      for (int k = 0; k <= nbar; ++k) {
        slack[k] = opt.noise_slack_sigma *
                   std::sqrt(std::max(m2[k] - x[k] * x[k], 0.0) / n_total);
      }
    }
    double violation = std::abs(x[0]);
    double slacked = std::abs(x[0]) - slack[0];
    for (int n = 1; n <= nbar; ++n) {
      const double raw = std::max(-x[n], x[n] - 1.0);
      violation = std::max(violation, raw);
      slacked = std::max(slacked, raw - slack[n]);
    }
    best_violation = std::min(best_violation, violation);
    if (slacked <= opt.eps_set) accepted.push_back(a);
  }
  res.diagnostics.residuals["min_violation"] = best_violation;
  if (accepted.empty()) {
    throw InconsistentDataError(
        "prop6: no screening level renders the observed counts a valid "
        "mixture over bidder populations");
  }
  res.alpha_set = group_intervals(accepted, opt.grid_step);
  if (accepted.size() == 1) res.alpha_star = accepted.front();

  EmpiricalQuantile t(prices_with_nobs(ds, nbar));
  const double a_lo = res.alpha_set.front().lo;
  const double a_hi = res.alpha_set.back().hi;
  fill_v_band(res, vary_sp_value_curve(t, nbar, a_lo),
              vary_sp_value_curve(t, nbar, a_hi), a_hi, opt.v_grid_step);
  return res;
}

IdentificationResult id_entry_fixed(const ObservedDataset& ds, int n,
                                    AuctionFormat format,
                                    const EstimatorOptions& opt) {
  require(ds.truncation == TruncationKind::EntryCost,
          "prop7 applies to entry-cost truncation");
  require(n >= 2, "prop7 needs N >= 2");
  if (ds.rows.empty()) throw InconsistentDataError("prop7: empty dataset");

  IdentificationResult res;
  res.proposition = "prop7";

  if (format == AuctionFormat::SecondPrice) {
    EmpiricalQuantile q(prices(ds));
    const double mass = q.mass_at(0.0, opt.mass_eps);
    res.diagnostics.tuning["mass_eps"] = opt.mass_eps;
    if (mass <= 0.0) {
      res.alpha_star = 0.0;
      res.entry_cost = 0.0;
      res.diagnostics.warnings.push_back(
          "no zero-price auctions observed; entry cost indistinguishable "
          "from zero");
      fill_v_grid(res, 0.0, sp_value_curve(q, n, 0.0), opt.v_grid_step);
      return res;
    }
    if (mass >= reserve_mass_curve(n, 1.0 - kGridEdge)) {
      throw InconsistentDataError(
          "prop7: observed zero-price mass exceeds the model maximum");
    }
    const double a_star =
        invert_monotone([n](double a) { return reserve_mass_curve(n, a); },
                        mass, true, "prop7");
    res.alpha_star = a_star;
    res.diagnostics.residuals["mass_gap"] =
        reserve_mass_curve(n, a_star) - mass;
    const std::vector<double> above = prices_above(ds, 0.0);
    if (above.empty()) {
      throw InconsistentDataError("prop7: every price is zero");
    }
    EmpiricalQuantile t2(above);
    res.entry_cost = t2.eval(0.0) * std::pow(a_star, n - 1);
    fill_v_grid(res, a_star, sp_value_curve(t2, n, a_star), opt.v_grid_step);
    return res;
  }

  if (!ds.l_invalid.has_value()) {
    throw NotIdentifiedError(
        "prop7: first-price transaction prices under entry costs do not "
        "identify the threshold; the invalid-auction count is required");
  }
  const double share = static_cast<double>(*ds.l_invalid) /
                       static_cast<double>(ds.l + *ds.l_invalid);
  const double a_star = std::pow(share, 1.0 / n);
  res.alpha_star = a_star;
  res.diagnostics.residuals["invalid_share"] = share;
  res.diagnostics.tuning["prop2_chainrule"] = opt.prop2_chainrule ? 1.0 : 0.0;

  EmpiricalQuantile t(prices(ds));
  const double bw = resolved_bw(t, opt);
  res.diagnostics.bandwidths["deriv"] = bw;
  const auto curve = fp_value_curve(t, n, a_star, opt.prop2_chainrule, bw);
  res.entry_cost = curve(a_star) * std::pow(a_star, n - 1);
  fill_v_grid(res, a_star, curve, opt.v_grid_step);
  return res;
}

namespace {

struct SetAccumulator {
  std::vector<std::pair<double, double>> pairs;
  std::vector<double> first, second;
  double f_lo = std::numeric_limits<double>::infinity();
  double f_hi = -std::numeric_limits<double>::infinity();

  void add(double a, double b, double f_value) {
    pairs.emplace_back(a, b);
    first.push_back(a);
    second.push_back(b);
    f_lo = std::min(f_lo, f_value);
    f_hi = std::max(f_hi, f_value);
  }
};

}  // namespace

IdentificationResult id_entry_vary_known_set(const ObservedDataset& ds_a,
                                             const ObservedDataset& ds_b,
                                             int n_a, int n_b,
                                             AuctionFormat format,
                                             const EstimatorOptions& opt) {
  require(n_a != n_b && n_a >= 2 && n_b >= 2,
          "prop9 needs two distinct counts, both >= 2");
  require(ds_a.truncation == TruncationKind::EntryCost &&
              ds_b.truncation == TruncationKind::EntryCost,
          "prop9 applies to entry-cost truncation");

  // Positive prices only: the second-price zero atom carries no value
  // information here.
  const std::vector<double> pa = prices_above(ds_a, 0.0);
  const std::vector<double> pb = prices_above(ds_b, 0.0);
  if (pa.empty() || pb.empty()) {
    throw InconsistentDataError("prop9: a dataset has no positive prices");
  }
  EmpiricalQuantile ta(pa);
  EmpiricalQuantile tb(pb);

  IdentificationResult res;
  res.proposition = "prop9";
  res.diagnostics.tuning["eps_set"] = opt.eps_set;
  res.diagnostics.tuning["grid_step_2d"] = opt.grid_step_2d;
  res.diagnostics.tuning["noise_slack_sigma"] = opt.noise_slack_sigma;

  const double step = opt.grid_step_2d;
  SetAccumulator acc;

  if (format == AuctionFormat::FirstPrice) {
    const double bwa = resolved_bw(ta, opt);
    const double bwb = resolved_bw(tb, opt);
    res.diagnostics.bandwidths["deriv_a"] = bwa;
    res.diagnostics.bandwidths["deriv_b"] = bwb;

    // Per-dataset boundary statistics, full sample then fold complements.
    struct Stats {
      double top, d_top, d_bot;
    };
    const auto stats_of = [&](const std::vector<double>& sorted, double bw) {
      EmpiricalQuantile t(sorted);
      return Stats{t.eval(1.0), t.deriv(1.0, bw), t.deriv(0.0, bw)};
    };
    const Stats sa = stats_of(pa, bwa);
    const Stats sb = stats_of(pb, bwb);
    const bool use_slack = opt.noise_slack_sigma > 0.0 && pa.size() >= 100 &&
                           pb.size() >= 100;
    std::vector<Stats> ja, jb;
    if (use_slack) {
      std::vector<double> sorted_a = pa, sorted_b = pb;
      std::sort(sorted_a.begin(), sorted_a.end());
      std::sort(sorted_b.begin(), sorted_b.end());
      for (int g = 0; g < kFolds; ++g) {
        ja.push_back(stats_of(fold_complement(sorted_a, 1, g), bwa));
        jb.push_back(stats_of(fold_complement(sorted_b, 2, g), bwb));
      }
    }

    const auto top_eq = [](const Stats& s, int n, double a) {
      return s.top + (static_cast<double>(n) / (n - 1)) * s.d_top /
                         (1.0 - std::pow(a, n));
    };
    const auto cost_eq = [](const Stats& s, int n, double a) {
      return (static_cast<double>(n) / (n - 1)) * std::pow(a, 2 * n - 1) /
             (1.0 - std::pow(a, n)) * s.d_bot;
    };

    std::vector<double> rep1(kFolds), rep2(kFolds);
    for (double a = step; a < 1.0 - 0.5 * step; a += step) {
      for (double b = step; b < 1.0 - 0.5 * step; b += step) {
        const double l1 = top_eq(sa, n_a, a), r1 = top_eq(sb, n_b, b);
        const double l2 = cost_eq(sa, n_a, a), r2 = cost_eq(sb, n_b, b);
        double slack1 = 0.0, slack2 = 0.0;
        if (use_slack) {
          for (int g = 0; g < kFolds; ++g) {
            rep1[g] = top_eq(ja[g], n_a, a) - top_eq(jb[g], n_b, b);
            rep2[g] = cost_eq(ja[g], n_a, a) - cost_eq(jb[g], n_b, b);
          }
          slack1 = opt.noise_slack_sigma * jackknife_se(rep1);
          slack2 = opt.noise_slack_sigma * jackknife_se(rep2);
        }
        if (std::abs(l1 - r1) <= opt.eps_set * scale_of(l1, r1) + slack1 &&
            std::abs(l2 - r2) <= opt.eps_set * scale_of(l2, r2) + slack2) {
          acc.add(a, b, 0.5 * (l2 + r2));
        }
      }
    }
  } else {
    // Order by N: the entry threshold increases with N, and the mixture
    // equation reads the smaller-N dataset's CDF at the larger-N minimum.
    const bool swap = n_a > n_b;
    const EmpiricalQuantile& t_lo = swap ? tb : ta;
    const EmpiricalQuantile& t_hi = swap ? ta : tb;
    const int n_lo = swap ? n_b : n_a;
    const int n_hi = swap ? n_a : n_b;

    struct Stats {
      double min_lo, min_hi, cdf_at_hi_min;
    };
    const auto stats_of = [](const std::vector<double>& lo_sorted,
                             const std::vector<double>& hi_sorted) {
      EmpiricalQuantile lo(lo_sorted), hi(hi_sorted);
      return Stats{lo.min(), hi.min(), lo.cdf(hi.min())};
    };
    const Stats s0 = stats_of(t_lo.sorted_samples(), t_hi.sorted_samples());
    const bool use_slack = opt.noise_slack_sigma > 0.0 &&
                           t_lo.size() >= 100 && t_hi.size() >= 100;
    std::vector<Stats> js;
    if (use_slack) {
      for (int g = 0; g < kFolds; ++g) {
        js.push_back(stats_of(fold_complement(t_lo.sorted_samples(), 1, g),
                              fold_complement(t_hi.sorted_samples(), 2, g)));
      }
    }

    const auto mix_eq = [n_lo](const Stats& s, double a_lo, double a_hi) {
      const double p0 = phi_second_highest(n_lo, a_lo);
      return (phi_second_highest(n_lo, a_hi) - p0) / (1.0 - p0) -
             s.cdf_at_hi_min;
    };
    const auto cost_gap = [n_lo, n_hi](const Stats& s, double a_lo,
                                       double a_hi) {
      return s.min_lo * std::pow(a_lo, n_lo - 1) -
             s.min_hi * std::pow(a_hi, n_hi - 1);
    };

    std::vector<double> rep1(kFolds), rep2(kFolds);
    for (double a_hi = step; a_hi < 1.0 - 0.5 * step; a_hi += step) {
      for (double a_lo = step; a_lo < a_hi - 0.5 * step; a_lo += step) {
        const double r1 = mix_eq(s0, a_lo, a_hi);
        const double l2 = s0.min_lo * std::pow(a_lo, n_lo - 1);
        const double r2v = s0.min_hi * std::pow(a_hi, n_hi - 1);
        double slack1 = 0.0, slack2 = 0.0;
        if (use_slack) {
          for (int g = 0; g < kFolds; ++g) {
            rep1[g] = mix_eq(js[g], a_lo, a_hi);
            rep2[g] = cost_gap(js[g], a_lo, a_hi);
          }
          slack1 = opt.noise_slack_sigma * jackknife_se(rep1);
          slack2 = opt.noise_slack_sigma * jackknife_se(rep2);
        }
        if (std::abs(r1) <= opt.eps_set + slack1 &&
            std::abs(l2 - r2v) <= opt.eps_set * scale_of(l2, r2v) + slack2) {
          // Report in caller order: first coordinate belongs to ds_a.
          const double a = swap ? a_hi : a_lo;
          const double b = swap ? a_lo : a_hi;
          acc.add(a, b, 0.5 * (l2 + r2v));
        }
      }
    }
  }

  if (acc.pairs.empty()) {
    throw InconsistentDataError(
        "prop9: no threshold pair satisfies both estimating equations; the "
        "two datasets are not consistent with one entry-cost model");
  }
  res.accepted_pairs = acc.pairs;
  res.alpha_set = group_intervals(acc.first, step);
  res.alpha_set_2 = group_intervals(acc.second, step);
  res.diagnostics.residuals["f_lo"] = acc.f_lo;
  res.diagnostics.residuals["f_hi"] = acc.f_hi;
  // Midpoint of the implied cost range; the range itself stays in the
  // diagnostics.
  res.entry_cost = 0.5 * (acc.f_lo + acc.f_hi);
  if (acc.pairs.size() == 1) res.alpha_star = acc.pairs.front().first;

  // Value band from ds_a's mapping at the extreme accepted thresholds.
  const double lo_a = res.alpha_set.front().lo;
  const double hi_a = res.alpha_set.back().hi;
  if (format == AuctionFormat::FirstPrice) {
    const double bwa = resolved_bw(ta, opt);
    fill_v_band(res, fp_value_curve(ta, n_a, lo_a, true, bwa),
                fp_value_curve(ta, n_a, hi_a, true, bwa), hi_a,
                opt.v_grid_step);
  } else {
    fill_v_band(res, sp_value_curve(ta, n_a, lo_a),
                sp_value_curve(ta, n_a, hi_a), hi_a, opt.v_grid_step);
  }
  return res;
}

IdentificationResult id_entry_vary_unknown(const ObservedDataset& ds,
                                           AuctionFormat format,
                                           const EstimatorOptions& opt) {
  require(ds.truncation == TruncationKind::EntryCost,
          "prop10 applies to entry-cost truncation");
  const CountStats cs = count_stats(ds);
  if (cs.shares.empty()) {
    throw NotIdentifiedError(
        "prop10 requires observed active-bidder counts (n_obs)");
  }
  const int nbar = cs.k_max;

  IdentificationResult res;
  res.proposition = "prop10";
  res.n_recovered = nbar;

  if (format == AuctionFormat::FirstPrice) {
    if (nbar < 2) {
      throw NotIdentifiedError(
          "prop10: needs auctions with two or more bidders");
    }
    EmpiricalQuantile t_hi(prices_with_nobs(ds, nbar));
    const double bw_hi = resolved_bw(t_hi, opt);
    res.diagnostics.bandwidths["deriv_nbar"] = bw_hi;
    res.diagnostics.tuning["tail_delta"] = opt.tail_delta;

    const double share_lo = cs.share_of(nbar - 1);
    double a_star = 0.0;
    double p_hat = 1.0;
    if (share_lo > 0.0) {
      EmpiricalQuantile t_lo(prices_with_nobs(ds, nbar - 1));
      // Upper-tail mass of the smaller-count price law above the
      // (1-delta) quantile of the nbar law estimates the mixing odds.
      const double tail_point = t_hi.eval(1.0 - opt.tail_delta);
      p_hat = (static_cast<double>(nbar) / (nbar - 1)) *
              t_lo.survival(tail_point) / opt.tail_delta;
      res.diagnostics.residuals["p_hat_raw"] = p_hat;
      if (!(p_hat > 0.0) || p_hat > 1.0) {
        res.diagnostics.warnings.push_back(
            "tail-mass ratio fell outside (0,1]; clamped");
        p_hat = std::min(std::max(p_hat, 1e-6), 1.0);
      }
      const double c = p_hat * (share_lo / cs.share_of(nbar)) / nbar;
      a_star = c / (1.0 + c);
    } else {
      res.diagnostics.warnings.push_back(
          "no auctions with N-1 active bidders; threshold pinned at 0");
    }
    res.diagnostics.residuals["p_hat"] = p_hat;
    res.alpha_star = a_star;

    const auto curve = vary_fp_value_curve(t_hi, nbar, a_star, bw_hi);
    fill_v_grid(res, a_star, curve, opt.v_grid_step);
    // The value mapping degenerates exactly at the threshold (both terms
    // vanish), so the cost reads the curve slightly inside.
    const double offset = 0.02;
    res.diagnostics.tuning["f_eval_offset"] = offset;
    res.entry_cost =
        curve(std::min(a_star + offset, 1.0)) * std::pow(a_star, nbar - 1);
    return res;
  }

  if (nbar < 3) {
    throw NotIdentifiedError(
        "prop10: the second-price system needs observed counts of at least "
        "2 and 3");
  }
  const std::vector<double> hi_prices = prices_with_nobs(ds, nbar);
  const std::vector<double> lo_prices = prices_with_nobs(ds, nbar - 1);
  if (hi_prices.empty() || lo_prices.empty()) {
    throw NotIdentifiedError(
        "prop10: needs prices at the two largest observed counts");
  }
  if (hi_prices.size() < 50 || lo_prices.size() < 50) {
    res.diagnostics.warnings.push_back(
        "fewer than 50 auctions at an extreme count; minimum-price "
        "statistics are degenerate");
  }
  EmpiricalQuantile t_hi(hi_prices);
  EmpiricalQuantile t_lo(lo_prices);
  res.diagnostics.tuning["eps_set"] = opt.eps_set;
  res.diagnostics.tuning["grid_step_2d"] = opt.grid_step_2d;
  res.diagnostics.tuning["noise_slack_sigma"] = opt.noise_slack_sigma;

  const double q_ratio = cs.share_of(nbar - 1) / cs.share_of(nbar);

  struct Stats {
    double v_hi, v_lo, q, p_below;
  };
  const auto stats_from = [&](const std::vector<double>& lo_sorted,
                              const std::vector<double>& hi_sorted,
                              double q) {
    EmpiricalQuantile lo(lo_sorted), hi(hi_sorted);
    return Stats{hi.min(), lo.min(), q, strict_cdf(lo, hi.min())};
  };
  const Stats s0 =
      stats_from(t_lo.sorted_samples(), t_hi.sorted_samples(), q_ratio);
  const bool use_slack = opt.noise_slack_sigma > 0.0 &&
                         hi_prices.size() >= 100 && lo_prices.size() >= 100;
  std::vector<Stats> js;
  if (use_slack) {
    for (int g = 0; g < kFolds; ++g) {
      const std::vector<double> lo_c =
          fold_complement(t_lo.sorted_samples(), 1, g);
      const std::vector<double> hi_c =
          fold_complement(t_hi.sorted_samples(), 2, g);
      // The share ratio is jackknifed through the class counts.
      const double qg = q_ratio * (static_cast<double>(lo_c.size()) /
                                   t_lo.sorted_samples().size()) /
                        (static_cast<double>(hi_c.size()) /
                         t_hi.sorted_samples().size());
      js.push_back(stats_from(lo_c, hi_c, qg));
    }
  }

  const auto cost_gap = [nbar](const Stats& s, double a_hi, double a_lo) {
    return s.v_hi * std::pow(a_hi, nbar - 1) -
           s.v_lo * std::pow(a_lo, nbar - 2);
  };
  const auto mix_gap = [nbar](const Stats& s, double a_hi, double a_lo) {
    return s.p_below * s.q -
           (s.q - nbar * a_hi / (1.0 - a_hi)) *
               phi_second_highest(nbar - 1, (a_hi - a_lo) / (1.0 - a_lo));
  };

  const double step = opt.grid_step_2d;
  SetAccumulator acc;
  std::vector<double> rep1(kFolds), rep2(kFolds);
  for (double a_hi = step; a_hi < 1.0 - 0.5 * step; a_hi += step) {
    for (double a_lo = step; a_lo < a_hi - 0.5 * step; a_lo += step) {
      const double l1 = s0.v_hi * std::pow(a_hi, nbar - 1);
      const double r1 = s0.v_lo * std::pow(a_lo, nbar - 2);
      const double gap2 = mix_gap(s0, a_hi, a_lo);
      double slack1 = 0.0, slack2 = 0.0;
      if (use_slack) {
        for (int g = 0; g < kFolds; ++g) {
          rep1[g] = cost_gap(js[g], a_hi, a_lo);
          rep2[g] = mix_gap(js[g], a_hi, a_lo);
        }
        slack1 = opt.noise_slack_sigma * jackknife_se(rep1);
        slack2 = opt.noise_slack_sigma * jackknife_se(rep2);
      }
      const double scale2 =
          scale_of(s0.p_below * s0.q, s0.p_below * s0.q - gap2);
      if (std::abs(l1 - r1) <= opt.eps_set * scale_of(l1, r1) + slack1 &&
          std::abs(gap2) <= opt.eps_set * scale2 + slack2) {
        acc.add(a_hi, a_lo, 0.5 * (l1 + r1));
      }
    }
  }
  if (acc.pairs.empty()) {
    throw InconsistentDataError(
        "prop10: no threshold pair satisfies the entry-cost and mixture "
        "equations");
  }
  res.accepted_pairs = acc.pairs;
  res.alpha_set = group_intervals(acc.first, step);
  res.alpha_set_2 = group_intervals(acc.second, step);
  res.diagnostics.residuals["f_lo"] = acc.f_lo;
  res.diagnostics.residuals["f_hi"] = acc.f_hi;
  // Midpoint of the implied cost range; the range itself stays in the
  // diagnostics.
  res.entry_cost = 0.5 * (acc.f_lo + acc.f_hi);
  if (acc.pairs.size() == 1) res.alpha_star = acc.pairs.front().first;

  const double lo_a = res.alpha_set.front().lo;
  const double hi_a = res.alpha_set.back().hi;
  fill_v_band(res, vary_sp_value_curve(t_hi, nbar, lo_a),
              vary_sp_value_curve(t_hi, nbar, hi_a), hi_a, opt.v_grid_step);
  return res;
}

}  // namespace truncauct
