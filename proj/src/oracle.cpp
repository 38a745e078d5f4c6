#include "truncauct/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "truncauct/rng.hpp"
#include "truncauct/simulator.hpp"

namespace truncauct {

namespace {

double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

// The reserve price is the economic primitive; the screening quantile is
// its encoding. Picks the representable quantile nearest hint whose image
// is bit-exactly the reserve, so the single-active price atom lands on the
// same double in every design that shares the reserve.
double quantile_hitting(const ValueDistribution& dist, double target,
                        double hint) {
  double up = hint;
  double down = hint;
  for (int k = 0; k < 64; ++k) {
    if (dist.quantile(up) == target) return up;
    if (dist.quantile(down) == target) return down;
    up = std::nextafter(up, 1.0);
    down = std::nextafter(down, 0.0);
  }
  return hint;
}

OracleCheck make_check(std::string name, double observed, double target,
                       double tolerance) {
  OracleCheck c;
  c.name = std::move(name);
  c.observed = observed;
  c.target = target;
  c.tolerance = tolerance;
  c.pass = std::abs(observed - target) <= tolerance;
  return c;
}

struct CaseStats {
  double share1 = 0.0;
  double share2 = 0.0;
  double invalid_share = 0.0;
  double atom1 = 0.0;  // price mass at the reserve given n_obs = 1
  std::vector<double> prices1;
  std::vector<double> prices2;
  double bid_cdf1 = 0.0;  // pooled bid CDF at 0.75 given n_act = 1
  double bid_cdf2 = 0.0;
};

CaseStats run_case(const ValueDistribution& dist, const AuctionDesign& design,
                   const PopulationSpec& pop, std::uint64_t l_total,
                   std::uint64_t seed) {
  InfoStructure info;
  info.observe_nobs = true;
  info.observe_invalid_count = true;

  const auto raw = simulate(dist, design, pop, l_total, seed);
  const auto ds = observe(raw, info, design.format, design.truncation,
                          design.reserve_value(dist));
  const CountStats cs = count_stats(ds);

  CaseStats out;
  out.share1 = cs.share_of(1);
  out.share2 = cs.share_of(2);
  out.invalid_share = cs.invalid_share.value_or(0.0);
  out.prices1 = prices_with_nobs(ds, 1);
  out.prices2 = prices_with_nobs(ds, 2);
  if (!out.prices1.empty()) {
    out.atom1 = EmpiricalQuantile(out.prices1)
                    .mass_at(design.reserve_value(dist), 1e-9);
  }

  // All-bids extension: pooled active bids per observed count.
  std::uint64_t le1 = 0, tot1 = 0, le2 = 0, tot2 = 0;
  for (const auto& a : raw) {
    if (a.n_act != 1 && a.n_act != 2) continue;
    for (double b : a.bids) {
      if (std::isnan(b)) continue;
      if (a.n_act == 1) {
        ++tot1;
        if (b <= 0.75) ++le1;
      } else {
        ++tot2;
        if (b <= 0.75) ++le2;
      }
    }
  }
  out.bid_cdf1 = tot1 ? static_cast<double>(le1) / tot1 : 0.0;
  out.bid_cdf2 = tot2 ? static_cast<double>(le2) / tot2 : 0.0;
  return out;
}

void append_case_checks(std::vector<OracleCheck>& checks,
                        const std::string& prefix, const CaseStats& s,
                        double invalid_target) {
  const double tol = 0.01;
  checks.push_back(make_check(prefix + ".share_nobs1", s.share1, 2.0 / 3.0, tol));
  checks.push_back(make_check(prefix + ".share_nobs2", s.share2, 1.0 / 3.0, tol));
  checks.push_back(
      make_check(prefix + ".invalid_share", s.invalid_share, invalid_target, tol));
  checks.push_back(make_check(prefix + ".price_atom_nobs1", s.atom1, 1.0, 1e-12));
  const EmpiricalQuantile t2{s.prices2};
  for (double t : {0.55, 0.65, 0.75, 0.85, 0.95}) {
    const double target = -4.0 * t * t + 8.0 * t - 3.0;
    checks.push_back(make_check(prefix + ".cdf_nobs2@" + std::to_string(t).substr(0, 4),
                                t2.cdf(t), target, tol));
  }
  checks.push_back(make_check(prefix + ".bid_cdf_nobs1@0.75", s.bid_cdf1, 0.5, tol));
  checks.push_back(make_check(prefix + ".bid_cdf_nobs2@0.75", s.bid_cdf2, 0.5, tol));
}

}  // namespace

FpTwin construct_fp_twin(const EmpiricalQuantile& t, int n, double alpha2,
                         int grid_points) {
  if (n < 2) throw std::invalid_argument("construct_fp_twin: need n >= 2");
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) {
    throw std::invalid_argument("construct_fp_twin: alpha2 must lie in (0,1)");
  }
  if (grid_points < 3) {
    throw std::invalid_argument("construct_fp_twin: need grid_points >= 3");
  }

  FpTwin twin;
  twin.alpha2 = alpha2;
  twin.validity_warning = std::abs(t.deriv(0.0)) > 0.05;

  const int g = grid_points;
  const double h = (1.0 - alpha2) / (g - 1);
  const double denom = 1.0 - ipow(alpha2, n);
  std::vector<double> alphas(g), bid(g), value(g);
  for (int k = 0; k < g; ++k) {
    const double a = k + 1 == g ? 1.0 : alpha2 + k * h;
    alphas[k] = a;
    const double u = std::clamp((ipow(a, n) - ipow(alpha2, n)) / denom, 0.0, 1.0);
    bid[k] = t.eval(u);
  }
  for (int k = 0; k < g; ++k) {
    double slope;
    if (k == 0) {
      slope = (bid[1] - bid[0]) / h;
    } else if (k + 1 == g) {
      slope = (bid[g - 1] - bid[g - 2]) / h;
    } else {
      slope = (bid[k + 1] - bid[k - 1]) / (2.0 * h);
    }
    value[k] = bid[k] + alphas[k] / (n - 1) * slope;
  }
  twin.rearrange_frequency = monotone_rearrange(value);
  twin.value_curve = LinearInterp(alphas, value);
  twin.bid_curve = LinearInterp(std::move(alphas), std::move(bid));
  return twin;
}

std::vector<double> simulate_fp_twin(const FpTwin& twin, int n,
                                     std::uint64_t l_total,
                                     std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("simulate_fp_twin: need n >= 2");
  std::vector<double> prices;
  prices.reserve(static_cast<std::size_t>(l_total));
  for (std::uint64_t id = 0; id < l_total; ++id) {
    auto rng = SplitMix64::stream(seed, id);
    double top = -1.0;
    for (int i = 0; i < n; ++i) {
      const double type = rng.uniform01();
      if (type >= twin.alpha2 && type > top) top = type;
    }
    if (top >= 0.0) prices.push_back(twin.bid_curve.eval(top));
  }
  return prices;
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_distance: empty sample");
  }
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

Prop5Report prop5_counterexample(std::uint64_t l_total, std::uint64_t seed) {
  const auto dist1 = ValueDistribution::uniform(0.0, 1.0);
  const auto design1 =
      AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.5);
  const auto pop1 = PopulationSpec::degenerate(2);

  const auto dist2 = ValueDistribution::uniform(0.25, 1.0);
  const double alpha0 = quantile_hitting(dist2, 0.5, 1.0 / 3.0);
  const auto design2 =
      AuctionDesign::reserve(AuctionFormat::SecondPrice, alpha0);
  const auto pop2 = PopulationSpec::of({{1, 0.4}, {2, 0.6}});

  const CaseStats s1 = run_case(dist1, design1, pop1, l_total, seed);
  const CaseStats s2 = run_case(dist2, design2, pop2, l_total, seed + 1);

  Prop5Report report;
  append_case_checks(report.checks, "case1", s1, 0.25);
  append_case_checks(report.checks, "case2", s2, 0.2);
  report.ks_nobs1 = ks_distance(s1.prices1, s2.prices1);
  report.ks_nobs2 = ks_distance(s1.prices2, s2.prices2);
  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const OracleCheck& c) { return c.pass; });
  return report;
}

}  // namespace truncauct
