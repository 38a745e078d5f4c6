#ifndef TRUNCAUCT_EMPIRICS_HPP
#define TRUNCAUCT_EMPIRICS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "truncauct/simulator.hpp"

namespace truncauct {

// Empirical quantile function of a price sample (type-7 convention:
// linear interpolation of the order statistics at position u(n-1)+1).
class EmpiricalQuantile {
 public:
  explicit EmpiricalQuantile(std::vector<double> samples);

  double eval(double u) const;

  // Symmetric difference quotient over [u-h, u+h], clipped to [0,1]
  // (one-sided at the boundaries). bandwidth 0 selects 0.5 n^(-1/5).
  double deriv(double u, double bandwidth = 0.0) const;

  // Second difference quotient; one-sided 3-point stencil at u = 0.
  // bandwidth 0 selects 0.5 n^(-1/7).
  double second_deriv(double u, double bandwidth = 0.0) const;

  // Fraction of samples equal to v; eps widens the match window for
  // external data whose mass points are not written exactly.
  double mass_at(double v, double eps = 0.0) const;

  // Fraction of samples <= v (empirical CDF).
  double cdf(double v) const;
  // Fraction of samples > v.
  double survival(double v) const;

  std::size_t size() const { return s_.size(); }
  double min() const { return s_.front(); }
  double max() const { return s_.back(); }
  double default_bandwidth() const;
  double default_bandwidth2() const;
  const std::vector<double>& sorted_samples() const { return s_; }

 private:
  std::vector<double> s_;
};

// Frequencies of observed bidder counts plus the invalid-auction share.
struct CountStats {
  std::map<int, double> shares;  // over rows carrying n_obs
  std::optional<double> invalid_share;  // L_invalid / (L + L_invalid)
  std::uint64_t total_valid = 0;
  int k_max = 0;

  double share_of(int k) const;
};

CountStats count_stats(const ObservedDataset& ds);

std::vector<double> prices(const ObservedDataset& ds);
std::vector<double> prices_with_nobs(const ObservedDataset& ds, int k);
std::vector<double> prices_above(const ObservedDataset& ds, double v);

}  // namespace truncauct

#endif  // TRUNCAUCT_EMPIRICS_HPP
