#include "truncauct/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace truncauct {

EmpiricalQuantile::EmpiricalQuantile(std::vector<double> samples)
    : s_(std::move(samples)) {
  if (s_.empty()) {
    throw std::invalid_argument("EmpiricalQuantile: empty sample");
  }
  std::sort(s_.begin(), s_.end());
}

double EmpiricalQuantile::eval(double u) const {
  if (u <= 0.0) return s_.front();
  if (u >= 1.0) return s_.back();
  const double pos = u * static_cast<double>(s_.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= s_.size()) return s_.back();
  return s_[i] + frac * (s_[i + 1] - s_[i]);
}

double EmpiricalQuantile::default_bandwidth() const {
  return 0.5 * std::pow(static_cast<double>(s_.size()), -0.2);
}

double EmpiricalQuantile::default_bandwidth2() const {
  return 0.5 * std::pow(static_cast<double>(s_.size()), -1.0 / 7.0);
}

double EmpiricalQuantile::deriv(double u, double bandwidth) const {
  const double h = bandwidth > 0.0 ? bandwidth : default_bandwidth();
  const double lo = std::max(u - h, 0.0);
  const double hi = std::min(u + h, 1.0);
  if (!(hi > lo)) {
    throw std::invalid_argument("EmpiricalQuantile::deriv: degenerate window");
  }
  return (eval(hi) - eval(lo)) / (hi - lo);
}

double EmpiricalQuantile::second_deriv(double u, double bandwidth) const {
  const double h = bandwidth > 0.0 ? bandwidth : default_bandwidth2();
  if (u - h < 0.0) {
    return (eval(u) - 2.0 * eval(u + h) + eval(u + 2.0 * h)) / (h * h);
  }
  if (u + h > 1.0) {
    return (eval(u) - 2.0 * eval(u - h) + eval(u - 2.0 * h)) / (h * h);
  }
  return (eval(u - h) - 2.0 * eval(u) + eval(u + h)) / (h * h);
}

double EmpiricalQuantile::mass_at(double v, double eps) const {
  const auto lo = std::lower_bound(s_.begin(), s_.end(), v - eps);
  const auto hi = std::upper_bound(s_.begin(), s_.end(), v + eps);
  return static_cast<double>(hi - lo) / static_cast<double>(s_.size());
}

double EmpiricalQuantile::cdf(double v) const {
  const auto it = std::upper_bound(s_.begin(), s_.end(), v);
  return static_cast<double>(it - s_.begin()) / static_cast<double>(s_.size());
}

double EmpiricalQuantile::survival(double v) const { return 1.0 - cdf(v); }

double CountStats::share_of(int k) const {
  const auto it = shares.find(k);
  return it == shares.end() ? 0.0 : it->second;
}

CountStats count_stats(const ObservedDataset& ds) {
  CountStats cs;
  cs.total_valid = ds.l;
  std::map<int, std::uint64_t> counts;
  std::uint64_t with_nobs = 0;
  for (const ObservedRow& row : ds.rows) {
    if (row.n_obs.has_value()) {
      ++counts[*row.n_obs];
      ++with_nobs;
    }
  }
  for (const auto& [k, c] : counts) {
    cs.shares[k] = static_cast<double>(c) / static_cast<double>(with_nobs);
    cs.k_max = std::max(cs.k_max, k);
  }
  if (ds.l_invalid.has_value()) {
    const double denom = static_cast<double>(ds.l + *ds.l_invalid);
    cs.invalid_share =
        denom > 0.0 ? static_cast<double>(*ds.l_invalid) / denom : 0.0;
  }
  return cs;
}

std::vector<double> prices(const ObservedDataset& ds) {
  std::vector<double> out;
  out.reserve(ds.rows.size());
  for (const ObservedRow& row : ds.rows) out.push_back(row.transaction_price);
  return out;
}

std::vector<double> prices_with_nobs(const ObservedDataset& ds, int k) {
  std::vector<double> out;
  for (const ObservedRow& row : ds.rows) {
    if (row.n_obs.has_value() && *row.n_obs == k) {
      out.push_back(row.transaction_price);
    }
  }
  return out;
}

std::vector<double> prices_above(const ObservedDataset& ds, double v) {
  std::vector<double> out;
  for (const ObservedRow& row : ds.rows) {
    if (row.transaction_price > v) out.push_back(row.transaction_price);
  }
  return out;
}

}  // namespace truncauct
