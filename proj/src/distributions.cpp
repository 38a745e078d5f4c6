#include "truncauct/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace truncauct {

namespace {

void check_support(double lo, double hi) {
  if (!(lo >= 0.0) || !(lo < hi) || !std::isfinite(hi)) {
    throw std::invalid_argument(
        "ValueDistribution: need 0 <= support_lo < support_hi < inf");
  }
}

void check_alpha_closed(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("ValueDistribution: alpha outside [0,1]");
  }
}

void check_alpha_open(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("ValueDistribution: alpha outside (0,1)");
  }
}

}  // namespace

ValueDistribution ValueDistribution::uniform(double lo, double hi) {
  check_support(lo, hi);
  ValueDistribution d;
  d.family_ = Family::Uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

ValueDistribution ValueDistribution::shifted_uniform(double lo, double hi) {
  ValueDistribution d = uniform(lo, hi);
  d.family_ = Family::ShiftedUniform;
  return d;
}

ValueDistribution ValueDistribution::power_law(double exponent, double lo,
                                               double hi) {
  check_support(lo, hi);
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("ValueDistribution: power-law exponent must be positive");
  }
  ValueDistribution d;
  d.family_ = Family::PowerLaw;
  d.lo_ = lo;
  d.hi_ = hi;
  d.exponent_ = exponent;
  return d;
}

ValueDistribution ValueDistribution::tabulated(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("ValueDistribution: tabulated needs two or more knots");
  }
  const double eps = 1e-12;
  if (std::abs(knots.front().first) > eps ||
      std::abs(knots.back().first - 1.0) > eps) {
    throw std::invalid_argument(
        "ValueDistribution: tabulated knots must span alpha in [0,1]");
  }
  knots.front().first = 0.0;
  knots.back().first = 1.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first) ||
        !(knots[i].second > knots[i - 1].second)) {
      throw std::invalid_argument(
          "ValueDistribution: tabulated knots must be strictly increasing in "
          "both coordinates");
    }
  }
  check_support(knots.front().second, knots.back().second);
  ValueDistribution d;
  d.family_ = Family::Tabulated;
  d.lo_ = knots.front().second;
  d.hi_ = knots.back().second;
  d.knots_ = std::move(knots);
  return d;
}

double ValueDistribution::quantile(double alpha) const {
  check_alpha_closed(alpha);
  switch (family_) {
    case Family::Uniform:
    case Family::ShiftedUniform:
      return lo_ + (hi_ - lo_) * alpha;
    case Family::PowerLaw:
      return lo_ + (hi_ - lo_) * std::pow(alpha, exponent_);
    case Family::Tabulated: {
      auto it = knots_.begin() + 1;
      while (it + 1 != knots_.end() && it->first < alpha) ++it;
      const auto& a = *(it - 1);
      const auto& b = *it;
      const double w = (alpha - a.first) / (b.first - a.first);
      return a.second + w * (b.second - a.second);
    }
  }
  return 0.0;
}

double ValueDistribution::quantile_deriv(double alpha) const {
  check_alpha_closed(alpha);
  switch (family_) {
    case Family::Uniform:
    case Family::ShiftedUniform:
      return hi_ - lo_;
    case Family::PowerLaw:
      if (alpha == 0.0 && exponent_ < 1.0) {
        throw std::domain_error(
            "ValueDistribution: quantile derivative unbounded at alpha=0");
      }
      if (alpha == 0.0) {
        return exponent_ == 1.0 ? (hi_ - lo_) : 0.0;
      }
      return (hi_ - lo_) * exponent_ * std::pow(alpha, exponent_ - 1.0);
    case Family::Tabulated: {
      // Node queries take the centered two-segment slope, interior points
      // the slope of their segment.
      const double eps = 1e-12;
      for (std::size_t i = 1; i + 1 < knots_.size(); ++i) {
        if (std::abs(alpha - knots_[i].first) <= eps) {
          return (knots_[i + 1].second - knots_[i - 1].second) /
                 (knots_[i + 1].first - knots_[i - 1].first);
        }
      }
      auto it = knots_.begin() + 1;
      while (it + 1 != knots_.end() && it->first < alpha) ++it;
      return (it->second - (it - 1)->second) / (it->first - (it - 1)->first);
    }
  }
  return 0.0;
}

double ValueDistribution::virtual_value(double alpha) const {
  check_alpha_open(alpha);
  return quantile(alpha) - (1.0 - alpha) * quantile_deriv(alpha);
}

RegularityReport ValueDistribution::check_regularity(int grid_size) const {
  if (grid_size < 3) {
    throw std::invalid_argument("check_regularity: grid_size must be >= 3");
  }
  RegularityReport report;
  std::vector<double> j(grid_size);
  const double h = 1.0 / (grid_size + 1);
  for (int i = 0; i < grid_size; ++i) {
    j[i] = virtual_value((i + 1) * h);
  }
  for (int i = 1; i + 1 < grid_size; ++i) {
    if (!(j[i + 1] - j[i - 1] > 0.0)) {
      report.regular = false;
      report.violations.push_back((i + 1) * h);
    }
  }
  return report;
}

double ValueDistribution::power_exponent() const {
  if (family_ != Family::PowerLaw) {
    throw std::logic_error("ValueDistribution: not a power-law family");
  }
  return exponent_;
}

const std::vector<std::pair<double, double>>& ValueDistribution::knots() const {
  if (family_ != Family::Tabulated) {
    throw std::logic_error("ValueDistribution: not a tabulated family");
  }
  return knots_;
}

SellerPreferences SellerPreferences::risk_neutral(double outside_value) {
  if (!(outside_value >= 0.0) || !std::isfinite(outside_value)) {
    throw std::invalid_argument("SellerPreferences: outside value must be finite and >= 0");
  }
  SellerPreferences p;
  p.kind_ = UtilityKind::RiskNeutral;
  p.v0_ = outside_value;
  return p;
}

SellerPreferences SellerPreferences::crra(double rho, double outside_value) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("SellerPreferences: CRRA rho must lie in (0,1]");
  }
  SellerPreferences p = risk_neutral(outside_value);
  p.kind_ = UtilityKind::Crra;
  p.rho_ = rho;
  return p;
}

SellerPreferences SellerPreferences::tabulated(
    std::vector<std::pair<double, double>> knots, double outside_value) {
  if (knots.size() < 2) {
    throw std::invalid_argument("SellerPreferences: tabulated needs two or more knots");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first) ||
        !(knots[i].second > knots[i - 1].second)) {
      throw std::invalid_argument(
          "SellerPreferences: utility knots must be strictly increasing");
    }
  }
  // Concavity: segment slopes must not increase.
  const double tol = 1e-12;
  for (std::size_t i = 2; i < knots.size(); ++i) {
    const double s1 = (knots[i - 1].second - knots[i - 2].second) /
                      (knots[i - 1].first - knots[i - 2].first);
    const double s2 = (knots[i].second - knots[i - 1].second) /
                      (knots[i].first - knots[i - 1].first);
    if (s2 > s1 + tol) {
      throw std::invalid_argument("SellerPreferences: utility knots must be concave");
    }
  }
  SellerPreferences p = risk_neutral(outside_value);
  p.kind_ = UtilityKind::Tabulated;
  p.knots_ = std::move(knots);
  return p;
}

double SellerPreferences::utility(double x) const {
  switch (kind_) {
    case UtilityKind::RiskNeutral:
      return x;
    case UtilityKind::Crra:
      if (rho_ == 1.0) return x;
      if (rho_ == 0.5) return std::sqrt(x);
      return std::pow(x, rho_);
    case UtilityKind::Tabulated: {
      // Clamped linear extension beyond the grid keeps queries defined.
      if (x <= knots_.front().first) {
        const auto& a = knots_[0];
        const auto& b = knots_[1];
        return a.second + (x - a.first) * (b.second - a.second) / (b.first - a.first);
      }
      auto it = knots_.begin() + 1;
      while (it + 1 != knots_.end() && it->first < x) ++it;
      const auto& a = *(it - 1);
      const auto& b = *it;
      return a.second + (x - a.first) * (b.second - a.second) / (b.first - a.first);
    }
  }
  return x;
}

double SellerPreferences::marginal_utility(double x) const {
  switch (kind_) {
    case UtilityKind::RiskNeutral:
      return 1.0;
    case UtilityKind::Crra:
      if (rho_ == 1.0) return 1.0;
      if (x == 0.0) return std::numeric_limits<double>::infinity();
      return rho_ * std::pow(x, rho_ - 1.0);
    case UtilityKind::Tabulated: {
      std::size_t i = 1;
      while (i + 1 < knots_.size() && knots_[i].first < x) ++i;
      return (knots_[i].second - knots_[i - 1].second) /
             (knots_[i].first - knots_[i - 1].first);
    }
  }
  return 1.0;
}

double SellerPreferences::crra_rho() const {
  if (kind_ != UtilityKind::Crra) {
    throw std::logic_error("SellerPreferences: not a CRRA utility");
  }
  return rho_;
}

const std::vector<std::pair<double, double>>& SellerPreferences::knots() const {
  if (kind_ != UtilityKind::Tabulated) {
    throw std::logic_error("SellerPreferences: not a tabulated utility");
  }
  return knots_;
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Uniform: return "uniform";
    case Family::ShiftedUniform: return "shifted_uniform";
    case Family::PowerLaw: return "power_law";
    case Family::Tabulated: return "tabulated";
  }
  return "uniform";
}

}  // namespace truncauct
