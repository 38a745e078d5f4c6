#ifndef TRUNCAUCT_DISTRIBUTIONS_HPP
#define TRUNCAUCT_DISTRIBUTIONS_HPP

#include <string>
#include <utility>
#include <vector>

namespace truncauct {

enum class Family { Uniform, ShiftedUniform, PowerLaw, Tabulated };

struct RegularityReport {
  bool regular = true;
  // Grid points where the finite-difference slope of the virtual value
  // fails to be positive.
  std::vector<double> violations;
};

// Private-value law in quantile form: V(alpha) is the value of the type at
// quantile alpha of the population, alpha in [0, 1]. V is continuous and
// strictly increasing with V(0) >= 0.
class ValueDistribution {
 public:
  static ValueDistribution uniform(double lo, double hi);
  static ValueDistribution shifted_uniform(double lo, double hi);
  // V(alpha) = lo + (hi - lo) * alpha^exponent; exponent > 0. Values pile
  // up near lo for exponent > 1.
  static ValueDistribution power_law(double exponent, double lo = 0.0,
                                     double hi = 1.0);
  // Knots (alpha_i, v_i) with alpha_0 = 0, alpha_last = 1 and both
  // coordinates strictly increasing; evaluated by linear interpolation.
  static ValueDistribution tabulated(std::vector<std::pair<double, double>> knots);

  // V(alpha) for alpha in [0, 1].
  double quantile(double alpha) const;
  // V'(alpha). Defined on [0, 1] except where the derivative is unbounded
  // (power-law with exponent < 1 at alpha = 0), which throws.
  double quantile_deriv(double alpha) const;
  // V(alpha) - (1 - alpha) * V'(alpha) for alpha in (0, 1).
  double virtual_value(double alpha) const;
  // Finite-difference monotonicity scan of the virtual value on a uniform
  // interior grid.
  RegularityReport check_regularity(int grid_size = 200) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  Family family() const { return family_; }
  double power_exponent() const;
  const std::vector<std::pair<double, double>>& knots() const;

 private:
  ValueDistribution() = default;

  Family family_ = Family::Uniform;
  double lo_ = 0.0;
  double hi_ = 1.0;
  double exponent_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
};

enum class UtilityKind { RiskNeutral, Crra, Tabulated };

// Seller-side preferences: an increasing concave utility over money plus the
// value V0 the seller keeps when the good goes unsold.
class SellerPreferences {
 public:
  static SellerPreferences risk_neutral(double outside_value);
  // U(x) = x^rho with rho in (0, 1].
  static SellerPreferences crra(double rho, double outside_value);
  // Knots (x_i, u_i), x strictly increasing, u strictly increasing with
  // non-increasing increments (concavity), checked at construction.
  static SellerPreferences tabulated(std::vector<std::pair<double, double>> knots,
                                     double outside_value);

  double utility(double x) const;
  double marginal_utility(double x) const;
  double outside_value() const { return v0_; }
  UtilityKind kind() const { return kind_; }
  double crra_rho() const;
  const std::vector<std::pair<double, double>>& knots() const;

 private:
  SellerPreferences() = default;

  UtilityKind kind_ = UtilityKind::RiskNeutral;
  double rho_ = 1.0;
  double v0_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

std::string to_string(Family family);

}  // namespace truncauct

#endif  // TRUNCAUCT_DISTRIBUTIONS_HPP
