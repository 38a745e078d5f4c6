#ifndef TRUNCAUCT_IDENTIFICATION_HPP
#define TRUNCAUCT_IDENTIFICATION_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "truncauct/empirics.hpp"

namespace truncauct {

// The requested quantities cannot be recovered from the given observables.
class NotIdentifiedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The data are incompatible with the model the estimator assumes
// (empty acceptance region, impossible mass, mismatched supports).
class InconsistentDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Diagnostics {
  std::map<std::string, double> residuals;
  std::map<std::string, double> bandwidths;
  std::map<std::string, double> tuning;  // resolved knobs: offsets, tolerances
  std::vector<std::string> warnings;
  bool rearranged = false;
  double rearrange_frequency = 0.0;
};

struct IdentificationResult {
  std::string proposition;

  // Point estimate of the screening level, or a set of intervals for the
  // set-valued estimators. 2-D set estimators report the projection onto
  // the first threshold here and onto the second in alpha_set_2.
  std::optional<double> alpha_star;
  std::vector<AlphaInterval> alpha_set;
  std::vector<AlphaInterval> alpha_set_2;
  std::vector<std::pair<double, double>> accepted_pairs;

  std::optional<int> n_recovered;
  std::optional<double> entry_cost;

  // (alpha, V(alpha)) for alpha >= the recovered threshold.
  std::vector<std::pair<double, double>> v_grid;
  // Set estimators: (alpha, V_lo(alpha), V_hi(alpha)) band at set endpoints.
  std::vector<std::array<double, 3>> v_band;

  Diagnostics diagnostics;
};

struct EstimatorOptions {
  double bandwidth = 0.0;       // 0 selects each sample's default
  double grid_step = 0.002;     // 1-D acceptance grids
  double grid_step_2d = 0.005;  // 2-D acceptance grids
  double eps_set = 0.01;        // set acceptance tolerance, scale-normalized
  double noise_slack_sigma = 3.0;  // jackknife slack multiplier; 0 disables
  double tail_delta = 0.02;     // upper-tail evaluation offset
  double tau_eq = 0.05;         // curve-equality pre-test threshold
  double mass_eps = 0.0;        // mass-point match window
  double v_grid_step = 0.05;    // output grid resolution
  bool prop2_chainrule = false; // re-derived quantile-mapping factor
  bool jackknife = false;       // carry jackknife SEs in diagnostics
};

// Fixed known N, second-price, reserve, prices only.
IdentificationResult id_sp_fixed_price_only(const ObservedDataset& ds, int n,
                                            const EstimatorOptions& opt = {});

// Fixed known N, first-price, reserve, prices + invalid count.
IdentificationResult id_fp_fixed_invalid(const ObservedDataset& ds, int n,
                                         const EstimatorOptions& opt = {});

// Fixed unknown N, either format, prices + n_obs; recovers N as well.
// Under entry costs additionally recovers F.
IdentificationResult id_fixed_nobs(const ObservedDataset& ds,
                                   const EstimatorOptions& opt = {});

// N varying over two known values, reserve, prices strictly above the
// reserve in both datasets.
IdentificationResult id_vary_known(const ObservedDataset& ds_a,
                                   const ObservedDataset& ds_b, int n_a,
                                   int n_b, AuctionFormat format,
                                   const EstimatorOptions& opt = {});

// N varying and unknown, first-price, reserve, prices + n_obs.
IdentificationResult id_fp_vary_unknown(const ObservedDataset& ds,
                                        const EstimatorOptions& opt = {});

// N varying and unknown, second-price, reserve, prices + n_obs + invalid
// count; set-valued.
IdentificationResult id_sp_vary_invalid_set(const ObservedDataset& ds,
                                            const EstimatorOptions& opt = {});

// Fixed known N, entry costs, either format. First-price needs the
// invalid count and raises NotIdentifiedError without it.
IdentificationResult id_entry_fixed(const ObservedDataset& ds, int n,
                                    AuctionFormat format,
                                    const EstimatorOptions& opt = {});

// N varying over two known values, entry costs; set-valued.
IdentificationResult id_entry_vary_known_set(const ObservedDataset& ds_a,
                                             const ObservedDataset& ds_b,
                                             int n_a, int n_b,
                                             AuctionFormat format,
                                             const EstimatorOptions& opt = {});

// N varying and unknown, entry costs; point-valued for first-price,
// set-valued for second-price.
IdentificationResult id_entry_vary_unknown(const ObservedDataset& ds,
                                           AuctionFormat format,
                                           const EstimatorOptions& opt = {});

// P(second highest of N uniform types <= a) = N a^(N-1) - (N-1) a^N.
double phi_second_highest(int n, double a);

// Share of valid auctions whose price sits at the reserve, as a function
// of the screening level: N (1-a) a^(N-1) / (1 - a^N).
double reserve_mass_curve(int n, double a);

// Share of valid auctions with all N bidders active: (1-a)^N / (1 - a^N).
double all_active_share_curve(int n, double a);

}  // namespace truncauct

#endif  // TRUNCAUCT_IDENTIFICATION_HPP
