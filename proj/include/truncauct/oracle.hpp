#ifndef TRUNCAUCT_ORACLE_HPP
#define TRUNCAUCT_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "truncauct/empirics.hpp"
#include "truncauct/numeric.hpp"

namespace truncauct {

// One brute-force check: an observed statistic against its closed-form
// target within a tolerance.
struct OracleCheck {
  std::string name;
  double observed = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct FpTwin {
  double alpha2 = 0.0;
  LinearInterp value_curve;  // V2 on the alpha grid [alpha2, 1]
  LinearInterp bid_curve;    // b2 on the same grid
  bool validity_warning = false;  // T'(0) check failed
  double rearrange_frequency = 0.0;
};

// Alternative first-price primitive generating the same truncated price
// law as the observed quantile function T:
//   b2(alpha) = T((alpha^N - alpha2^N) / (1 - alpha2^N)),
//   V2(alpha) = b2(alpha) + (alpha / (N-1)) b2'(alpha).
// Any alpha2 in (0,1) works when T comes from a binding-reserve
// first-price model, which is what makes the model unidentified.
FpTwin construct_fp_twin(const EmpiricalQuantile& t, int n, double alpha2,
                         int grid_points = 201);

// Forward-simulates a twin: types uniform on [0,1], bidders with type
// below alpha2 stay out, the rest bid through the tabulated bid curve.
// Returns first-price transaction prices of valid auctions.
std::vector<double> simulate_fp_twin(const FpTwin& twin, int n,
                                     std::uint64_t l_total,
                                     std::uint64_t seed);

// Two-sample Kolmogorov-Smirnov sup distance between empirical CDFs.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);

// Simulates the two observationally equivalent second-price designs
// (N fixed at 2 on Uniform[0,1] vs N mixed over {1,2} on Uniform[1/4,1],
// same reserve) and compares their observable statistics against the
// closed forms. Also runs the all-bids extension: even the full bid
// distribution per n_obs coincides.
struct Prop5Report {
  std::vector<OracleCheck> checks;
  double ks_nobs1 = 0.0;  // KS between the two cases' prices given n_obs=1
  double ks_nobs2 = 0.0;
  bool all_pass = false;
};

Prop5Report prop5_counterexample(std::uint64_t l_total, std::uint64_t seed);

}  // namespace truncauct

#endif  // TRUNCAUCT_ORACLE_HPP
