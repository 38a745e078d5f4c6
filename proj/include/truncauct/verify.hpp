#ifndef TRUNCAUCT_VERIFY_HPP
#define TRUNCAUCT_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace truncauct {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> lines;
  double seconds = 0.0;

  bool all_pass() const;
  void add(const std::string& name, bool pass, const std::string& detail);
  std::string to_json() const;
  void print(std::ostream& os) const;
};

// Sizes for the simulation-heavy suites; the defaults match the
// verification targets, smaller values give quick smoke runs.
struct VerifyOptions {
  std::uint64_t seed = 20240817;
  std::uint64_t l_point = 1000000;   // point-estimator round trips
  std::uint64_t l_set_lo = 10000;    // set shrink, small run
  std::uint64_t l_set_hi = 1000000;  // set shrink, large run
  std::uint64_t l_counterexample = 200000;
  std::uint64_t l_twin = 1000000;
  int payoff_grid_points = 10001;
};

// Screening-level invariance in N of the seller's payoff argmax, per
// format/family/utility slice, plus FOC residuals at the solver roots.
SuiteReport run_lemma1_suite(const VerifyOptions& opt = {});

// optimal_screening on Uniform(0,1), risk-neutral, V0=0: both formats 0.5.
SuiteReport run_uniform_screening_suite();

// Round-trip identification matrix: every point-identified cell of the
// summary table at l_point, every set-identified cell at l_set_lo and
// l_set_hi (containment + shrink). Runs first-price quantile mappings
// with the chain-rule factor (see run_arbitration_suite).
SuiteReport run_roundtrip_suite(const VerifyOptions& opt = {});

// The two observationally equivalent second-price designs: closed-form
// share/mass/CDF statistics plus per-n_obs KS distances.
SuiteReport run_counterexample_suite(const VerifyOptions& opt = {});

// First-price twin construction at several alpha2: same price law (KS),
// genuinely different primitives (sup distance).
SuiteReport run_twin_suite(const VerifyOptions& opt = {});

// Bid-function identities: the quantile identity residual on interior
// grids, the zero boundary bid under entry, the entry best-response scan.
SuiteReport run_selfconsistency_suite();

// The three-auction worked example, reproduced bit-for-bit through the
// recorded-bids replay path.
SuiteReport run_replay_suite();

// Runs the first-price-mapping cells of the round-trip matrix under both
// quantile-mapping factors and reports which meets the tolerance.
SuiteReport run_arbitration_suite(const VerifyOptions& opt = {});

// Full summary-table conformance: identified cells via the round-trip
// machinery, not-identified cells via the counterexample constructions.
SuiteReport run_table_suite(const VerifyOptions& opt = {});

// Renders the 6x4 summary matrix of a table-suite report.
std::string render_table(const SuiteReport& report);

}  // namespace truncauct

#endif  // TRUNCAUCT_VERIFY_HPP
