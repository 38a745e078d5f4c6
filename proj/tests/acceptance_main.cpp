// Acceptance gate. With a criterion number it prints that suite's full
// transcript, then a single "criterion N: PASS|FAIL" line; with no
// argument it runs all eight and prints just the verdict lines. The exit
// code follows the verdict.
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "truncauct/verify.hpp"

using namespace truncauct;

namespace {

SuiteReport run_criterion(int criterion, const VerifyOptions& opt) {
  switch (criterion) {
    case 1:
      // Counterexample pair: shares, atom, conditional CDF, invalid share.
      return run_counterexample_suite(opt);
    case 2:
      // Screening argmax invariance across N plus FOC residuals.
      return run_lemma1_suite(opt);
    case 3:
      // Uniform risk-neutral optimum at 0.5 for both formats.
      return run_uniform_screening_suite();
    case 4:
      // Round-trip recovery for every identified cell of the summary table.
      return run_roundtrip_suite(opt);
    case 5:
      // Twin constructions: same price law, distinct primitives.
      return run_twin_suite(opt);
    case 6:
      // Equilibrium identities, boundary bid, best-response grid.
      return run_selfconsistency_suite();
    case 7:
      // Three-auction worked example, bit-for-bit.
      return run_replay_suite();
    case 8:
      // Value-formula arbitration for the invalid-count estimator.
      return run_arbitration_suite(opt);
    default:
      std::fprintf(stderr, "unknown criterion %d\n", criterion);
      std::exit(2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [criterion 1..8]\n");
    return 2;
  }
  const VerifyOptions opt;

  if (argc == 2) {
    const int criterion = std::atoi(argv[1]);
    const SuiteReport rep = run_criterion(criterion, opt);
    rep.print(std::cout);
    const bool pass = rep.all_pass();
    std::printf("criterion %d: %s\n", criterion, pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
  }

  bool all_pass = true;
  for (int criterion = 1; criterion <= 8; ++criterion) {
    const SuiteReport rep = run_criterion(criterion, opt);
    const bool pass = rep.all_pass();
    all_pass = all_pass && pass;
    std::printf("criterion %d: %s\n", criterion, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
