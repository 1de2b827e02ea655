#pragma once

#include <string>
#include <vector>

#include "ruin/params.hpp"

namespace ruin {

// One named family of exact checks: how many instances ran and the first mismatch.
struct CheckResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string witness;  // first failing instance with both sides printed
  bool pass() const { return failures == 0 && cases > 0; }
};

struct VerifyReport {
  std::string suite;
  std::string params;
  std::vector<CheckResult> checks;
  bool pass() const;
};

// Fibonacci-type identities, denominator brackets, reflection, values at (1,1,1) and the
// two lambda constructions. Series checks use the given z truncation order.
VerifyReport verify_identities(const ModelParams& p, int seriesDegree = 12);

// Runs symmetry between a and 1-a for 2 <= n <= nMax.
VerifyReport verify_symmetry(const Rational& a, int nMax);

// Closed-form rho against the absorbing-chain solve on every pair.
VerifyReport verify_rho(const ModelParams& p);

// K_n, first passage and (when f >= 3) meander series against path enumeration.
VerifyReport verify_oracle(const ModelParams& p, int lmax);

// Limit-law checks for persistence a: density of the special case, its mean and mode,
// the sech^2 inversion and the homogeneous reductions.
VerifyReport verify_limits(double a);

}  // namespace ruin
