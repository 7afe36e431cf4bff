#pragma once

#include "oschar/exact.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace oschar {

/// Grid for the exact checks. n runs over 2..nmax and k over 1..n-1
/// (1..n for check_lemma2, which allows k = n).
struct SuiteBounds {
  long nmax = 8;
  long rmax = 6;
  long mmax = 6;
  long imax = 14;
  long dmax = 6;
  /// G_j checks use 1 <= j <= jmax.
  long jmax = 6;
  /// Order used for the converse check characterize(lambda, spec, R).
  long solve_order = 10;
  std::vector<ExactScalar> lambdas = {ExactScalar(1, 2), 1, 2, 3};
  /// Self-test: flips the sign of the k^{r+1} t! term in check_lemma3_k.
  bool tamper = false;
};

struct IdentityFailure {
  std::string identity;
  std::string params;
  ExactScalar residual;
};

struct SuiteResult {
  std::size_t checks = 0;
  std::vector<IdentityFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Throws std::invalid_argument when nmax < 2 or any bound is negative.
void validate(const SuiteBounds& bounds);

/// Pascal step, check_lemma2, both check_lemma3 forms, the binomial H-sum and the
/// final identity of the induction.
SuiteResult run_combinatorial_identities(const SuiteBounds& bounds);

/// g_jet against the closed form for exponential jets (and zero for
/// -j <= d < 0).
SuiteResult run_lemma4_checks(const SuiteBounds& bounds);

/// residual_eq23 of every exponential jet, and characterize == exp_jet.
SuiteResult run_characterization_checks(const SuiteBounds& bounds);

/// All of the above.
SuiteResult run_identity_suite(const SuiteBounds& bounds);

}  // namespace oschar
