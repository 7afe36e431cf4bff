#pragma once

#include "oschar/exact.hpp"
#include "oschar/jet.hpp"
#include "oschar/shift_spec.hpp"

#include <stdexcept>
#include <vector>

namespace oschar {

/// Raised by solve_next_derivative when the supplied prefix does not satisfy
/// f^(m)(0) = (-1)^m f(0)^{m+1}.
class InductionHypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// LHS - RHS of the shift equation differentiated t+r+2 times at x = 0:
///
///   sum_{l=0}^{k} (-1)^l C(k-1,l) sum_{i=0}^{t+r+1} n^i G_{t+l}^{(t+r+1-i)}(0) f^(i)(0)
/// - sum_{l=0}^{k} (-1)^l C(k,l)   sum_{i=0}^{t+r+1} k^i G_{t+l}^{(t+r+1-i)}(0) f^(i)(0)
///
/// G-derivatives come from g_jet, never from the closed form. Requires a
/// two_sided spec and f.order() >= t+r+1 (JetOrderError otherwise).
ExactScalar residual_eq23(const Jet& f, const ShiftEquationSpec& spec, long r);

/// (t+1) G_t^(t)(0) f'(0) + G_{t+1}^(t+1)(0) f(0), computed from jets.
/// Vanishes iff f'(0) = -f(0)^2 (for f(0) != 0). Requires f.order() >= t+1.
ExactScalar base_case_residual(const Jet& f, const ShiftEquationSpec& spec);

/// Solves the r-th step of the induction for f^(r+1)(0), given the prefix
/// f(0..r) of `f_partial` (later entries are ignored). The right-hand side is
/// evaluated with the closed form for G-derivatives. Throws
/// InductionHypothesisError if f(0) <= 0 or the prefix is not exponential.
ExactScalar solve_next_derivative(const Jet& f_partial,
                                  const ShiftEquationSpec& spec, long r);

/// Runs the induction from f(0) = lambda up to order R.
Jet characterize(const ExactScalar& lambda, const ShiftEquationSpec& spec,
                 long R);

/// (n^{r+1} - k^{r+1}) t! - [sum_i k^i H_{t,t+r+1-i}(n) - sum_i n^i H_{t,t+r+1-i}(n-1)]
ExactScalar check_final_identity(const ShiftEquationSpec& spec, long r);

struct ResidualRow {
  long n;
  long k;
  long r;
  ExactScalar residual;
};

/// residual_eq23 for every r the jet's order supports (r <= rmax).
std::vector<ResidualRow> residual_table(const Jet& f,
                                        const ShiftEquationSpec& spec,
                                        long rmax);

}  // namespace oschar
