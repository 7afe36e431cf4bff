#include "oschar/characterization.hpp"

#include "oschar/combinatorics.hpp"

#include <string>

namespace oschar {

namespace {

ExactScalar int_pow(long base, long exp) {
  return ExactScalar(pow(ExactInt(base), static_cast<unsigned long>(exp)));
}

void require_two_sided(const ShiftEquationSpec& spec, const char* op) {
  if (spec.variant() != ShiftVariant::two_sided) {
    throw std::invalid_argument(std::string(op) +
                                " is defined for the two_sided equation only");
  }
}

void require_order(const Jet& f, long needed, const char* op) {
  if (static_cast<long>(f.order()) < needed) {
    throw JetOrderError(std::string(op) + ": jet order " +
                        std::to_string(f.order()) + " < required " +
                        std::to_string(needed));
  }
}

// sum_{i=0}^{N} base^i G^{(N-i)}(0) f^(i)(0)
ExactScalar convolved_derivative(const Jet& g, const Jet& f, long base,
                                 long top) {
  ExactScalar sum = 0;
  ExactScalar weight = 1;
  for (long i = 0; i <= top; ++i) {
    const auto& gi = g[static_cast<std::size_t>(top - i)];
    if (gi != 0) sum += weight * gi * f[static_cast<std::size_t>(i)];
    weight *= base;
  }
  return sum;
}

}  // namespace

ExactScalar residual_eq23(const Jet& f, const ShiftEquationSpec& spec, long r) {
  require_two_sided(spec, "residual_eq23");
  if (r < 0) throw std::invalid_argument("residual_eq23: r must be >= 0");
  const long n = spec.n();
  const long k = spec.k();
  const long t = spec.t();
  const long top = t + r + 1;
  require_order(f, top, "residual_eq23");

  const Jet fj = f.truncated(static_cast<std::size_t>(top));
  const Jet cdf = jet_antiderivative(fj);
  Jet g = g_jet(fj, t);

  ExactScalar lhs = 0;
  ExactScalar rhs = 0;
  for (long l = 0; l <= k; ++l) {
    if (l > 0) g = jet_mul(cdf, g);  // G_{t+l}
    const ExactInt c_lhs = binomial(k - 1, l);
    const ExactInt c_rhs = binomial(k, l);
    const bool odd = l % 2 == 1;
    if (c_lhs != 0) {
      ExactScalar term = c_lhs * convolved_derivative(g, fj, n, top);
      lhs += odd ? ExactScalar(-term) : term;
    }
    ExactScalar term = c_rhs * convolved_derivative(g, fj, k, top);
    rhs += odd ? ExactScalar(-term) : term;
  }
  return lhs - rhs;
}

ExactScalar base_case_residual(const Jet& f, const ShiftEquationSpec& spec) {
  const long t = spec.t();
  require_order(f, t + 1, "base_case_residual");
  const Jet fj = f.truncated(static_cast<std::size_t>(t + 1));
  const Jet g_t = g_jet(fj, t);
  const Jet g_next = jet_mul(jet_antiderivative(fj), g_t);
  const auto ut = static_cast<std::size_t>(t);
  return (t + 1) * g_t[ut] * fj[1] + g_next[ut + 1] * fj[0];
}

ExactScalar solve_next_derivative(const Jet& f_partial,
                                  const ShiftEquationSpec& spec, long r) {
  if (r < 0) throw std::invalid_argument("solve_next_derivative: r must be >= 0");
  require_order(f_partial, r, "solve_next_derivative");
  const ExactScalar& f0 = f_partial[0];
  if (f0 <= 0) {
    throw InductionHypothesisError("solve_next_derivative: f(0) must be > 0");
  }
  ExactScalar expected = f0;
  for (long m = 1; m <= r; ++m) {
    expected *= -f0;
    if (f_partial[static_cast<std::size_t>(m)] != expected) {
      throw InductionHypothesisError(
          "solve_next_derivative: f^(" + std::to_string(m) +
          ")(0) = " + to_fraction_string(f_partial[static_cast<std::size_t>(m)]) +
          " breaks the exponential pattern (expected " +
          to_fraction_string(expected) + ")");
    }
  }

  const long n = spec.n();
  const long k = spec.k();
  const long t = spec.t();
  // f'(0) only enters through terms with d >= 1, which need r >= 1.
  const ExactScalar f1 = r >= 1 ? f_partial[1] : ExactScalar(0);

  // G_j^{(j+d)}(0) under the induction hypothesis; G_0 = f itself.
  auto g_derivative = [&](long j, long d) -> ExactScalar {
    if (j == 0) return d < 0 ? ExactScalar(0) : f_partial[static_cast<std::size_t>(d)];
    return lemma4_closed_form(f0, f1, j, d);
  };

  ExactScalar rhs = 0;
  for (long i = 0; i <= r; ++i) {
    const ExactScalar ki = int_pow(k, i);
    const ExactScalar ni = int_pow(n, i);
    ExactScalar inner = 0;
    for (long l = 0; l <= r - i + 1 && l <= k; ++l) {
      ExactScalar coef = ki * binomial(k, l) - ni * binomial(k - 1, l);
      if (coef == 0) continue;
      if (l % 2 == 1) coef = -coef;
      inner += coef * g_derivative(t + l, r + 1 - i - l);
    }
    rhs += f_partial[static_cast<std::size_t>(i)] * inner;
  }

  const ExactScalar leading =
      (int_pow(n, r + 1) - int_pow(k, r + 1)) * g_derivative(t, 0);
  if (leading == 0) {
    throw InductionHypothesisError("solve_next_derivative: degenerate leading coefficient");
  }
  return rhs / leading;
}

Jet characterize(const ExactScalar& lambda, const ShiftEquationSpec& spec,
                 long R) {
  if (lambda <= 0) throw std::invalid_argument("characterize: lambda must be > 0");
  if (R < 0) throw std::invalid_argument("characterize: R must be >= 0");
  Jet f(static_cast<std::size_t>(R));
  f[0] = lambda;
  for (long r = 0; r < R; ++r) {
    f[static_cast<std::size_t>(r + 1)] = solve_next_derivative(f, spec, r);
  }
  return f;
}

ExactScalar check_final_identity(const ShiftEquationSpec& spec, long r) {
  if (r < 0) throw std::invalid_argument("check_final_identity: r must be >= 0");
  const long n = spec.n();
  const long k = spec.k();
  const long t = spec.t();
  ExactScalar k_side = 0;
  ExactScalar n_side = 0;
  for (long i = 0; i <= r; ++i) {
    k_side += int_pow(k, i) * h_number(t, t + r + 1 - i, ExactScalar(n));
    n_side += int_pow(n, i) * h_number(t, t + r + 1 - i, ExactScalar(n - 1));
  }
  const ExactScalar lhs = (int_pow(n, r + 1) - int_pow(k, r + 1)) * factorial(t);
  return lhs - (k_side - n_side);
}

std::vector<ResidualRow> residual_table(const Jet& f,
                                        const ShiftEquationSpec& spec,
                                        long rmax) {
  std::vector<ResidualRow> rows;
  const long supported = static_cast<long>(f.order()) - spec.t() - 1;
  for (long r = 0; r <= rmax && r <= supported; ++r) {
    rows.push_back({spec.n(), spec.k(), r, residual_eq23(f, spec, r)});
  }
  return rows;
}

}  // namespace oschar
