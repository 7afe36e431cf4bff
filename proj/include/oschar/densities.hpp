#pragma once

#include "oschar/models.hpp"
#include "oschar/shift_spec.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace oschar {

/// Density of X_{j:n}: n!/((j-1)!(n-j)!) F^{j-1} (1-F)^{n-j} f.
/// Throws std::invalid_argument unless 1 <= j <= n.
double os_pdf(const ParentModel& model, long j, long n, double x);

/// Density of X_{n-k:n-1} + X_n/n at x (shared by every variant):
///   C int_0^x F^t(u) (1-F(u))^{k-1} f(u) f(n(x-u)) du,  C = n!/(t!(k-1)!).
/// Throws QuadratureError when the integral does not converge.
double lhs_pdf(const ParentModel& model, const ShiftEquationSpec& spec,
               double x, double quad_tol = 1e-10);

/// Density of the right-hand side. two_sided: X_{n-k:n} + X_{n+1}/k,
///   C int_0^x F^t(u) (1-F(u))^k f(u) f(k(x-u)) du  with the same C;
/// one-sided variants: the plain order statistic X_{rank:n}.
double rhs_pdf(const ParentModel& model, const ShiftEquationSpec& spec,
               double x, double quad_tol = 1e-10);

struct DensityGrid {
  std::vector<double> points;
  std::vector<double> lhs_values;
  std::vector<double> rhs_values;
  double quad_tol = 1e-10;
  double max_abs_diff = 0.0;
};

/// Evaluates both sides on `points` (non-negative, increasing). Points are
/// spread across `threads` workers; the result does not depend on it.
DensityGrid compare_densities(const ParentModel& model,
                              const ShiftEquationSpec& spec,
                              std::span<const double> points,
                              double quad_tol = 1e-10, unsigned threads = 1);

enum class Side { lhs, rhs };

/// Integral of one side's density over [0, side_support_cutoff]; should be
/// 1 up to quadrature error.
double side_mass(const ParentModel& model, const ShiftEquationSpec& spec,
                 Side side, double quad_tol = 1e-10);

/// A point beyond which each side carries at most `tail` probability
/// (union bound over the draws entering the side).
double side_support_cutoff(const ParentModel& model,
                           const ShiftEquationSpec& spec, double tail = 1e-12);

/// m equispaced points on [a, b], both ends included.
std::vector<double> linspace(double a, double b, std::size_t m);

/// 64 points on [0, q], q the 0.999 quantile of the left side when the
/// parent is replaced by the exponential with the same mean.
std::vector<double> default_grid(const ParentModel& model,
                                 const ShiftEquationSpec& spec,
                                 std::size_t m = 64);

/// Header "x,lhs,rhs,absdiff", one row per point.
void write_density_csv(std::ostream& out, const DensityGrid& grid);

}  // namespace oschar
