#include "oschar/densities.hpp"

#include "oschar/format.hpp"
#include "oschar/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace oschar {

namespace {

double exact_to_double(const ExactInt& v) { return v.get_d(); }

// n!/(t!(k-1)!), the constant shared by both sides of the two-sided equation.
double side_constant(const ShiftEquationSpec& spec) {
  const ExactInt c = factorial(spec.n()) /
                     (factorial(spec.t()) * factorial(spec.k() - 1));
  return exact_to_double(c);
}

// C int_0^x F^t (1-F)^power f(u) f(scale (x-u)) du
double shifted_os_density(const ParentModel& model, const ShiftEquationSpec& spec,
                          long power, double scale, double x, double quad_tol) {
  if (x <= 0.0) return 0.0;
  const double t = static_cast<double>(spec.t());
  const double p = static_cast<double>(power);
  auto integrand = [&](double u) {
    const double fu = model.pdf(u);
    if (fu == 0.0) return 0.0;
    return std::pow(model.cdf(u), t) * std::pow(model.survival(u), p) * fu *
           model.pdf(scale * (x - u));
  };
  std::vector<double> breaks;
  for (double b : model.breakpoints()) {
    breaks.push_back(b);
    breaks.push_back(x - b / scale);
  }
  QuadratureOptions opts;
  opts.rel_tol = quad_tol;
  // An exact zero integral (e.g. outside a bounded support) must still stop.
  opts.abs_tol = 1e-300;
  return side_constant(spec) * integrate(integrand, 0.0, x, opts, breaks).value;
}

}  // namespace

double os_pdf(const ParentModel& model, long j, long n, double x) {
  if (n < 1 || j < 1 || j > n) {
    throw std::invalid_argument("os_pdf: need 1 <= j <= n");
  }
  if (x < 0.0) return 0.0;
  const double c =
      exact_to_double(factorial(n) / (factorial(j - 1) * factorial(n - j)));
  const double fx = model.pdf(x);
  if (fx == 0.0) return 0.0;
  return c * std::pow(model.cdf(x), static_cast<double>(j - 1)) *
         std::pow(model.survival(x), static_cast<double>(n - j)) * fx;
}

double lhs_pdf(const ParentModel& model, const ShiftEquationSpec& spec,
               double x, double quad_tol) {
  return shifted_os_density(model, spec, spec.k() - 1,
                            static_cast<double>(spec.n()), x, quad_tol);
}

double rhs_pdf(const ParentModel& model, const ShiftEquationSpec& spec,
               double x, double quad_tol) {
  if (!spec.rhs_shifted()) {
    return os_pdf(model, spec.rhs_rank(), spec.rhs_size(), x);
  }
  return shifted_os_density(model, spec, spec.k(),
                            static_cast<double>(spec.k()), x, quad_tol);
}

DensityGrid compare_densities(const ParentModel& model,
                              const ShiftEquationSpec& spec,
                              std::span<const double> points, double quad_tol,
                              unsigned threads) {
  if (!(quad_tol > 0.0)) throw std::invalid_argument("quad_tol must be > 0");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0) || (i > 0 && points[i] < points[i - 1])) {
      throw std::invalid_argument("grid points must be non-negative and increasing");
    }
  }
  DensityGrid grid;
  grid.points.assign(points.begin(), points.end());
  grid.lhs_values.resize(points.size());
  grid.rhs_values.resize(points.size());
  grid.quad_tol = quad_tol;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        grid.lhs_values[i] = lhs_pdf(model, spec, points[i], quad_tol);
        grid.rhs_values[i] = rhs_pdf(model, spec, points[i], quad_tol);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = points.size();
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(
      threads, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < points.size(); ++i) {
    grid.max_abs_diff = std::max(grid.max_abs_diff,
                                 std::abs(grid.lhs_values[i] - grid.rhs_values[i]));
  }
  return grid;
}

double side_support_cutoff(const ParentModel& model,
                           const ShiftEquationSpec& spec, double tail) {
  // Each side is at most (1 + 1/k) times the largest of at most n+1 draws.
  const double draws = static_cast<double>(spec.n() + 1);
  return (1.0 + 1.0 / static_cast<double>(spec.k())) *
         model.upper_quantile(tail / draws);
}

double side_mass(const ParentModel& model, const ShiftEquationSpec& spec,
                 Side side, double quad_tol) {
  const double upper = side_support_cutoff(model, spec);
  std::vector<double> breaks;
  for (double b : model.breakpoints()) {
    for (double c : {1.0, static_cast<double>(spec.n()), static_cast<double>(spec.k())}) {
      breaks.push_back(b / c);
      breaks.push_back(b + b / c);
    }
  }
  auto density = [&](double x) {
    return side == Side::lhs ? lhs_pdf(model, spec, x, quad_tol)
                             : rhs_pdf(model, spec, x, quad_tol);
  };
  QuadratureOptions opts;
  opts.rel_tol = quad_tol;
  return integrate(density, 0.0, upper, opts, breaks).value;
}

std::vector<double> linspace(double a, double b, std::size_t m) {
  if (m == 0) return {};
  if (m == 1) return {a};
  std::vector<double> out(m);
  const double step = (b - a) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) out[i] = a + step * static_cast<double>(i);
  out.back() = b;
  return out;
}

std::vector<double> default_grid(const ParentModel& model,
                                 const ShiftEquationSpec& spec, std::size_t m) {
  // Under an exponential parent with rate lam the left side is distributed as
  // X_{n-k+1:n}, whose cdf is the binomial tail P(Bin(n, 1-e^{-lam x}) >= n-k+1).
  const double lam = 1.0 / model.mean();
  const long n = spec.n();
  const long rank = n - spec.k() + 1;
  auto cdf = [&](double x) {
    const double p = -std::expm1(-lam * x);
    double sum = 0.0;
    for (long i = rank; i <= n; ++i) {
      sum += factorial(n).get_d() / (factorial(i).get_d() * factorial(n - i).get_d()) *
             std::pow(p, static_cast<double>(i)) *
             std::pow(1.0 - p, static_cast<double>(n - i));
    }
    return sum;
  };
  double hi = 1.0 / lam;
  while (cdf(hi) < 0.999) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < 0.999 ? lo : hi) = mid;
  }
  return linspace(0.0, hi, m);
}

void write_density_csv(std::ostream& out, const DensityGrid& grid) {
  out << "x,lhs,rhs,absdiff\n";
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    out << format_double(grid.points[i]) << ',' << format_double(grid.lhs_values[i])
        << ',' << format_double(grid.rhs_values[i]) << ','
        << format_double(std::abs(grid.lhs_values[i] - grid.rhs_values[i])) << '\n';
  }
}

}  // namespace oschar
