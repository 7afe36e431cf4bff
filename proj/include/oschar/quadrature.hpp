#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace oschar {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_panels = std::size_t{1} << 15;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// The panel with the largest |K15 - G7| is halved until the summed
/// estimate drops below max(abs_tol, rel_tol * |integral|). Interior
/// `breaks` (any order, points outside (a, b) ignored) seed the initial
/// panels so kinks sit on panel edges. Throws QuadratureError when the
/// panel cap is reached first.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {},
                           std::span<const double> breaks = {});

}  // namespace oschar
