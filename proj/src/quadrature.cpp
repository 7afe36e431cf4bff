#include "oschar/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace oschar {

namespace {

// Abscissae of the 15-point Kronrod rule on [-1, 1] (non-negative half);
// odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrod[i] * sum;
    if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options,
                           std::span<const double> breaks) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("integrate: bounds must be finite");
  }
  if (!(options.rel_tol > 0.0) || options.abs_tol < 0.0) {
    throw std::invalid_argument("integrate: tolerances must be positive");
  }
  if (a == b) return {};
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  std::vector<double> edges{a};
  for (double x : breaks) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel> queue;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
    value += p.value;
    error += p.error;
    queue.push(p);
  }

  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * (b - a);
  std::vector<Panel> finished;  // panels too narrow to split further
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    if (queue.empty()) break;
    if (queue.size() + finished.size() >= options.max_panels) {
      throw QuadratureError("integrate: no convergence within " +
                            std::to_string(options.max_panels) +
                            " panels (error estimate " + std::to_string(error) +
                            ")");
    }
    Panel worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < min_width) {
      finished.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  if (queue.empty() &&
      error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    throw QuadratureError("integrate: tolerance unreachable at double precision");
  }

  // Re-sum so the result does not carry drift from incremental updates.
  double total = 0.0;
  double total_error = 0.0;
  std::size_t panels = finished.size() + queue.size();
  for (const auto& p : finished) {
    total += p.value;
    total_error += p.error;
  }
  for (; !queue.empty(); queue.pop()) {
    total += queue.top().value;
    total_error += queue.top().error;
  }
  return {sign * total, total_error, panels};
}

}  // namespace oschar
