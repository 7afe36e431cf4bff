#pragma once

#include "oschar/exact.hpp"
#include "oschar/jet.hpp"
#include "oschar/rng.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oschar {

/// A parent distribution on [0, inf) with F(0) = 0 and a bounded density
/// near 0. Implementations are immutable, so one instance may be shared by
/// any number of threads.
class ParentModel {
 public:
  virtual ~ParentModel() = default;

  /// Canonical model string, e.g. "weibull:2,1".
  virtual std::string name() const = 0;
  virtual double pdf(double x) const = 0;
  virtual double cdf(double x) const = 0;
  /// 1 - F(x), accurate in the upper tail.
  virtual double survival(double x) const { return 1.0 - cdf(x); }
  virtual double mean() const = 0;
  virtual double sample(Rng& rng) const = 0;

  /// Smallest x with survival(x) <= q, for q in (0, 1). The default brackets
  /// and bisects.
  virtual double upper_quantile(double q) const;

  /// Points in (0, inf) where the density is not smooth.
  virtual std::vector<double> breakpoints() const { return {}; }

  /// Derivatives of the density at 0, when they are known exactly.
  virtual std::optional<Jet> exact_jet(std::size_t) const { return std::nullopt; }

  virtual bool is_exponential() const { return false; }
};

using ModelPtr = std::shared_ptr<const ParentModel>;

// Factories validate their parameters and throw std::invalid_argument.
// Models whose density is unbounded at 0 (shape < 1) are rejected.
ModelPtr make_exponential(const ExactScalar& lambda);
ModelPtr make_weibull(double shape, double scale);
ModelPtr make_gamma(double shape, double scale);
ModelPtr make_uniform(const ExactScalar& upper);
/// f(x) = sum_i w_i lambda_i e^{-lambda_i x}; weights positive and summing
/// to exactly 1.
ModelPtr make_mixexp(std::vector<ExactScalar> weights,
                     std::vector<ExactScalar> rates);

/// Parses `exp:L`, `weibull:SHAPE,SCALE`, `gamma:SHAPE,SCALE`, `uniform:0,B`
/// and `mixexp:W1,L1,W2,L2,...`. Jet models (`jet:PATH`) carry no density
/// and are handled by the caller.
ModelPtr parse_model(std::string_view text);

}  // namespace oschar
