#include "oschar/models.hpp"

#include "oschar/format.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/random/gamma_distribution.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oschar {

double ParentModel::upper_quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("upper_quantile: q must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = std::max(mean(), 1.0);
  for (int i = 0; survival(hi) > q; ++i) {
    if (i > 2000) throw std::runtime_error("upper_quantile: no bracket found");
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

namespace {

class Exponential final : public ParentModel {
 public:
  explicit Exponential(ExactScalar lambda)
      : exact_(std::move(lambda)), rate_(to_double(exact_)) {}

  std::string name() const override { return "exp:" + exact_.get_str(); }
  double pdf(double x) const override {
    return x < 0 ? 0.0 : rate_ * std::exp(-rate_ * x);
  }
  double cdf(double x) const override {
    return x <= 0 ? 0.0 : -std::expm1(-rate_ * x);
  }
  double survival(double x) const override {
    return x <= 0 ? 1.0 : std::exp(-rate_ * x);
  }
  double mean() const override { return 1.0 / rate_; }
  double sample(Rng& rng) const override { return -std::log(rng.uniform()) / rate_; }
  double upper_quantile(double q) const override { return -std::log(q) / rate_; }
  std::optional<Jet> exact_jet(std::size_t order) const override {
    return exp_jet(exact_, order);
  }
  bool is_exponential() const override { return true; }

 private:
  ExactScalar exact_;
  double rate_;
};

class Weibull final : public ParentModel {
 public:
  Weibull(double shape, double scale) : shape_(shape), scale_(scale) {}

  std::string name() const override {
    return "weibull:" + format_double(shape_) + "," + format_double(scale_);
  }
  double pdf(double x) const override {
    if (x < 0) return 0.0;
    const double z = x / scale_;
    return shape_ / scale_ * std::pow(z, shape_ - 1.0) * std::exp(-std::pow(z, shape_));
  }
  double cdf(double x) const override {
    return x <= 0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
  }
  double survival(double x) const override {
    return x <= 0 ? 1.0 : std::exp(-std::pow(x / scale_, shape_));
  }
  double mean() const override { return scale_ * std::tgamma(1.0 + 1.0 / shape_); }
  double sample(Rng& rng) const override {
    return scale_ * std::pow(-std::log(rng.uniform()), 1.0 / shape_);
  }
  double upper_quantile(double q) const override {
    return scale_ * std::pow(-std::log(q), 1.0 / shape_);
  }
  bool is_exponential() const override { return shape_ == 1.0; }

 private:
  double shape_;
  double scale_;
};

class Gamma final : public ParentModel {
 public:
  Gamma(double shape, double scale) : dist_(shape, scale) {}

  std::string name() const override {
    return "gamma:" + format_double(dist_.shape()) + "," +
           format_double(dist_.scale());
  }
  double pdf(double x) const override {
    return x < 0 ? 0.0 : boost::math::pdf(dist_, x);
  }
  double cdf(double x) const override {
    return x <= 0 ? 0.0 : boost::math::cdf(dist_, x);
  }
  double survival(double x) const override {
    return x <= 0 ? 1.0 : boost::math::cdf(boost::math::complement(dist_, x));
  }
  double mean() const override { return dist_.shape() * dist_.scale(); }
  double sample(Rng& rng) const override {
    boost::random::gamma_distribution<double> draw(dist_.shape(), dist_.scale());
    return draw(rng);
  }
  double upper_quantile(double q) const override {
    return boost::math::quantile(boost::math::complement(dist_, q));
  }
  bool is_exponential() const override { return dist_.shape() == 1.0; }

 private:
  boost::math::gamma_distribution<double> dist_;
};

class Uniform final : public ParentModel {
 public:
  explicit Uniform(ExactScalar upper)
      : exact_(std::move(upper)), upper_(to_double(exact_)) {}

  std::string name() const override { return "uniform:0," + exact_.get_str(); }
  double pdf(double x) const override {
    return (x >= 0 && x < upper_) ? 1.0 / upper_ : 0.0;
  }
  double cdf(double x) const override {
    return x <= 0 ? 0.0 : (x >= upper_ ? 1.0 : x / upper_);
  }
  double mean() const override { return 0.5 * upper_; }
  double sample(Rng& rng) const override { return upper_ * rng.uniform(); }
  double upper_quantile(double q) const override { return upper_ * (1.0 - q); }
  std::vector<double> breakpoints() const override { return {upper_}; }
  std::optional<Jet> exact_jet(std::size_t order) const override {
    Jet f(order);
    f[0] = 1 / exact_;
    return f;
  }

 private:
  ExactScalar exact_;
  double upper_;
};

class MixExp final : public ParentModel {
 public:
  MixExp(std::vector<ExactScalar> weights, std::vector<ExactScalar> rates)
      : weights_(std::move(weights)), rates_(std::move(rates)) {
    double cum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      w_.push_back(to_double(weights_[i]));
      r_.push_back(to_double(rates_[i]));
      cum += w_.back();
      cumulative_.push_back(cum);
    }
  }

  std::string name() const override {
    std::string out = "mixexp:";
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (i) out += ',';
      out += weights_[i].get_str() + "," + rates_[i].get_str();
    }
    return out;
  }
  double pdf(double x) const override {
    if (x < 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) sum += w_[i] * r_[i] * std::exp(-r_[i] * x);
    return sum;
  }
  double cdf(double x) const override {
    if (x <= 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) sum -= w_[i] * std::expm1(-r_[i] * x);
    return sum;
  }
  double survival(double x) const override {
    if (x <= 0) return 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) sum += w_[i] * std::exp(-r_[i] * x);
    return sum;
  }
  double mean() const override {
    double sum = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) sum += w_[i] / r_[i];
    return sum;
  }
  double sample(Rng& rng) const override {
    const double pick = rng.uniform() * cumulative_.back();
    std::size_t i = 0;
    while (i + 1 < cumulative_.size() && pick >= cumulative_[i]) ++i;
    return -std::log(rng.uniform()) / r_[i];
  }
  std::optional<Jet> exact_jet(std::size_t order) const override {
    Jet f(order);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      ExactScalar term = weights_[i] * rates_[i];
      for (std::size_t m = 0; m <= order; ++m) {
        f[m] += term;
        term *= -rates_[i];
      }
    }
    return f;
  }

 private:
  std::vector<ExactScalar> weights_;
  std::vector<ExactScalar> rates_;
  std::vector<double> w_;
  std::vector<double> r_;
  std::vector<double> cumulative_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::vector<std::string_view> split_args(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    auto comma = text.find(',');
    out.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

ModelPtr make_exponential(const ExactScalar& lambda) {
  require(lambda > 0, "exp: lambda must be > 0");
  return std::make_shared<Exponential>(lambda);
}

ModelPtr make_weibull(double shape, double scale) {
  require(std::isfinite(shape) && std::isfinite(scale) && scale > 0,
          "weibull: shape and scale must be finite, scale > 0");
  require(shape >= 1.0, "weibull: shape < 1 has an unbounded density at 0");
  return std::make_shared<Weibull>(shape, scale);
}

ModelPtr make_gamma(double shape, double scale) {
  require(std::isfinite(shape) && std::isfinite(scale) && scale > 0,
          "gamma: shape and scale must be finite, scale > 0");
  require(shape >= 1.0, "gamma: shape < 1 has an unbounded density at 0");
  return std::make_shared<Gamma>(shape, scale);
}

ModelPtr make_uniform(const ExactScalar& upper) {
  require(upper > 0, "uniform: upper bound must be > 0");
  return std::make_shared<Uniform>(upper);
}

ModelPtr make_mixexp(std::vector<ExactScalar> weights,
                     std::vector<ExactScalar> rates) {
  require(!weights.empty() && weights.size() == rates.size(),
          "mixexp: needs matching weight/rate pairs");
  ExactScalar total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require(weights[i] > 0 && rates[i] > 0, "mixexp: weights and rates must be > 0");
    total += weights[i];
  }
  require(total == 1, "mixexp: weights must sum to 1");
  return std::make_shared<MixExp>(std::move(weights), std::move(rates));
}

ModelPtr parse_model(std::string_view text) {
  const auto colon = text.find(':');
  require(colon != std::string_view::npos,
          "model '" + std::string(text) + "' is not FAMILY:PARAMS");
  const std::string_view family = text.substr(0, colon);
  const auto args = split_args(text.substr(colon + 1));
  auto arity = [&](std::size_t want) {
    require(args.size() == want, std::string(family) + ": expected " +
                                     std::to_string(want) + " parameter(s)");
  };

  if (family == "exp") {
    arity(1);
    return make_exponential(parse_rational(args[0]));
  }
  if (family == "weibull") {
    arity(2);
    return make_weibull(parse_double(args[0]), parse_double(args[1]));
  }
  if (family == "gamma") {
    arity(2);
    return make_gamma(parse_double(args[0]), parse_double(args[1]));
  }
  if (family == "uniform") {
    arity(2);
    require(parse_rational(args[0]) == 0, "uniform: lower bound must be 0");
    return make_uniform(parse_rational(args[1]));
  }
  if (family == "mixexp") {
    require(!args.empty() && args.size() % 2 == 0,
            "mixexp: expected W1,L1,W2,L2,...");
    std::vector<ExactScalar> weights;
    std::vector<ExactScalar> rates;
    for (std::size_t i = 0; i < args.size(); i += 2) {
      weights.push_back(parse_rational(args[i]));
      rates.push_back(parse_rational(args[i + 1]));
    }
    return make_mixexp(std::move(weights), std::move(rates));
  }
  if (family == "jet") {
    throw std::invalid_argument("jet models have no density; use solve/verify");
  }
  throw std::invalid_argument("unknown model family '" + std::string(family) + "'");
}

}  // namespace oschar
