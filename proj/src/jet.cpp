#include "oschar/jet.hpp"

#include "oschar/combinatorics.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <utility>

namespace oschar {

Jet::Jet(std::size_t order) : derivs_(order + 1) {}

Jet::Jet(std::vector<ExactScalar> derivs) : derivs_(std::move(derivs)) {
  if (derivs_.empty()) throw std::invalid_argument("a jet needs at least f(0)");
}

Jet Jet::truncated(std::size_t order) const {
  if (order > this->order()) {
    throw JetOrderError("cannot truncate a jet of order " +
                        std::to_string(this->order()) + " to order " +
                        std::to_string(order));
  }
  return Jet(std::vector<ExactScalar>(derivs_.begin(),
                                      derivs_.begin() + order + 1));
}

Jet Jet::unit(std::size_t order) {
  Jet out(order);
  out[0] = 1;
  return out;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) {
    throw JetOrderError("jet_mul: order mismatch (" + std::to_string(a.order()) +
                        " vs " + std::to_string(b.order()) + ")");
  }
  Jet out(a.order());
  for (std::size_t m = 0; m < out.size(); ++m) {
    ExactScalar sum = 0;
    for (std::size_t i = 0; i <= m; ++i) {
      if (a[i] == 0 || b[m - i] == 0) continue;
      sum += binomial(static_cast<long>(m), static_cast<long>(i)) * a[i] *
             b[m - i];
    }
    out[m] = sum;
  }
  return out;
}

Jet jet_antiderivative(const Jet& f) {
  Jet out(f.order());
  for (std::size_t m = 1; m < out.size(); ++m) out[m] = f[m - 1];
  return out;
}

Jet jet_scale_arg(const Jet& f, const ExactScalar& c) {
  Jet out(f.order());
  ExactScalar scale = 1;
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = scale * f[m];
    scale *= c;
  }
  return out;
}

Jet exp_jet(const ExactScalar& lambda, std::size_t order) {
  if (lambda <= 0) throw std::invalid_argument("exp_jet: lambda must be > 0");
  Jet out(order);
  ExactScalar value = lambda;
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = value;
    value *= -lambda;
  }
  return out;
}

Jet g_jet(const Jet& f, long j) {
  if (j < 0) throw std::invalid_argument("g_jet: j must be >= 0");
  const Jet cdf = jet_antiderivative(f);
  Jet out = f;
  for (long p = 0; p < j; ++p) out = jet_mul(cdf, out);
  return out;
}

ExactScalar lemma4_closed_form(const ExactScalar& f0, const ExactScalar& f1,
                               long j, long d) {
  if (j < 1) throw std::invalid_argument("lemma4_closed_form: j must be >= 1");
  if (j + d < 0) throw std::invalid_argument("lemma4_closed_form: j + d < 0");
  if (d < 0) return 0;
  return h_number(j, j + d, ExactScalar(j + 1)) * pow(f0, j + 1 - d) *
         pow(f1, d);
}

double reconstruct_pdf(const Jet& f, const ExactScalar& x, std::size_t terms) {
  if (terms == 0 || terms > f.size()) {
    throw JetOrderError("reconstruct_pdf: terms must lie in [1, order + 1]");
  }
  ExactScalar sum = 0;
  ExactScalar power = 1;  // x^m / m!
  for (std::size_t m = 0; m < terms; ++m) {
    sum += f[m] * power;
    power *= x;
    power /= static_cast<long>(m + 1);
  }
  return to_double(sum);
}

Jet read_jet(std::istream& in) {
  std::vector<ExactScalar> derivs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      derivs.push_back(parse_rational(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("jet line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  if (derivs.empty()) throw std::invalid_argument("jet file has no entries");
  return Jet(std::move(derivs));
}

void write_jet(std::ostream& out, const Jet& f) {
  for (const auto& v : f.derivs()) out << to_fraction_string(v) << '\n';
}

}  // namespace oschar
