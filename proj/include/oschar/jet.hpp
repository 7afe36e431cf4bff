#pragma once

#include "oschar/exact.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace oschar {

/// Truncated derivative data of a univariate function at 0:
/// (f(0), f'(0), ..., f^(R)(0)). Stores raw derivatives, not Taylor
/// coefficients.
class Jet {
 public:
  /// Zero jet of the given order.
  explicit Jet(std::size_t order);
  /// Throws std::invalid_argument on an empty sequence.
  explicit Jet(std::vector<ExactScalar> derivs);

  std::size_t order() const { return derivs_.size() - 1; }
  std::size_t size() const { return derivs_.size(); }
  const ExactScalar& operator[](std::size_t m) const { return derivs_[m]; }
  ExactScalar& operator[](std::size_t m) { return derivs_[m]; }
  std::span<const ExactScalar> derivs() const { return derivs_; }

  /// First `order + 1` entries. Throws if order exceeds this jet's order.
  Jet truncated(std::size_t order) const;

  /// True when derivs[0] > 0, the requirement on a density jet.
  bool is_pdf_jet() const { return derivs_[0] > 0; }

  /// Unit jet (1, 0, ..., 0).
  static Jet unit(std::size_t order);

  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  std::vector<ExactScalar> derivs_;
};

class JetOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Leibniz rule: (ab)^(m)(0) = sum_i C(m,i) a^(i)(0) b^(m-i)(0).
/// Throws JetOrderError when the orders differ.
Jet jet_mul(const Jet& a, const Jet& b);

/// Jet of F(x) = int_0^x f with F(0) = 0, truncated to f's order.
Jet jet_antiderivative(const Jet& f);

/// Jet of g(x) = f(c x): g^(i)(0) = c^i f^(i)(0).
Jet jet_scale_arg(const Jet& f, const ExactScalar& c);

/// Derivatives of lambda e^{-lambda x}: (-1)^m lambda^{m+1}.
/// Throws std::invalid_argument unless lambda > 0.
Jet exp_jet(const ExactScalar& lambda, std::size_t order);

/// Jet of G_j = F^j f, built from f by antiderivative and repeated products.
Jet g_jet(const Jet& f, long j);

/// Closed form of G_j^{(j+d)}(0) for a density whose derivatives satisfy
/// f^(m)(0) = (-1)^m f(0)^{m+1} up to order d:
///   H_{j,j+d}(j+1) f0^{j+1-d} f1^d   for d >= 0,
///   0                                for -j <= d < 0.
/// Requires j >= 1 and j + d >= 0; f0 must be nonzero when j+1-d < 0.
ExactScalar lemma4_closed_form(const ExactScalar& f0, const ExactScalar& f1,
                               long j, long d);

/// Partial Maclaurin sum sum_{m<terms} f^(m)(0) x^m / m!, evaluated exactly
/// and converted to double at the end. Requires 1 <= terms <= order + 1.
double reconstruct_pdf(const Jet& f, const ExactScalar& x, std::size_t terms);

/// Text format: one rational per line ("num/den", "p" or a decimal). Blank
/// lines and lines starting with '#' are skipped.
Jet read_jet(std::istream& in);
void write_jet(std::ostream& out, const Jet& f);

}  // namespace oschar
