#include "oschar/combinatorics.hpp"
#include "oschar/jet.hpp"
#include "oschar/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace {

using oschar::ExactScalar;
using oschar::Jet;

Jet jet(std::initializer_list<ExactScalar> v) { return Jet(std::vector<ExactScalar>(v)); }

// Oracle for products: convert to Taylor coefficients, multiply the
// polynomials, truncate and convert back.
Jet poly_product(const Jet& a, const Jet& b) {
  const std::size_t n = a.size();
  std::vector<ExactScalar> ca(n), cb(n), prod(n);
  for (std::size_t m = 0; m < n; ++m) {
    ca[m] = a[m] / ExactScalar(oschar::factorial(static_cast<long>(m)));
    cb[m] = b[m] / ExactScalar(oschar::factorial(static_cast<long>(m)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) prod[i + j] += ca[i] * cb[j];
  }
  for (std::size_t m = 0; m < n; ++m) {
    prod[m] *= ExactScalar(oschar::factorial(static_cast<long>(m)));
  }
  return Jet(prod);
}

// Derivatives of G_j = (1 - e^{-lx})^j l e^{-lx}
//   = l sum_p C(j,p) (-1)^p e^{-(p+1) l x}.
ExactScalar exp_g_derivative(const ExactScalar& lambda, long j, long m) {
  ExactScalar sum = 0;
  for (long p = 0; p <= j; ++p) {
    const ExactScalar term = ExactScalar(oschar::binomial(j, p)) *
                             oschar::pow(ExactScalar(-(p + 1)) * lambda, m);
    sum += (p % 2 == 0) ? term : ExactScalar(-term);
  }
  return lambda * sum;
}

ExactScalar random_rational(oschar::Rng& rng) {
  const long num = static_cast<long>(rng.below(41)) - 20;
  const long den = static_cast<long>(rng.below(9)) + 1;
  return oschar::rational(num, den);
}

TEST(JetMul, Examples) {
  EXPECT_EQ(oschar::jet_mul(jet({1, 0, 0}), jet({0, 1, 0})), jet({0, 1, 0}));
  EXPECT_EQ(oschar::jet_mul(jet({1, -1, 1}), jet({1, -1, 1})), jet({1, -2, 4}));
  const Jet a = jet({3, ExactScalar(-1, 2), 7, 0});
  EXPECT_EQ(oschar::jet_mul(a, Jet::unit(3)), a);
}

TEST(JetMul, MatchesPolynomialProduct) {
  oschar::Rng rng(17, {1});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t order = rng.below(8);
    Jet a(order), b(order);
    for (std::size_t m = 0; m <= order; ++m) {
      a[m] = random_rational(rng);
      b[m] = random_rational(rng);
    }
    EXPECT_EQ(oschar::jet_mul(a, b), poly_product(a, b));
    EXPECT_EQ(oschar::jet_mul(a, b), oschar::jet_mul(b, a));
  }
}

TEST(JetMul, OrderMismatchThrows) {
  EXPECT_THROW(oschar::jet_mul(Jet(2), Jet(3)), oschar::JetOrderError);
}

TEST(Antiderivative, Examples) {
  EXPECT_EQ(oschar::jet_antiderivative(jet({1, -1, 1})), jet({0, 1, -1}));
  EXPECT_EQ(oschar::jet_antiderivative(oschar::exp_jet(1, 3)), jet({0, 1, -1, 1}));
  EXPECT_EQ(oschar::jet_antiderivative(Jet(4)), Jet(4));
}

TEST(ScaleArg, Examples) {
  EXPECT_EQ(oschar::jet_scale_arg(jet({1, -1, 1}), 2), jet({1, -2, 4}));
  const Jet f = jet({ExactScalar(2, 3), 5, -7});
  EXPECT_EQ(oschar::jet_scale_arg(f, 1), f);
  EXPECT_EQ(oschar::jet_scale_arg(jet({1, -1}), 0), jet({1, 0}));
}

TEST(ExpJet, Examples) {
  EXPECT_EQ(oschar::exp_jet(1, 3), jet({1, -1, 1, -1}));
  EXPECT_EQ(oschar::exp_jet(2, 2), jet({2, -4, 8}));
  EXPECT_EQ(oschar::exp_jet(1, 0), jet({1}));
  EXPECT_THROW(oschar::exp_jet(0, 3), std::invalid_argument);
  EXPECT_THROW(oschar::exp_jet(-1, 3), std::invalid_argument);
}

TEST(ExpJet, ScalingOfTheUnitRate) {
  const ExactScalar lambda(5, 7);
  const Jet scaled = oschar::jet_scale_arg(oschar::exp_jet(1, 8), lambda);
  const Jet f = oschar::exp_jet(lambda, 8);
  for (std::size_t m = 0; m <= 8; ++m) EXPECT_EQ(f[m], lambda * scaled[m]);
}

TEST(GJet, Examples) {
  const Jet f = oschar::exp_jet(1, 2);
  EXPECT_EQ(oschar::g_jet(f, 0), f);
  EXPECT_EQ(oschar::g_jet(f, 1), jet({0, 1, -3}));
  const Jet g2 = oschar::g_jet(jet({4, 9, -2, 1}), 2);
  EXPECT_EQ(g2[0], 0);
  EXPECT_EQ(g2[1], 0);
}

TEST(GJet, MatchesExponentialClosedForm) {
  for (const ExactScalar lambda : {ExactScalar(1, 2), ExactScalar(1), ExactScalar(3)}) {
    const Jet f = oschar::exp_jet(lambda, 12);
    for (long j = 0; j <= 6; ++j) {
      const Jet g = oschar::g_jet(f, j);
      for (long m = 0; m <= 12; ++m) {
        EXPECT_EQ(g[static_cast<std::size_t>(m)], exp_g_derivative(lambda, j, m))
            << "j=" << j << " m=" << m;
      }
    }
  }
}

TEST(GClosedForm, Examples) {
  EXPECT_EQ(oschar::lemma4_closed_form(1, -1, 1, 1), -3);
  EXPECT_EQ(oschar::lemma4_closed_form(1, -1, 2, 0), 2);
  EXPECT_EQ(oschar::lemma4_closed_form(1, 123, 3, -2), 0);
  EXPECT_THROW(oschar::lemma4_closed_form(1, -1, 0, 1), std::invalid_argument);
  EXPECT_THROW(oschar::lemma4_closed_form(1, -1, 2, -3), std::invalid_argument);
}

// Jets that follow f^(m)(0) = (-1)^m f(0)^{m+1} only for m <= d and are
// arbitrary beyond: G_j^(j+d)(0) depends on f up to order d only.
TEST(GClosedForm, HoldsForJetsExponentialUpToD) {
  oschar::Rng rng(2024, {4});
  for (int trial = 0; trial < 20; ++trial) {
    const long d = static_cast<long>(rng.below(7));
    const long j = 1 + static_cast<long>(rng.below(6));
    const ExactScalar f0 = oschar::rational(static_cast<long>(rng.below(9)) + 1,
                                            static_cast<long>(rng.below(5)) + 1);
    Jet f(static_cast<std::size_t>(j + d));
    for (long m = 0; m <= j + d; ++m) {
      f[static_cast<std::size_t>(m)] =
          m <= d ? oschar::pow(-f0, m) * f0 : random_rational(rng);
    }
    const Jet g = oschar::g_jet(f, j);
    EXPECT_EQ(g[static_cast<std::size_t>(j + d)],
              oschar::lemma4_closed_form(f[0], -f0 * f0, j, d))
        << "j=" << j << " d=" << d;
  }
}

TEST(Reconstruct, RecoversTheDensity) {
  EXPECT_NEAR(oschar::reconstruct_pdf(oschar::exp_jet(1, 20), 1, 21), std::exp(-1.0),
              1e-15);
  EXPECT_NEAR(oschar::reconstruct_pdf(oschar::exp_jet(2, 30), ExactScalar(1, 2), 31),
              2 * std::exp(-1.0), 1e-12);
  const Jet f = jet({ExactScalar(7, 3), 2, 5});
  EXPECT_EQ(oschar::reconstruct_pdf(f, 0, 3), oschar::to_double(f[0]));
  EXPECT_THROW(oschar::reconstruct_pdf(f, 1, 4), std::invalid_argument);
  EXPECT_THROW(oschar::reconstruct_pdf(f, 1, 0), std::invalid_argument);
}

TEST(JetIo, RoundTrip) {
  const Jet f = jet({ExactScalar(3, 2), ExactScalar(-5, 2), 9, ExactScalar(-1, 7)});
  std::stringstream buf;
  oschar::write_jet(buf, f);
  EXPECT_EQ(oschar::read_jet(buf), f);
}

TEST(JetIo, AcceptsCommentsAndDecimals) {
  std::istringstream in("# mixture\n1.5\n\n-5/2\n4.5e0\n");
  EXPECT_EQ(oschar::read_jet(in), jet({ExactScalar(3, 2), ExactScalar(-5, 2),
                                       ExactScalar(9, 2)}));
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(oschar::read_jet(empty), std::invalid_argument);
}

TEST(JetBasics, Construction) {
  EXPECT_THROW(Jet(std::vector<ExactScalar>{}), std::invalid_argument);
  EXPECT_EQ(Jet::unit(2), jet({1, 0, 0}));
  EXPECT_EQ(jet({1, 2, 3, 4}).truncated(1), jet({1, 2}));
  EXPECT_THROW(jet({1, 2}).truncated(2), std::invalid_argument);
  EXPECT_TRUE(oschar::exp_jet(1, 1).is_pdf_jet());
  EXPECT_FALSE(jet({0, 1}).is_pdf_jet());
}

}  // namespace
