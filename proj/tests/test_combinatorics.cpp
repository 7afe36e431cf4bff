#include "oschar/combinatorics.hpp"

#include <gtest/gtest.h>

#include <map>
#include <tuple>

namespace {

using oschar::ExactScalar;
using oschar::h_number;

// Independent oracle: H_{n,i}(x) as an n-fold backward difference of u^i,
// H_{n,i}(x) = H_{n-1,i}(x) - H_{n-1,i}(x-1), with H_{0,i}(x) = x^i.
ExactScalar backward_difference(long n, long i, const ExactScalar& x) {
  if (n == 0) {
    ExactScalar p = 1;
    for (long e = 0; e < i; ++e) p *= x;
    return p;
  }
  return backward_difference(n - 1, i, x) - backward_difference(n - 1, i, x - 1);
}

TEST(HNumber, Examples) {
  EXPECT_EQ(h_number(3, 3, 5), 6);
  EXPECT_EQ(h_number(2, 1, ExactScalar(17, 2)), 0);
  EXPECT_EQ(h_number(1, 2, 2), 3);
  EXPECT_EQ(h_number(0, 4, 3), 81);
  EXPECT_EQ(h_number({.n = 3, .i = 3, .x = 5}), 6);
}

TEST(HNumber, MatchesBackwardDifference) {
  const ExactScalar xs[] = {0, 1, ExactScalar(7, 3), -4, ExactScalar(-5, 2), 11};
  for (long n = 0; n <= 6; ++n) {
    for (long i = 0; i <= 9; ++i) {
      for (const auto& x : xs) {
        EXPECT_EQ(h_number(n, i, x), backward_difference(n, i, x))
            << "n=" << n << " i=" << i << " x=" << x.get_str();
      }
    }
  }
}

TEST(HNumber, DegreeProperties) {
  const ExactScalar xs[] = {0, ExactScalar(1, 3), 9, -2};
  for (long n = 0; n <= 8; ++n) {
    for (const auto& x : xs) {
      EXPECT_EQ(h_number(n, n, x), oschar::factorial(n));
      for (long i = 0; i < n; ++i) EXPECT_EQ(h_number(n, i, x), 0);
    }
  }
}

TEST(HNumber, RejectsNegativeIndices) {
  EXPECT_THROW(h_number(-1, 2, 0), std::invalid_argument);
  EXPECT_THROW(h_number(2, -1, 0), std::invalid_argument);
}

TEST(Identities, Examples) {
  EXPECT_EQ(oschar::check_pascal_step(1, 3), 0);
  EXPECT_EQ(oschar::check_pascal_step(2, 2), 0);
  EXPECT_EQ(oschar::check_pascal_step(1, 1), 0);
  EXPECT_EQ(oschar::check_lemma2(3, 1, 2, 5), 0);
  EXPECT_EQ(oschar::check_lemma2(2, 1, 1, 0), 0);
  EXPECT_EQ(oschar::check_lemma2(5, 2, 3, 8), 0);
  EXPECT_EQ(oschar::check_lemma3_k(3, 2, 0), 0);
  EXPECT_EQ(oschar::check_lemma3_k(4, 1, 2), 0);
  EXPECT_EQ(oschar::check_lemma3_k(2, 1, 1), 0);
  EXPECT_EQ(oschar::check_lemma3_n(3, 2, 0), 0);
  EXPECT_EQ(oschar::check_lemma3_n(5, 3, 1), 0);
  EXPECT_EQ(oschar::check_lemma3_n(2, 1, 3), 0);
  EXPECT_EQ(oschar::check_binsum(1, 1), 0);
  EXPECT_EQ(oschar::check_binsum(2, 1), 0);
  EXPECT_EQ(oschar::check_binsum(1, 3), 0);
}

TEST(Identities, ShiftedSumAllowsKEqualN) {
  for (long n = 1; n <= 5; ++n) {
    for (long m = 1; m <= 4; ++m) {
      for (long i = 0; i <= 8; ++i) EXPECT_EQ(oschar::check_lemma2(n, n, m, i), 0);
    }
  }
}

TEST(Identities, DomainErrors) {
  EXPECT_THROW(oschar::check_lemma3_k(3, 3, 0), std::invalid_argument);
  EXPECT_THROW(oschar::check_lemma3_n(3, 0, 0), std::invalid_argument);
  EXPECT_THROW(oschar::check_lemma3_k(3, 1, -1), std::invalid_argument);
  EXPECT_THROW(oschar::check_lemma2(3, 4, 1, 0), std::invalid_argument);
  EXPECT_THROW(oschar::check_lemma2(3, 1, 0, 0), std::invalid_argument);
  EXPECT_THROW(oschar::check_pascal_step(0, 1), std::invalid_argument);
  EXPECT_THROW(oschar::check_binsum(0, 1), std::invalid_argument);
}

// The check_lemma3_k residual is sensitive to its k^{r+1} t! term: dropping it
// leaves exactly that amount.
TEST(Identities, WeightedSumDetectsMissingTerm) {
  for (long n = 2; n <= 6; ++n) {
    for (long k = 1; k < n; ++k) {
      const long t = n - k - 1;
      ExactScalar sum = 0;
      for (long i = 0; i <= 2; ++i) {
        sum += oschar::pow(ExactScalar(k), i) * h_number(t, t + 3 - i, n);
      }
      const ExactScalar without_term = h_number(t + 1, t + 4, n) / (t + 1);
      EXPECT_EQ(sum - without_term,
                -oschar::pow(ExactScalar(k), 3) * ExactScalar(oschar::factorial(t)));
    }
  }
}

}  // namespace
