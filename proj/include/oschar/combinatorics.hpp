#pragma once

#include "oschar/exact.hpp"

namespace oschar {

struct HArgs {
  long n = 0;
  long i = 0;
  ExactScalar x;
};

/// H_{n,i}(x) = sum_{j=0}^{n} (-1)^j C(n,j) (x-j)^i, the n-th backward
/// difference of u^i at x. Uses 0^0 = 1. Throws std::invalid_argument if
/// n or i is negative.
ExactScalar h_number(const HArgs& args);
ExactScalar h_number(long n, long i, const ExactScalar& x);

// Residual checks. Each returns LHS - RHS of an identity that holds for
// every admissible argument, so the expected value is exactly zero.
// Arguments outside the stated domain throw std::invalid_argument.

/// H_{s,r}(s+1) + H_{s+1,r}(s+2) - H_{s,r}(s+2); s >= 1, r >= 1.
ExactScalar check_pascal_step(long s, long r);

/// sum_{l=0}^{m} C(m,l) H_{n-k+l,i}(n-k+l+1) - H_{n-k,i}(n-k+m+1);
/// 1 <= k <= n, m >= 1, i >= 0.
ExactScalar check_lemma2(long n, long k, long m, long i);

/// With t = n-k-1:
/// sum_{i=0}^{r} k^i H_{t,t+r+1-i}(n) - [H_{t+1,t+r+2}(n)/(t+1) - k^{r+1} t!].
/// Requires 1 <= k <= n-1, r >= 0.
ExactScalar check_lemma3_k(long n, long k, long r);

/// sum_{i=0}^{r} n^i H_{t,t+r+1-i}(n-1) - [H_{t+1,t+r+2}(n)/(t+1) - n^{r+1} t!].
ExactScalar check_lemma3_n(long n, long k, long r);

/// sum_{l=0}^{k+d} C(k+1+d,l) H_{k,l}(k+1) - H_{k+1,k+1+d}(k+2); k, d >= 1.
ExactScalar check_binsum(long k, long d);

}  // namespace oschar
