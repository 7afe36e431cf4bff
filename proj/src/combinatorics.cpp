#include "oschar/combinatorics.hpp"

#include <stdexcept>
#include <string>

namespace oschar {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// sum_{i=0}^{r} base^i H_{t,t+r+1-i}(x)
ExactScalar weighted_h_sum(long base, long t, long r, const ExactScalar& x) {
  ExactScalar sum = 0;
  ExactScalar weight = 1;
  for (long i = 0; i <= r; ++i) {
    sum += weight * h_number(t, t + r + 1 - i, x);
    weight *= base;
  }
  return sum;
}

// H_{t+1,t+r+2}(n)/(t+1) - base^{r+1} t!
ExactScalar lemma3_rhs(long n, long t, long r, long base) {
  ExactScalar head = h_number(t + 1, t + r + 2, ExactScalar(n)) / (t + 1);
  ExactScalar tail(pow(ExactInt(base), static_cast<unsigned long>(r + 1)) *
                   factorial(t));
  return head - tail;
}

void require_lemma3_domain(long n, long k, long r) {
  require(n >= 2 && k >= 1 && k <= n - 1,
          "check_lemma3: 1 <= k <= n-1");
  require(r >= 0, "check_lemma3: r >= 0");
}

}  // namespace

ExactScalar h_number(long n, long i, const ExactScalar& x) {
  require(n >= 0 && i >= 0, "h_number: n and i must be non-negative");
  ExactScalar sum = 0;
  for (long j = 0; j <= n; ++j) {
    ExactScalar term = binomial(n, j) * pow(ExactScalar(x - j), i);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

ExactScalar h_number(const HArgs& args) {
  return h_number(args.n, args.i, args.x);
}

ExactScalar check_pascal_step(long s, long r) {
  require(s >= 1 && r >= 1, "check_pascal_step: s, r >= 1");
  return h_number(s, r, s + 1) + h_number(s + 1, r, s + 2) -
         h_number(s, r, s + 2);
}

ExactScalar check_lemma2(long n, long k, long m, long i) {
  require(k >= 1 && k <= n, "check_lemma2: 1 <= k <= n");
  require(m >= 1 && i >= 0, "check_lemma2: m >= 1, i >= 0");
  const long base = n - k;
  ExactScalar lhs = 0;
  for (long l = 0; l <= m; ++l) {
    lhs += binomial(m, l) * h_number(base + l, i, base + l + 1);
  }
  return lhs - h_number(base, i, base + m + 1);
}

ExactScalar check_lemma3_k(long n, long k, long r) {
  require_lemma3_domain(n, k, r);
  const long t = n - k - 1;
  return weighted_h_sum(k, t, r, n) - lemma3_rhs(n, t, r, k);
}

ExactScalar check_lemma3_n(long n, long k, long r) {
  require_lemma3_domain(n, k, r);
  const long t = n - k - 1;
  return weighted_h_sum(n, t, r, n - 1) - lemma3_rhs(n, t, r, n);
}

ExactScalar check_binsum(long k, long d) {
  require(k >= 1 && d >= 1, "check_binsum: k, d >= 1");
  ExactScalar lhs = 0;
  for (long l = 0; l <= k + d; ++l) {
    lhs += binomial(k + 1 + d, l) * h_number(k, l, k + 1);
  }
  return lhs - h_number(k + 1, k + 1 + d, k + 2);
}

}  // namespace oschar
