#include "oschar/identity_suite.hpp"

#include "oschar/characterization.hpp"
#include "oschar/combinatorics.hpp"
#include "oschar/jet.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace oschar {

namespace {

class Recorder {
 public:
  explicit Recorder(SuiteResult& out) : out_(out) {}

  template <typename... Params>
  void expect_zero(const char* identity, const ExactScalar& residual,
                   const Params&... params) {
    ++out_.checks;
    if (residual == 0) return;
    out_.failures.push_back({identity, describe(params...), residual});
  }

  template <typename... Params>
  static std::string describe(const Params&... params) {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const auto& kv) {
      if (!first) os << ';';
      first = false;
      os << kv.first << '=' << kv.second;
    };
    (put(params), ...);
    return os.str();
  }

 private:
  SuiteResult& out_;
};

using Param = std::pair<const char*, std::string>;

Param p(const char* name, long v) { return {name, std::to_string(v)}; }
Param p(const char* name, const ExactScalar& v) { return {name, v.get_str()}; }

void merge(SuiteResult& into, SuiteResult&& from) {
  into.checks += from.checks;
  for (auto& f : from.failures) into.failures.push_back(std::move(f));
}

}  // namespace

void validate(const SuiteBounds& b) {
  if (b.nmax < 2) throw std::invalid_argument("nmax must be >= 2");
  if (b.rmax < 0 || b.mmax < 1 || b.imax < 0 || b.dmax < 1 || b.jmax < 1 ||
      b.solve_order < 0) {
    throw std::invalid_argument("suite bounds out of range");
  }
  for (const auto& lambda : b.lambdas) {
    if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
  }
}

SuiteResult run_combinatorial_identities(const SuiteBounds& b) {
  validate(b);
  SuiteResult out;
  Recorder rec(out);

  for (long s = 1; s <= b.nmax; ++s) {
    for (long r = 1; r <= b.imax; ++r) {
      rec.expect_zero("pascal_step", check_pascal_step(s, r), p("s", s),
                      p("r", r));
    }
  }
  for (long n = 2; n <= b.nmax; ++n) {
    for (long k = 1; k <= n; ++k) {
      for (long m = 1; m <= b.mmax; ++m) {
        for (long i = 0; i <= b.imax; ++i) {
          rec.expect_zero("lemma2", check_lemma2(n, k, m, i), p("n", n),
                          p("k", k), p("m", m), p("i", i));
        }
      }
    }
  }
  for (long n = 2; n <= b.nmax; ++n) {
    for (long k = 1; k <= n - 1; ++k) {
      const ShiftEquationSpec spec(n, k);
      for (long r = 0; r <= b.rmax; ++r) {
        ExactScalar res_k = check_lemma3_k(n, k, r);
        if (b.tamper) {
          res_k += 2 * ExactScalar(pow(ExactInt(k), static_cast<unsigned long>(r + 1)) * factorial(n - k - 1));
        }
        rec.expect_zero("lemma3_k", res_k, p("n", n), p("k", k), p("r", r));
        rec.expect_zero("lemma3_n", check_lemma3_n(n, k, r), p("n", n),
                        p("k", k), p("r", r));
        rec.expect_zero("final_identity", check_final_identity(spec, r),
                        p("n", n), p("k", k), p("r", r));
      }
    }
  }
  for (long k = 1; k <= b.nmax; ++k) {
    for (long d = 1; d <= b.dmax; ++d) {
      rec.expect_zero("binsum", check_binsum(k, d), p("k", k), p("d", d));
    }
  }
  return out;
}

SuiteResult run_lemma4_checks(const SuiteBounds& b) {
  validate(b);
  SuiteResult out;
  Recorder rec(out);
  const auto order = static_cast<std::size_t>(b.jmax + b.dmax);
  for (const auto& lambda : b.lambdas) {
    const Jet f = exp_jet(lambda, order);
    for (long j = 1; j <= b.jmax; ++j) {
      const Jet g = g_jet(f, j);
      for (long d = -j; d <= b.dmax; ++d) {
        const auto m = static_cast<std::size_t>(j + d);
        rec.expect_zero("lemma4", g[m] - lemma4_closed_form(f[0], f[1], j, d),
                        p("lambda", lambda), p("j", j), p("d", d));
      }
    }
  }
  return out;
}

SuiteResult run_characterization_checks(const SuiteBounds& b) {
  validate(b);
  SuiteResult out;
  Recorder rec(out);
  for (const auto& lambda : b.lambdas) {
    const Jet expected = exp_jet(lambda, static_cast<std::size_t>(b.solve_order));
    for (long n = 2; n <= b.nmax; ++n) {
      const Jet f = exp_jet(lambda, static_cast<std::size_t>(n + b.rmax));
      for (long k = 1; k <= n - 1; ++k) {
        const ShiftEquationSpec spec(n, k);
        for (long r = 0; r <= b.rmax; ++r) {
          rec.expect_zero("forward_residual", residual_eq23(f, spec, r),
                          p("lambda", lambda), p("n", n), p("k", k), p("r", r));
        }
        const Jet solved = characterize(lambda, spec, b.solve_order);
        for (std::size_t m = 0; m < solved.size(); ++m) {
          rec.expect_zero("converse", solved[m] - expected[m],
                          p("lambda", lambda), p("n", n), p("k", k),
                          p("m", static_cast<long>(m)));
        }
      }
    }
  }
  return out;
}

SuiteResult run_identity_suite(const SuiteBounds& b) {
  SuiteResult out = run_combinatorial_identities(b);
  merge(out, run_lemma4_checks(b));
  merge(out, run_characterization_checks(b));
  return out;
}

}  // namespace oschar
