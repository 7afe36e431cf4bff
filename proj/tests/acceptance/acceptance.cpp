// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria. argv[1] is the path of the oschar executable.

#include "oschar/characterization.hpp"
#include "oschar/densities.hpp"
#include "oschar/identity_suite.hpp"
#include "oschar/jet.hpp"
#include "oschar/models.hpp"
#include "oschar/montecarlo.hpp"
#include "oschar/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using oschar::ExactScalar;
using oschar::Jet;
using oschar::ShiftEquationSpec;

// Grid and tolerances.
constexpr long kNmax = 8;
constexpr long kRmax = 6;
constexpr long kMmax = 6;
constexpr long kImax = 14;
constexpr long kDmax = 6;
constexpr long kJmax = 6;
constexpr long kSolveOrder = 10;
constexpr int kRandomJets = 20;
constexpr double kSuiteSeconds = 60.0;
constexpr double kDensitySeconds = 10.0;
constexpr double kMonteCarloSeconds = 30.0;
constexpr double kQuadTol = 1e-10;
constexpr double kDensityTol = 1e-8;
constexpr double kWeibullGap = 1e-2;
constexpr std::size_t kMcCount = 200000;
constexpr double kAlpha = 0.01;
constexpr double kWeibullP = 1e-6;
const std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

const ExactScalar kLambdas[] = {ExactScalar(1, 2), ExactScalar(1), ExactScalar(2),
                                ExactScalar(3)};

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

Check criterion1() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  oschar::SuiteBounds b;
  b.nmax = kNmax;
  b.rmax = kRmax;
  b.mmax = kMmax;
  b.imax = kImax;
  b.dmax = kDmax;
  const auto result = oschar::run_combinatorial_identities(b);
  const double secs = seconds_since(start);
  if (!result.ok()) {
    const auto& f = result.failures.front();
    c.fail(f.identity + " " + f.params + " residual " + f.residual.get_str());
  }
  if (secs >= kSuiteSeconds) c.fail("runtime " + fmt(secs) + " s");
  if (c.ok) c.detail = std::to_string(result.checks) + " identities, " + fmt(secs) + " s";
  return c;
}

Check criterion2() {
  Check c;
  std::size_t checks = 0;
  for (const auto& lambda : kLambdas) {
    const Jet f = oschar::exp_jet(lambda, kJmax + kDmax);
    for (long j = 1; j <= kJmax; ++j) {
      const Jet g = oschar::g_jet(f, j);
      for (long d = -j; d <= kDmax; ++d) {
        const ExactScalar& got = g[static_cast<std::size_t>(j + d)];
        const ExactScalar want = oschar::lemma4_closed_form(f[0], f[1], j, d);
        ++checks;
        if (got != want || (d < 0 && got != 0)) {
          c.fail("lambda=" + lambda.get_str() + " j=" + std::to_string(j) +
                 " d=" + std::to_string(d));
        }
      }
    }
  }
  // Jets exponential through order d only; higher entries are random.
  oschar::Rng rng(20240601, {2});
  for (int trial = 0; trial < kRandomJets; ++trial) {
    const long d = static_cast<long>(rng.below(kDmax + 1));
    const long j = 1 + static_cast<long>(rng.below(kJmax));
    const ExactScalar f0 = oschar::rational(1 + static_cast<long>(rng.below(12)),
                                            1 + static_cast<long>(rng.below(6)));
    Jet f(static_cast<std::size_t>(j + d));
    for (long m = 0; m <= j + d; ++m) {
      f[static_cast<std::size_t>(m)] =
          m <= d ? ExactScalar(oschar::pow(-f0, m) * f0)
                 : oschar::rational(static_cast<long>(rng.below(201)) - 100,
                                    1 + static_cast<long>(rng.below(9)));
    }
    const Jet g = oschar::g_jet(f, j);
    ++checks;
    if (g[static_cast<std::size_t>(j + d)] != oschar::lemma4_closed_form(f[0], -f0 * f0, j, d)) {
      c.fail("random jet j=" + std::to_string(j) + " d=" + std::to_string(d));
    }
  }
  if (c.ok) c.detail = std::to_string(checks) + " exact comparisons";
  return c;
}

Check criterion3() {
  Check c;
  std::size_t checks = 0;
  for (const auto& lambda : kLambdas) {
    for (long n = 2; n <= kNmax; ++n) {
      const Jet f = oschar::exp_jet(lambda, static_cast<std::size_t>(n + kRmax));
      for (long k = 1; k < n; ++k) {
        for (long r = 0; r <= kRmax; ++r) {
          ++checks;
          const ExactScalar res = oschar::residual_eq23(f, ShiftEquationSpec(n, k), r);
          if (res != 0) {
            c.fail("lambda=" + lambda.get_str() + " n=" + std::to_string(n) +
                   " k=" + std::to_string(k) + " r=" + std::to_string(r) +
                   " residual " + res.get_str());
          }
        }
      }
    }
  }
  if (c.ok) c.detail = std::to_string(checks) + " zero residuals";
  return c;
}

Check criterion4() {
  Check c;
  std::size_t solved = 0;
  for (const auto& lambda : kLambdas) {
    const Jet expected = oschar::exp_jet(lambda, kSolveOrder);
    for (long n = 2; n <= kNmax; ++n) {
      for (long k = 1; k < n; ++k) {
        ++solved;
        if (oschar::characterize(lambda, ShiftEquationSpec(n, k), kSolveOrder) != expected) {
          c.fail("characterize lambda=" + lambda.get_str() + " n=" + std::to_string(n) +
                 " k=" + std::to_string(k));
        }
      }
    }
  }
  // f(x) = e^{-x}/2 + e^{-2x}
  Jet mix(8);
  for (long m = 0; m <= 8; ++m) {
    mix[static_cast<std::size_t>(m)] =
        oschar::pow(ExactScalar(-1), m) / 2 + oschar::pow(ExactScalar(-2), m);
  }
  bool detected = false;
  std::string first;
  for (long r = 0; r <= 3 && !detected; ++r) {
    const ExactScalar res = oschar::residual_eq23(mix, ShiftEquationSpec(3, 2), r);
    if (res != 0) {
      detected = true;
      first = "r=" + std::to_string(r) + " residual " + res.get_str();
    }
  }
  if (!detected) c.fail("mixture residuals vanish for r <= 3");
  if (c.ok) c.detail = std::to_string(solved) + " specs solved; mixture " + first;
  return c;
}

Check criterion5() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const ShiftEquationSpec spec(3, 2);
  const auto grid = oschar::linspace(0, 8, 64);
  const auto e = oschar::compare_densities(*oschar::make_exponential(1), spec, grid, kQuadTol);
  double closed_err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double want = 6.0 * (std::exp(-2 * x) - std::exp(-3 * x));
    closed_err = std::max({closed_err, std::abs(e.lhs_values[i] - want),
                           std::abs(e.rhs_values[i] - want)});
  }
  if (!(closed_err < kDensityTol)) c.fail("closed-form error " + fmt(closed_err));
  if (!(e.max_abs_diff < kDensityTol)) c.fail("Exp(1) max_abs_diff " + fmt(e.max_abs_diff));
  const auto w = oschar::compare_densities(*oschar::make_weibull(2, 1), spec, grid, kQuadTol);
  if (!(w.max_abs_diff > kWeibullGap)) c.fail("Weibull max_abs_diff " + fmt(w.max_abs_diff));
  const double secs = seconds_since(start);
  if (secs >= kDensitySeconds) c.fail("runtime " + fmt(secs) + " s");
  if (c.ok) {
    c.detail = "closed-form err " + fmt(closed_err) + ", exp diff " + fmt(e.max_abs_diff) +
               ", weibull diff " + fmt(w.max_abs_diff) + ", " + fmt(secs) + " s";
  }
  return c;
}

Check criterion6() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const ShiftEquationSpec spec(3, 2);
  const auto expo = oschar::make_exponential(1);
  const auto weib = oschar::make_weibull(2, 1);
  double min_exp_p = 1.0;
  double max_weib_p = 0.0;
  for (const auto seed : kSeeds) {
    const auto e = oschar::equation_test(*expo, spec, kMcCount, seed, kAlpha);
    min_exp_p = std::min(min_exp_p, e.p_value);
    if (e.verdict != oschar::Verdict::consistent) {
      c.fail("exponential rejected, seed " + std::to_string(seed) + " p " + fmt(e.p_value));
    }
    const auto w = oschar::equation_test(*weib, spec, kMcCount, seed, kAlpha);
    max_weib_p = std::max(max_weib_p, w.p_value);
    if (w.verdict != oschar::Verdict::rejected || !(w.p_value < kWeibullP)) {
      c.fail("Weibull not rejected, seed " + std::to_string(seed) + " p " + fmt(w.p_value));
    }
  }
  const double secs = seconds_since(start);
  if (secs >= kMonteCarloSeconds) c.fail("runtime " + fmt(secs) + " s");
  if (c.ok) {
    c.detail = "min exp p " + fmt(min_exp_p) + ", max Weibull p " + fmt(max_weib_p) + ", " +
               fmt(secs) + " s";
  }
  return c;
}

Check criterion7() {
  Check c;
  const auto model = oschar::make_exponential(1);
  oschar::Rng rng(7, {7});
  std::vector<double> data(5000);
  for (auto& x : data) x = model->sample(rng);
  const ShiftEquationSpec spec(3, 2);
  double reference = -1.0;
  for (const double scale : {0.1, 1.0, 7.3}) {
    std::vector<double> scaled(data);
    for (auto& x : scaled) x *= scale;
    const double d = oschar::gof_exponentiality(scaled, spec, 199, 11, kAlpha).statistic;
    if (reference < 0) {
      reference = d;
    } else if (d != reference) {
      c.fail("scale " + fmt(scale) + " changed D");
    }
  }
  if (c.ok) c.detail = "D = " + fmt(reference) + " for c in {0.1, 1, 7.3}";
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Check criterion8(const std::string& exe) {
  Check c;
  if (exe.empty()) {
    c.fail("no oschar executable given");
    return c;
  }
  const auto dir = std::filesystem::temp_directory_path() / "oschar_acceptance";
  std::filesystem::create_directories(dir);
  std::string outputs[2];
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("mc" + std::to_string(run) + ".json");
    std::filesystem::remove(out);
    const std::string cmd = "\"" + exe + "\" mc --model weibull:2,1 --n 3 --k 2 --count 50000"
                            " --seed 42 --threads 2 --out \"" + out.string() + "\"";
    const int status = std::system(cmd.c_str());
    // Weibull is rejected, so the run exits 1 after writing its report.
    if (status == -1 || !std::filesystem::exists(out)) {
      c.fail("mc run " + std::to_string(run) + " produced no report");
      return c;
    }
    outputs[run] = slurp(out);
  }
  if (outputs[0].empty() || outputs[0] != outputs[1]) c.fail("reports differ");
  if (c.ok) c.detail = std::to_string(outputs[0].size()) + " identical bytes";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::function<Check()> criteria[] = {
      criterion1, criterion2, criterion3, criterion4,
      criterion5, criterion6, criterion7, [&] { return criterion8(exe); },
  };
  int failed = 0;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    Check c;
    try {
      c = criteria[i]();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << c.detail
              << std::endl;
  }
  return failed;
}
