#pragma once

#include "oschar/models.hpp"
#include "oschar/shift_spec.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace oschar {

struct SidesSample {
  std::vector<double> lhs;
  std::vector<double> rhs;
};

/// Draws `count` independent realisations of each side of the equation.
/// Side s, chunk c of kSampleChunk values uses the sub-stream (seed, s, c),
/// so the output depends only on (model, spec, count, seed), never on
/// `threads`.
SidesSample sample_sides(const ParentModel& model, const ShiftEquationSpec& spec,
                         std::size_t count, std::uint64_t seed,
                         unsigned threads = 1);

inline constexpr std::size_t kSampleChunk = 1 << 14;

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value at
/// effective size n_a n_b / (n_a + n_b). Throws on empty input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

enum class Verdict { consistent, rejected };

struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_lhs = 0;
  std::size_t n_rhs = 0;
  std::uint64_t seed = 0;
  ShiftEquationSpec spec{2, 1};
  double alpha = 0.01;
  Verdict verdict = Verdict::consistent;
  /// "asymptotic" or "permutation".
  std::string method;
  /// Set when no outcome of the test could reach p < alpha.
  bool low_power = false;
};

/// sample_sides followed by ks_two_sample; rejected iff p < alpha.
TestReport equation_test(const ParentModel& model, const ShiftEquationSpec& spec,
                         std::size_t count, std::uint64_t seed, double alpha,
                         unsigned threads = 1);

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponentiality test on observed data built on the shift equation.
///
/// The data are shuffled once (stream (seed, 0xD)) and cut into consecutive
/// disjoint block pairs: a block of n values feeds one left-side statistic
/// (the first n-1 give the order statistic, the last is the shift), the
/// following block (n+1 values two-sided, n one-sided) feeds one right-side
/// statistic. Leftover values are dropped. The KS statistic of the two
/// samples is compared with `permutations` random relabellings of the pooled
/// block statistics (stream (seed, 0xE)); p = (1 + #{D* >= D}) / (P + 1).
///
/// Requires all data > 0, at least 2(n+1) values and permutations >= 1.
TestReport gof_exponentiality(std::span<const double> data,
                              const ShiftEquationSpec& spec,
                              std::size_t permutations, std::uint64_t seed,
                              double alpha);

std::string_view verdict_name(Verdict v);

/// {statistic, p_value, n_lhs, n_rhs, seed, spec:{n,k,variant}, alpha,
///  verdict, method, low_power}
nlohmann::ordered_json to_json(const TestReport& report);

/// Newline-delimited decimal numbers; blank lines and '#' comments skipped.
std::vector<double> read_data(std::istream& in);

}  // namespace oschar
