#include "oschar/montecarlo.hpp"

#include "oschar/format.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <numbers>
#include <thread>

namespace oschar {

namespace {

constexpr std::uint64_t kLhsStream = 0;
constexpr std::uint64_t kRhsStream = 1;
constexpr std::uint64_t kShuffleStream = 0xD;
constexpr std::uint64_t kPermutationStream = 0xE;

// The rank-th smallest (1-based) of `draws` plus shift/divisor. Reorders draws.
double order_stat_plus_shift(std::span<double> draws, long rank, double shift,
                             double divisor) {
  auto nth = draws.begin() + (rank - 1);
  std::nth_element(draws.begin(), nth, draws.end());
  return *nth + shift / divisor;
}

double lhs_statistic(std::span<double> block, const ShiftEquationSpec& spec) {
  const auto os = static_cast<std::size_t>(spec.lhs_size());
  return order_stat_plus_shift(block.first(os), spec.lhs_rank(), block[os],
                               static_cast<double>(spec.n()));
}

double rhs_statistic(std::span<double> block, const ShiftEquationSpec& spec) {
  const auto os = static_cast<std::size_t>(spec.rhs_size());
  if (!spec.rhs_shifted()) {
    return order_stat_plus_shift(block.first(os), spec.rhs_rank(), 0.0, 1.0);
  }
  return order_stat_plus_shift(block.first(os), spec.rhs_rank(), block[os],
                               static_cast<double>(spec.k()));
}

std::size_t lhs_block_size(const ShiftEquationSpec& spec) {
  return static_cast<std::size_t>(spec.lhs_size() + 1);
}

std::size_t rhs_block_size(const ShiftEquationSpec& spec) {
  return static_cast<std::size_t>(spec.rhs_size() + (spec.rhs_shifted() ? 1 : 0));
}

// sup_x |F_a - F_b| scaled by n_a n_b, over sorted inputs. Ties are
// stepped over together so only ECDF jump points are compared.
std::uint64_t ks_scaled(std::span<const double> a, std::span<const double> b) {
  const std::uint64_t na = a.size();
  const std::uint64_t nb = b.size();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t best = 0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    const std::uint64_t fa = i * nb;
    const std::uint64_t fb = j * na;
    best = std::max(best, fa > fb ? fa - fb : fb - fa);
  }
  return best;
}

double asymptotic_p(double statistic, std::size_t na, std::size_t nb) {
  const double ne = static_cast<double>(na) * static_cast<double>(nb) /
                    static_cast<double>(na + nb);
  return kolmogorov_survival(std::sqrt(ne) * statistic);
}

// log C(n, k)
double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

SidesSample sample_sides(const ParentModel& model, const ShiftEquationSpec& spec,
                         std::size_t count, std::uint64_t seed, unsigned threads) {
  if (count == 0) throw std::invalid_argument("sample_sides: count must be >= 1");
  SidesSample out;
  out.lhs.resize(count);
  out.rhs.resize(count);

  const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
  const std::size_t jobs = 2 * chunks;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> block;
    for (std::size_t job = next++; job < jobs; job = next++) {
      const bool left = job < chunks;
      const std::size_t chunk = left ? job : job - chunks;
      Rng rng(seed, {left ? kLhsStream : kRhsStream, chunk});
      auto& dest = left ? out.lhs : out.rhs;
      block.resize(left ? lhs_block_size(spec) : rhs_block_size(spec));
      const std::size_t end = std::min(count, (chunk + 1) * kSampleChunk);
      for (std::size_t i = chunk * kSampleChunk; i < end; ++i) {
        for (auto& v : block) v = model.sample(rng);
        dest[i] = left ? lhs_statistic(block, spec) : rhs_statistic(block, spec);
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return out;
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  double p;
  if (lambda < 1.18) {
    // Jacobi-transformed series, fast for small lambda.
    const double pi2_8 = std::numbers::pi * std::numbers::pi / 8.0;
    double sum = 0.0;
    for (int j = 1; j <= 12; ++j) {
      const double odd = 2.0 * j - 1.0;
      sum += std::exp(-odd * odd * pi2_8 / (lambda * lambda));
    }
    p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
  } else {
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      sum += (j % 2 == 1) ? term : -term;
      if (term < 1e-300) break;
    }
    p = 2.0 * sum;
  }
  return std::clamp(p, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: both samples must be non-empty");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double scale = static_cast<double>(sa.size()) * static_cast<double>(sb.size());
  KsResult out;
  out.statistic = static_cast<double>(ks_scaled(sa, sb)) / scale;
  out.p_value = asymptotic_p(out.statistic, sa.size(), sb.size());
  return out;
}

TestReport equation_test(const ParentModel& model, const ShiftEquationSpec& spec,
                         std::size_t count, std::uint64_t seed, double alpha,
                         unsigned threads) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const SidesSample sides = sample_sides(model, spec, count, seed, threads);
  const KsResult ks = ks_two_sample(sides.lhs, sides.rhs);
  TestReport report;
  report.statistic = ks.statistic;
  report.p_value = ks.p_value;
  report.n_lhs = sides.lhs.size();
  report.n_rhs = sides.rhs.size();
  report.seed = seed;
  report.spec = spec;
  report.alpha = alpha;
  report.verdict = ks.p_value < alpha ? Verdict::rejected : Verdict::consistent;
  report.method = "asymptotic";
  return report;
}

TestReport gof_exponentiality(std::span<const double> data,
                              const ShiftEquationSpec& spec,
                              std::size_t permutations, std::uint64_t seed,
                              double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (permutations == 0) throw std::invalid_argument("permutations must be >= 1");
  const auto minimum = static_cast<std::size_t>(2 * (spec.n() + 1));
  if (data.size() < minimum) {
    throw InsufficientDataError("gof needs at least " + std::to_string(minimum) +
                                " observations, got " + std::to_string(data.size()));
  }
  for (double x : data) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("gof data must be positive and finite");
    }
  }

  std::vector<double> pool(data.begin(), data.end());
  {
    Rng rng(seed, {kShuffleStream});
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      std::swap(pool[i], pool[rng.below(i + 1)]);
    }
  }
  const std::size_t lsize = lhs_block_size(spec);
  const std::size_t rsize = rhs_block_size(spec);
  const std::size_t blocks = pool.size() / (lsize + rsize);
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::span<double> rest(pool);
  for (std::size_t b = 0; b < blocks; ++b) {
    lhs.push_back(lhs_statistic(rest.first(lsize), spec));
    rest = rest.subspan(lsize);
    rhs.push_back(rhs_statistic(rest.first(rsize), spec));
    rest = rest.subspan(rsize);
  }

  // Pooled statistics in sorted order, each tagged with its side.
  std::vector<std::pair<double, bool>> tagged;
  tagged.reserve(2 * blocks);
  for (double v : lhs) tagged.emplace_back(v, true);
  for (double v : rhs) tagged.emplace_back(v, false);
  std::sort(tagged.begin(), tagged.end());
  std::vector<double> values;
  std::vector<char> is_lhs;
  for (const auto& [v, left] : tagged) {
    values.push_back(v);
    is_lhs.push_back(left ? 1 : 0);
  }

  const std::uint64_t na = lhs.size();
  const std::uint64_t nb = rhs.size();
  auto scaled_statistic = [&](const std::vector<char>& labels) {
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    std::uint64_t best = 0;
    for (std::size_t p = 0; p < values.size(); ++p) {
      (labels[p] ? i : j) += 1;
      if (p + 1 < values.size() && values[p + 1] == values[p]) continue;
      const std::uint64_t fa = i * nb;
      const std::uint64_t fb = j * na;
      best = std::max(best, fa > fb ? fa - fb : fb - fa);
    }
    return best;
  };

  const std::uint64_t observed = scaled_statistic(is_lhs);
  std::size_t at_least = 0;
  Rng rng(seed, {kPermutationStream});
  std::vector<char> labels = is_lhs;
  for (std::size_t p = 0; p < permutations; ++p) {
    for (std::size_t i = labels.size() - 1; i > 0; --i) {
      std::swap(labels[i], labels[rng.below(i + 1)]);
    }
    if (scaled_statistic(labels) >= observed) ++at_least;
  }

  TestReport report;
  report.statistic = static_cast<double>(observed) /
                     (static_cast<double>(na) * static_cast<double>(nb));
  report.p_value = static_cast<double>(at_least + 1) /
                   static_cast<double>(permutations + 1);
  report.n_lhs = lhs.size();
  report.n_rhs = rhs.size();
  report.seed = seed;
  report.spec = spec;
  report.alpha = alpha;
  report.verdict = report.p_value < alpha ? Verdict::rejected : Verdict::consistent;
  report.method = "permutation";
  report.low_power = 1.0 / static_cast<double>(permutations + 1) >= alpha ||
                     log_binomial(na + nb, na) <= -std::log(alpha);
  return report;
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::rejected ? "rejected" : "consistent";
}

nlohmann::ordered_json to_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["n_lhs"] = r.n_lhs;
  j["n_rhs"] = r.n_rhs;
  j["seed"] = r.seed;
  j["spec"] = {{"n", r.spec.n()},
               {"k", r.spec.k()},
               {"variant", std::string(variant_name(r.spec.variant()))}};
  j["alpha"] = r.alpha;
  j["verdict"] = std::string(verdict_name(r.verdict));
  j["method"] = r.method;
  j["low_power"] = r.low_power;
  return j;
}

std::vector<double> read_data(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_double(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("data line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return out;
}

}  // namespace oschar
