#include "cli.hpp"

#include "oschar/characterization.hpp"
#include "oschar/densities.hpp"
#include "oschar/format.hpp"
#include "oschar/identity_suite.hpp"
#include "oschar/jet.hpp"
#include "oschar/models.hpp"
#include "oschar/montecarlo.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace oschar::cli {

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string model;
  long n = 3;
  long k = 2;
  std::string variant = "two_sided";
  std::optional<long> r;
  std::optional<long> rmax;
  std::optional<std::string> lambda;
  // verify
  long nmax = 8;
  std::optional<long> mmax;
  std::optional<long> imax;
  std::optional<long> dmax;
  bool tamper = false;
  // density
  std::string grid;
  double quad_tol = 1e-10;
  double threshold = 1e-8;
  // mc / gof
  std::size_t count = 200000;
  std::optional<std::uint64_t> seed;
  double alpha = 0.01;
  std::size_t permutations = 999;
  std::string data;
  // output
  std::string out_path;
  std::string format;
  unsigned threads = 1;
};

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("OSCHAR_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("OSCHAR_SEED is not an unsigned integer: '" +
                      std::string(env) + "'");
  }
  return 1;
}

ShiftEquationSpec make_spec(const RunConfig& cfg) {
  const ShiftVariant v = parse_variant(cfg.variant);
  if (v == ShiftVariant::one_sided_max) return ShiftEquationSpec::one_sided_max(cfg.n);
  return ShiftEquationSpec(cfg.n, cfg.k, v);
}

bool is_jet_model(const std::string& model) { return model.rfind("jet:", 0) == 0; }

Jet load_jet(const std::string& model) {
  const std::string path = model.substr(4);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open jet file '" + path + "'");
  return read_jet(in);
}

// Writes to --out when given, else to the command's stdout.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw ConfigError("--grid expects a:b:m");
  const double a = parse_double(parts[0]);
  const double b = parse_double(parts[1]);
  long m = 0;
  try {
    m = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("--grid: m must be an integer");
  }
  if (a < 0 || b < a || m < 1) throw ConfigError("--grid needs 0 <= a <= b and m >= 1");
  return linspace(a, b, static_cast<std::size_t>(m));
}

void write_report(std::ostream& os, const TestReport& report,
                  const std::string& format) {
  if (format == "csv") {
    os << "statistic,p_value,n_lhs,n_rhs,seed,n,k,variant,alpha,verdict,method,"
          "low_power\n"
       << format_double(report.statistic) << ',' << format_double(report.p_value)
       << ',' << report.n_lhs << ',' << report.n_rhs << ',' << report.seed << ','
       << report.spec.n() << ',' << report.spec.k() << ','
       << variant_name(report.spec.variant()) << ',' << format_double(report.alpha)
       << ',' << verdict_name(report.verdict) << ',' << report.method << ','
       << (report.low_power ? "true" : "false") << '\n';
  } else {
    os << to_json(report).dump(2) << '\n';
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SuiteBounds bounds;
  bounds.nmax = cfg.nmax;
  bounds.rmax = cfg.rmax.value_or(6);
  bounds.mmax = cfg.mmax.value_or(std::max<long>(bounds.rmax, 1));
  bounds.imax = cfg.imax.value_or(2 * bounds.rmax + 2);
  bounds.dmax = cfg.dmax.value_or(std::max<long>(bounds.rmax, 1));
  bounds.jmax = std::max<long>(bounds.rmax, 1);
  bounds.tamper = cfg.tamper;
  try {
    validate(bounds);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  Output output(cfg.out_path, out);
  auto& os = output.stream();

  if (!cfg.model.empty()) {
    if (!is_jet_model(cfg.model)) throw ConfigError("verify --model expects jet:PATH");
    const Jet f = load_jet(cfg.model);
    os << "n,k,r,residual_num,residual_den\n";
    bool all_zero = true;
    std::size_t rows = 0;
    for (long n = 2; n <= bounds.nmax; ++n) {
      for (long k = 1; k <= n - 1; ++k) {
        for (const auto& row : residual_table(f, ShiftEquationSpec(n, k), bounds.rmax)) {
          if (cfg.r && row.r != *cfg.r) continue;
          os << row.n << ',' << row.k << ',' << row.r << ','
             << row.residual.get_num().get_str() << ','
             << row.residual.get_den().get_str() << '\n';
          all_zero = all_zero && row.residual == 0;
          ++rows;
        }
      }
    }
    if (rows == 0) throw ConfigError("jet order too small for any residual");
    err << "rows=" << rows << (all_zero ? " all residuals zero\n" : " nonzero residuals found\n");
    return all_zero ? kOk : kDifference;
  }

  const SuiteResult result = run_identity_suite(bounds);
  os << "identity,params,residual_num,residual_den\n";
  for (const auto& f : result.failures) {
    os << f.identity << ',' << f.params << ',' << f.residual.get_num().get_str()
       << ',' << f.residual.get_den().get_str() << '\n';
  }
  err << "checks=" << result.checks << " failures=" << result.failures.size() << '\n';
  return result.ok() ? kOk : kDifference;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ExactScalar lambda;
  if (cfg.lambda) {
    lambda = parse_rational(*cfg.lambda);
  } else if (is_jet_model(cfg.model)) {
    lambda = load_jet(cfg.model)[0];
  } else if (!cfg.model.empty()) {
    const auto model = parse_model(cfg.model);
    const auto jet = model->exact_jet(0);
    if (!jet) throw ConfigError("model '" + cfg.model + "' has no exact jet");
    lambda = (*jet)[0];
  } else {
    throw ConfigError("solve needs --lambda or --model");
  }
  if (lambda <= 0) throw ConfigError("f(0) = lambda must be > 0");
  const ShiftEquationSpec spec(cfg.n, cfg.k);
  const long order = cfg.rmax.value_or(10);
  if (order < 0) throw ConfigError("--rmax must be >= 0");

  const Jet solved = characterize(lambda, spec, order);
  const Jet expected = exp_jet(lambda, static_cast<std::size_t>(order));
  if (!cfg.out_path.empty()) {
    Output file(cfg.out_path, out);
    write_jet(file.stream(), solved);
  }
  out << "m,solved,expected,match\n";
  for (std::size_t m = 0; m < solved.size(); ++m) {
    out << m << ',' << to_fraction_string(solved[m]) << ','
        << to_fraction_string(expected[m]) << ','
        << (solved[m] == expected[m] ? "true" : "false") << '\n';
  }
  const bool same = solved == expected;
  err << (same ? "solved jet equals the exponential jet\n"
               : "solved jet differs from the exponential jet\n");
  return same ? kOk : kDifference;
}

// --model, or exp:L from --lambda. Jet models carry no density or sampler.
ModelPtr density_model(const RunConfig& cfg, const char* command) {
  if (cfg.model.empty() && cfg.lambda) return parse_model("exp:" + *cfg.lambda);
  if (cfg.model.empty()) throw ConfigError(std::string(command) + " needs --model");
  if (is_jet_model(cfg.model)) {
    throw ConfigError(std::string(command) + " needs a model with a density and sampler");
  }
  return parse_model(cfg.model);
}

int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.quad_tol > 0)) throw ConfigError("--quad-tol must be > 0");
  if (!(cfg.threshold > 0)) throw ConfigError("--threshold must be > 0");
  const auto model = density_model(cfg, "density");
  const ShiftEquationSpec spec = make_spec(cfg);
  const std::vector<double> points =
      cfg.grid.empty() ? default_grid(*model, spec) : parse_grid(cfg.grid);
  const DensityGrid grid =
      compare_densities(*model, spec, points, cfg.quad_tol, cfg.threads);

  Output output(cfg.out_path, out);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["model"] = model->name();
    j["spec"] = {{"n", spec.n()}, {"k", spec.k()},
                 {"variant", std::string(variant_name(spec.variant()))}};
    j["quad_tol"] = grid.quad_tol;
    j["x"] = grid.points;
    j["lhs"] = grid.lhs_values;
    j["rhs"] = grid.rhs_values;
    j["max_abs_diff"] = grid.max_abs_diff;
    output.stream() << j.dump(2) << '\n';
  } else {
    write_density_csv(output.stream(), grid);
  }
  (output.to_file() ? out : err) << "max_abs_diff=" << format_double(grid.max_abs_diff)
                                 << '\n';
  return grid.max_abs_diff < cfg.threshold ? kOk : kDifference;
}

int cmd_mc(const RunConfig& cfg, std::ostream& out) {
  if (cfg.count < 1) throw ConfigError("--count must be >= 1");
  const auto model = density_model(cfg, "mc");
  const TestReport report = equation_test(*model, make_spec(cfg), cfg.count,
                                          resolve_seed(cfg), cfg.alpha, cfg.threads);
  Output output(cfg.out_path, out);
  write_report(output.stream(), report, cfg.format);
  return report.verdict == Verdict::consistent ? kOk : kDifference;
}

int cmd_gof(const RunConfig& cfg, std::ostream& out) {
  if (cfg.data.empty()) throw ConfigError("gof needs --data PATH (or - for stdin)");
  std::vector<double> data;
  if (cfg.data == "-") {
    data = read_data(std::cin);
  } else {
    std::ifstream in(cfg.data);
    if (!in) throw ConfigError("cannot open data file '" + cfg.data + "'");
    data = read_data(in);
  }
  const TestReport report = gof_exponentiality(data, make_spec(cfg), cfg.permutations,
                                               resolve_seed(cfg), cfg.alpha);
  Output output(cfg.out_path, out);
  write_report(output.stream(), report, cfg.format);
  return report.verdict == Verdict::consistent ? kOk : kDifference;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical checks of the exponential characterization "
               "by two-sided random shifts of order statistics",
               "oschar"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "sample size n");
    sub->add_option("--k", cfg.k, "shift index k, 1 <= k <= n-1");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", cfg.variant,
                    "two_sided, one_sided_max or one_sided_consecutive")
        ->check(CLI::IsMember({"two_sided", "one_sided_max", "one_sided_consecutive"}));
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads")
        ->check(CLI::PositiveNumber);
  };

  auto* verify = app.add_subcommand("verify", "exact identity and characterization checks");
  verify->add_option("--nmax", cfg.nmax, "largest n in the grid");
  verify->add_option("--rmax", cfg.rmax, "largest r");
  verify->add_option("--mmax", cfg.mmax, "largest m for check_lemma2, default rmax");
  verify->add_option("--imax", cfg.imax, "largest power i, default 2 rmax + 2");
  verify->add_option("--dmax", cfg.dmax, "largest d (binomial H-sum), default rmax");
  verify->add_option("--model", cfg.model, "jet:PATH to tabulate the residuals of a jet");
  verify->add_option("--r", cfg.r, "with --model, report this r only");
  verify->add_flag("--tamper", cfg.tamper, "flip one sign to self-test the harness")
      ->group("");
  verify->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "solve the induction for f^(m)(0)");
  add_spec(solve);
  solve->add_option("--lambda", cfg.lambda, "f(0), a positive rational");
  solve->add_option("--model", cfg.model, "exp:L, mixexp:..., uniform:0,B or jet:PATH");
  solve->add_option("--rmax", cfg.rmax, "highest derivative order R (default 10)");
  solve->add_option("--out", cfg.out_path, "write the solved jet here");

  auto* density = app.add_subcommand("density", "compare the densities of both sides");
  add_spec(density);
  add_variant(density);
  density->add_option("--model", cfg.model, "parent model");
  density->add_option("--lambda", cfg.lambda, "shorthand for --model exp:L");
  density->add_option("--grid", cfg.grid, "a:b:m equispaced points");
  density->add_option("--quad-tol", cfg.quad_tol, "relative quadrature tolerance");
  density->add_option("--threshold", cfg.threshold, "max_abs_diff pass threshold");
  add_threads(density);
  add_output(density);

  auto* mc = app.add_subcommand("mc", "Monte Carlo test of the shift equation");
  add_spec(mc);
  add_variant(mc);
  mc->add_option("--model", cfg.model, "parent model");
  mc->add_option("--lambda", cfg.lambda, "shorthand for --model exp:L");
  mc->add_option("--count", cfg.count, "samples per side");
  mc->add_option("--seed", cfg.seed, "RNG seed (fallback: OSCHAR_SEED)");
  mc->add_option("--alpha", cfg.alpha, "test level");
  add_threads(mc);

  auto* gof = app.add_subcommand("gof", "exponentiality test on observed data");
  add_spec(gof);
  add_variant(gof);
  gof->add_option("--data", cfg.data, "newline-delimited values, - for stdin")->required();
  gof->add_option("--permutations", cfg.permutations, "permutation count");
  gof->add_option("--seed", cfg.seed, "RNG seed (fallback: OSCHAR_SEED)");
  gof->add_option("--alpha", cfg.alpha, "test level");

  add_output(mc);
  add_output(gof);

  std::vector<std::string> argv_storage{"oschar"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (density->parsed()) {
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_density(cfg, out, err);
    }
    if (cfg.format.empty()) cfg.format = "json";
    if (mc->parsed()) return cmd_mc(cfg, out);
    if (gof->parsed()) return cmd_gof(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace oschar::cli
