#include "mutkit/cli.hpp"

#include "mutkit/error.hpp"
#include "mutkit/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace mutkit {

namespace {

int exit_code_for(const Error& e) {
  const std::string& c = e.code();
  if (c == errc::irreducibility_violation || c == errc::divergence ||
      c == errc::unsupported)
    return 2;
  return 1;
}

void emit(const nlohmann::ordered_json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(errc::io, "cannot write to '" + out_path + "'");
  out << text;
}

void warn_all(const ParsedLaw& parsed) {
  for (const std::string& w : parsed.warnings)
    std::cerr << "warning: " << w << "\n";
}

struct CommonArgs {
  std::string law_path;
  int k = 2;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--law", args.law_path, "law JSON file")->required();
  cmd->add_option("--k", args.k, "tuple length")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--out", args.out_path, "write the JSON report here (default stdout)");
}

int cmd_analyze(const CommonArgs& args, bool exact) {
  const ParsedLaw parsed = parse_law_file(args.law_path);
  warn_all(parsed);
  const AnalysisResult a = run_analysis(parsed.law, args.k);
  emit(analysis_report(a, exact), args.out_path);
  return a.conditions_pass() ? 0 : 2;
}

int cmd_simulate(const CommonArgs& args, std::uint64_t steps,
                 std::uint64_t trials, std::uint64_t seed, int threads) {
  const ParsedLaw parsed = parse_law_file(args.law_path);
  warn_all(parsed);
  const MutationLaw& law = parsed.law;
  if (!law.start)
    throw Error(errc::validation, "simulation needs a \"start\" word in the law file");

  // centering needs the limiting frequencies; skip quietly when unavailable
  std::optional<CenterSpec> center;
  try {
    const RatMatrix m = build_substitution_matrix(law, args.k);
    if (is_irreducible(m)) {
      const RatVector r = exact_leading_vector(m, law.tau + Rat(args.k) - 1);
      center = CenterSpec{to_double(r), rat_to_double(law.tau)};
    }
  } catch (const Error&) {
    center.reset();
  }

  const EnsembleStats stats = run_ensemble(law, *law.start, args.k, steps,
                                           trials, seed, threads, center);
  emit(ensemble_report(law, args.k, seed, stats), args.out_path);
  return 0;
}

int cmd_verify(const CommonArgs& args, std::uint64_t steps,
               std::uint64_t trials, std::uint64_t seed, int threads,
               double z_threshold, double fr_tol) {
  const ParsedLaw parsed = parse_law_file(args.law_path);
  warn_all(parsed);
  const MutationLaw& law = parsed.law;
  if (!law.start)
    throw Error(errc::validation, "verification needs a \"start\" word in the law file");

  const AnalysisResult a = run_analysis(law, args.k);
  nlohmann::ordered_json doc;
  doc["analysis"] = analysis_report(a, false);
  if (!a.conditions_pass() || !a.covariance) {
    doc["simulation"] = nullptr;
    doc["comparison"] = nullptr;
    emit(doc, args.out_path);
    return 2;
  }

  const CenterSpec center{a.spectral->r, rat_to_double(law.tau)};
  const EnsembleStats stats = run_ensemble(law, *law.start, args.k, steps,
                                           trials, seed, threads, center);
  doc["simulation"] = ensemble_report(law, args.k, seed, stats);

  const ComparisonResult cmp =
      compare_covariance(stats.emp_cov, a.covariance->sigma, trials, z_threshold);
  const double fr_dev = (stats.mean_fr - a.spectral->r).cwiseAbs().maxCoeff();
  const bool fr_pass = fr_dev <= fr_tol;
  doc["comparison"] = comparison_report(cmp, z_threshold, fr_dev, fr_tol, fr_pass);
  emit(doc, args.out_path);
  return (cmp.pass && fr_pass) ? 0 : 3;
}

int cmd_increments(const CommonArgs& args) {
  ParseOptions opts;
  opts.require_growth = false;  // increment tables are meaningful at tau <= 1
  const ParsedLaw parsed = parse_law_file(args.law_path, opts);
  warn_all(parsed);
  const IncrementTable table = enumerate_increments(parsed.law, args.k);
  emit(increment_report(table, parsed.law), args.out_path);
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact k-tuple statistics of random mutation systems"};
  app.require_subcommand(1);

  CommonArgs analyze_args, simulate_args, verify_args, increment_args;
  bool exact = false;
  std::uint64_t steps = 1000, trials = 100, seed = 1;
  int threads = 1;
  std::uint64_t v_steps = 1000, v_trials = 100, v_seed = 1;
  int v_threads = 1;
  double z_threshold = 4.0, fr_tol = 0.01;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "exact frequencies, increment covariance and CLT covariance");
  add_common(analyze, analyze_args);
  analyze->add_flag("--exact", exact, "render exact quantities as p/q strings");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo ensemble statistics");
  add_common(simulate, simulate_args);
  simulate->add_option("--steps", steps, "mutation steps per trial")->required();
  simulate->add_option("--trials", trials, "number of trials")->required();
  simulate->add_option("--seed", seed, "master seed")->required();
  simulate->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand(
      "verify", "analyze, simulate, and compare the two covariances");
  add_common(verify, verify_args);
  verify->add_option("--steps", v_steps, "mutation steps per trial")->required();
  verify->add_option("--trials", v_trials, "number of trials")->required();
  verify->add_option("--seed", v_seed, "master seed")->required();
  verify->add_option("--threads", v_threads, "worker threads")
      ->check(CLI::PositiveNumber);
  verify->add_option("--z-threshold", z_threshold,
                     "max |z| accepted for covariance entries");
  verify->add_option("--fr-tol", fr_tol,
                     "max |mean_fr - r| accepted elementwise");

  CLI::App* increments = app.add_subcommand(
      "increments", "enumerate one-step neighborhood increments");
  add_common(increments, increment_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_args, exact);
    if (simulate->parsed())
      return cmd_simulate(simulate_args, steps, trials, seed, threads);
    if (verify->parsed())
      return cmd_verify(verify_args, v_steps, v_trials, v_seed, v_threads,
                        z_threshold, fr_tol);
    if (increments->parsed()) return cmd_increments(increment_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace mutkit
