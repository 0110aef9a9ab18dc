// grank: pagerank scores, spectral verification, and damping-factor sweeps
// over column-stochastic transition matrices built from edge lists.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grank/grank.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonOptions {
  double alpha = 0.85;
  double tol = 1e-10;
  std::size_t max_iters = 10000;
  std::string input;
  std::string output;
  std::string format = "csv";
  std::string dangling = "uniform";
  std::string v_file;
  std::uint64_t seed = 0;
  std::size_t n = 10;
  std::size_t trials = 10;
  double alpha_min = 0.1;
  double alpha_max = 0.9;
  std::size_t steps = 0;
};

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw grank::input_error("alpha must lie strictly inside (0,1), got " +
                             grank::format_double(alpha));
}

grank::PatchPolicy parse_policy(const std::string& name) {
  if (name == "uniform") return grank::PatchPolicy::Uniform;
  if (name == "personalization") return grank::PatchPolicy::Personalization;
  throw grank::input_error("unknown dangling policy '" + name + "' (want uniform|personalization)");
}

grank::DirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw grank::input_error("cannot open input file '" + path + "'");
  return grank::parse_edge_list(in);
}

grank::PersonalizationVector load_personalization(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw grank::input_error("cannot open personalization file '" + path + "'");
  grank::PersonalizationVector v = grank::read_personalization(in);
  if (v.size() != n)
    throw grank::input_error("personalization file has " + std::to_string(v.size()) +
                             " entries, graph has " + std::to_string(n) + " nodes");
  return v;
}

// Writes through a file when --output is set, stdout otherwise.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw grank::input_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_rank(const CommonOptions& opt) {
  check_alpha(opt.alpha);
  const grank::OutputFormat format = grank::parse_output_format(opt.format);
  grank::DirectedGraph g = load_graph(opt.input);
  grank::SparseTransition p = grank::build_transition(g, parse_policy(opt.dangling));
  grank::PersonalizationVector v = opt.v_file.empty()
                                       ? grank::PersonalizationVector::uniform(p.n())
                                       : load_personalization(opt.v_file, p.n());
  grank::GoogleOperator op(p, opt.alpha, std::move(v));

  grank::SolverConfig cfg;
  cfg.tol = opt.tol;
  cfg.max_iters = opt.max_iters;
  cfg.record_trace = false;
  grank::RankResult result = grank::power_method(op, cfg);

  OutputSink sink(opt.output);
  grank::write_rank_result(result, format, sink.stream());
  if (!result.converged) {
    std::cerr << "grank rank: not converged after " << result.iterations
              << " iterations (residual " << grank::format_double(result.final_residual) << ")\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

void print_trial(std::ostream& out, std::size_t trial, std::size_t n, double alpha,
                 const grank::TheoremReport& rep) {
  out << "trial " << trial << ": n=" << n << " alpha=" << grank::format_double(alpha)
      << " block_defect=" << grank::format_double(rep.block_defect) << " structure_defect="
      << grank::format_double(std::max({rep.p_top_left_defect, rep.p_top_right_norm,
                                        rep.a_top_left_defect, rep.a_top_right_norm}))
      << " rank1_defect=" << grank::format_double(rep.rank1_defect);
  if (rep.eig_multiset_defect)
    out << " eig_defect=" << grank::format_double(*rep.eig_multiset_defect);
  if (rep.a_second_modulus)
    out << " lambda2_modulus=" << grank::format_double(*rep.a_second_modulus);
  out << (rep.passed ? " pass" : " FAIL") << "\n";
}

int cmd_verify(const CommonOptions& opt, bool have_input) {
  check_alpha(opt.alpha);
  grank::VerifyTolerances tols;
  tols.structure = opt.tol;
  tols.block = opt.tol;

  OutputSink sink(opt.output);
  std::ostream& out = sink.stream();
  std::size_t failed = 0;
  double worst_eig = 0.0;
  std::size_t trials = opt.trials;

  if (have_input) {
    // Fixture mode: verify the supplied graph once.
    grank::DirectedGraph g = load_graph(opt.input);
    grank::SparseTransition p = grank::build_transition(g, parse_policy(opt.dangling));
    grank::PersonalizationVector v = opt.v_file.empty()
                                         ? grank::PersonalizationVector::uniform(p.n())
                                         : load_personalization(opt.v_file, p.n());
    grank::TheoremReport rep = grank::verify_theorem(p, opt.alpha, v, tols);
    print_trial(out, 0, p.n(), opt.alpha, rep);
    if (rep.eig_multiset_defect) worst_eig = *rep.eig_multiset_defect;
    failed = rep.passed ? 0 : 1;
    trials = 1;
  } else {
    if (trials < 1) throw grank::input_error("--trials must be >= 1");
    if (opt.n > grank::kDefaultDenseCap)
      throw grank::cap_error("verify: n = " + std::to_string(opt.n) + " exceeds dense cap " +
                             std::to_string(grank::kDefaultDenseCap));
    for (std::size_t t = 0; t < trials; ++t) {
      // Per-trial stream: personalization first, then a derived instance seed.
      grank::SplitMix64 rng(opt.seed + t);
      grank::PersonalizationVector v = grank::random_personalization(opt.n, rng);
      grank::RandomInstanceSpec spec{opt.n, rng.next(), grank::InstanceMode::Dense, 3};
      grank::SparseTransition p = grank::random_stochastic(spec);
      grank::TheoremReport rep = grank::verify_theorem(p, opt.alpha, v, tols);
      print_trial(out, t, opt.n, opt.alpha, rep);
      if (rep.eig_multiset_defect) worst_eig = std::max(worst_eig, *rep.eig_multiset_defect);
      if (!rep.passed) ++failed;
    }
  }
  out << "summary: " << (trials - failed) << "/" << trials
      << " passed, worst eig defect " << grank::format_double(worst_eig) << "\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const CommonOptions& opt, bool have_input) {
  if (opt.steps < 1) throw grank::input_error("--steps must be >= 1 (empty alpha grid)");
  check_alpha(opt.alpha_min);
  check_alpha(opt.alpha_max);
  if (opt.alpha_min > opt.alpha_max)
    throw grank::input_error("--alpha-min must not exceed --alpha-max");

  grank::SparseTransition p = [&] {
    if (have_input) return grank::build_transition(load_graph(opt.input),
                                                   parse_policy(opt.dangling));
    grank::RandomInstanceSpec spec{opt.n, opt.seed, grank::InstanceMode::Dense, 3};
    return grank::random_stochastic(spec);
  }();
  grank::PersonalizationVector v = opt.v_file.empty()
                                       ? grank::PersonalizationVector::uniform(p.n())
                                       : load_personalization(opt.v_file, p.n());

  // alpha |lambda_2(P)| is the predicted asymptotic contraction factor.
  std::optional<double> lambda2;
  if (p.n() >= 2 && p.n() <= grank::kDefaultDenseCap) {
    grank::ComplexSpectrum eig = grank::eigenvalues_dense(
        p.patch_policy() == grank::PatchPolicy::Personalization ? p.to_dense(v.entries())
                                                                : p.to_dense());
    lambda2 = grank::second_largest_modulus(eig);
  }

  OutputSink sink(opt.output);
  std::ostream& out = sink.stream();
  out << "alpha,iterations,estimated_rate,predicted_rate\n";
  for (std::size_t i = 0; i < opt.steps; ++i) {
    const double alpha = opt.steps == 1
                             ? opt.alpha_min
                             : opt.alpha_min + (opt.alpha_max - opt.alpha_min) *
                                   static_cast<double>(i) / static_cast<double>(opt.steps - 1);
    grank::GoogleOperator op(p, alpha, v);
    grank::SolverConfig cfg;
    cfg.tol = opt.tol;
    cfg.max_iters = opt.max_iters;
    // Point mass start: the uniform vector is stationary for too many
    // structured graphs (any doubly stochastic P) to measure a rate from.
    grank::RankResult r = grank::power_method(op, grank::RankVector::point_mass(p.n(), 0), cfg);
    out << grank::format_double(alpha) << "," << r.iterations << ",";
    if (r.estimated_rate) out << grank::format_double(*r.estimated_rate);
    out << ",";
    if (lambda2) out << grank::format_double(alpha * *lambda2);
    out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "grank: pagerank over a damped column-stochastic operator, with a dense\n"
      "spectral verifier for its eigenvalue structure"};
  app.require_subcommand(1);
  CommonOptions opt;

  CLI::App* rank = app.add_subcommand(
      "rank", "Compute pagerank scores for an edge-list graph (exit 0 converged, 2 not)");
  rank->add_option("--alpha", opt.alpha, "Damping factor in (0,1); 0.85 is convention, not law")
      ->capture_default_str();
  rank->add_option("--tol", opt.tol, "1-norm successive-difference stopping threshold")
      ->capture_default_str();
  rank->add_option("--max-iters", opt.max_iters, "Iteration budget")->capture_default_str();
  rank->add_option("--input", opt.input, "Edge-list file: 'source target [weight]' per line")
      ->required();
  rank->add_option("--output", opt.output, "Output path (default stdout)");
  rank->add_option("--format", opt.format, "json|csv|tsv")->capture_default_str();
  rank->add_option("--dangling", opt.dangling,
                   "Patch for zero out-degree columns: uniform|personalization")
      ->capture_default_str();
  rank->add_option("--v-file", opt.v_file,
                   "Personalization vector, one float per line summing to 1");

  CLI::App* verify = app.add_subcommand(
      "verify",
      "Check the damped operator's spectral structure on random or given instances\n"
      "(exit 0 all pass, 3 any fail)");
  verify->add_option("--n", opt.n, "Instance dimension for random trials")->capture_default_str();
  verify->add_option("--trials", opt.trials, "Number of random instances")->capture_default_str();
  verify->add_option("--alpha", opt.alpha, "Damping factor in (0,1)")->capture_default_str();
  verify->add_option("--seed", opt.seed, "Base seed; trial t uses seed+t")->capture_default_str();
  verify->add_option("--tol", opt.tol, "Structure/block tolerance (eig matching fixed at 1e-8)")
      ->capture_default_str();
  verify->add_option("--input", opt.input, "Verify this edge-list graph instead of random ones");
  verify->add_option("--output", opt.output, "Output path (default stdout)");
  verify->add_option("--dangling", opt.dangling, "uniform|personalization")->capture_default_str();
  verify->add_option("--v-file", opt.v_file, "Personalization vector file");

  CLI::App* sweep = app.add_subcommand(
      "sweep",
      "Run the solver over an alpha grid; emits CSV alpha,iterations,estimated_rate,\n"
      "predicted_rate (predicted = alpha*|lambda2(P)|, blank above the dense cap)");
  sweep->add_option("--alpha-min", opt.alpha_min, "Grid start, in (0,1)")->capture_default_str();
  sweep->add_option("--alpha-max", opt.alpha_max, "Grid end, in (0,1)")->capture_default_str();
  sweep->add_option("--steps", opt.steps, "Number of grid points")->required();
  sweep->add_option("--tol", opt.tol, "Solver stopping threshold")->capture_default_str();
  sweep->add_option("--max-iters", opt.max_iters, "Iteration budget")->capture_default_str();
  sweep->add_option("--input", opt.input, "Edge-list file; omit to use a seeded random instance");
  sweep->add_option("--n", opt.n, "Random instance dimension (no --input)")->capture_default_str();
  sweep->add_option("--seed", opt.seed, "Random instance seed")->capture_default_str();
  sweep->add_option("--output", opt.output, "Output path (default stdout)");
  sweep->add_option("--dangling", opt.dangling, "uniform|personalization")->capture_default_str();
  sweep->add_option("--v-file", opt.v_file, "Personalization vector file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (rank->parsed()) return cmd_rank(opt);
    if (verify->parsed()) return cmd_verify(opt, verify->count("--input") > 0);
    if (sweep->parsed()) return cmd_sweep(opt, sweep->count("--input") > 0);
  } catch (const grank::error& e) {
    std::cerr << "grank: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "grank: unexpected error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
