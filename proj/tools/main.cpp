#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "whh/jobs.hpp"

namespace {

// Shared flag plumbing for every subcommand.
struct FlagState {
  std::string weights;
  std::string nodes;
  std::string kinds;
  std::string density;
  double tol = -1.0;
  double rel_tol = -1.0;
  long max_evals = -1;
  std::string method;
};

void add_common_flags(CLI::App* cmd, whh::JobSpec& job, FlagState& flags) {
  cmd->add_option("--tol", flags.tol,
                  "absolute (and relative) quadrature tolerance");
  cmd->add_option("--rel-tol", flags.rel_tol, "relative quadrature tolerance");
  cmd->add_option("--max-evals", flags.max_evals,
                  "integrand evaluation budget");
  cmd->add_option("--method", flags.method,
                  "quadrature method: auto, adaptive or mc");
  cmd->add_option("--seed", job.seed, "random seed");
  cmd->add_option("--format", job.format, "output format: csv or json");
  cmd->add_option("--out", job.out_path,
                  "output file (directory for `tables`)");
}

int apply_flags(whh::JobSpec& job, const FlagState& flags, std::ostream& err) {
  try {
    if (!flags.weights.empty()) job.weights = whh::parse_number_list(flags.weights);
    if (!flags.nodes.empty()) {
      // 0.5,1,2 is a list of scalar nodes; 0,1;1,0 a list of vector nodes
      if (flags.nodes.find(';') != std::string::npos) {
        job.nodes = whh::parse_vector_list(flags.nodes);
      } else {
        for (double v : whh::parse_number_list(flags.nodes)) {
          job.nodes.push_back({v});
        }
      }
    }
    if (!flags.density.empty()) {
      job.density_points = whh::parse_vector_list(flags.density);
    }
    if (!flags.kinds.empty()) {
      std::string item;
      std::istringstream stream(flags.kinds);
      while (std::getline(stream, item, ',')) job.kinds.push_back(item);
    }
    if (flags.tol > 0.0) {
      job.cfg.abs_tol = flags.tol;
      job.cfg.rel_tol = flags.tol;
    }
    if (flags.rel_tol > 0.0) job.cfg.rel_tol = flags.rel_tol;
    if (flags.max_evals > 0) job.cfg.max_evals = flags.max_evals;
    if (!flags.method.empty()) {
      if (flags.method == "auto") {
        job.cfg.method = whh::QuadMethod::Auto;
      } else if (flags.method == "adaptive") {
        job.cfg.method = whh::QuadMethod::NestedAdaptive;
      } else if (flags.method == "mc") {
        job.cfg.method = whh::QuadMethod::MonteCarlo;
      } else {
        err << "invalid input: method: expected auto, adaptive or mc\n";
        return 2;
      }
    }
    job.cfg.seed = job.seed;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "whh: weighted means and Hermite-Hadamard chains on the standard "
      "simplex"};
  app.require_subcommand(0, 1);

  std::string job_file;
  app.add_option("--job", job_file, "run a JSON job file");

  whh::JobSpec job;
  FlagState flags;

  CLI::App* mean = app.add_subcommand("mean", "evaluate weighted means");
  mean->add_option("--weights", flags.weights, "weights, e.g. 1/3,1/6")
      ->required();
  mean->add_option("--nodes", flags.nodes, "positive nodes, e.g. 0.5,1,2")
      ->required();
  mean->add_option("--kinds", flags.kinds,
                   "comma list of arithmetic, harmonic, geometric, logcal, "
                   "logbb, identric, bivl, bivi");
  add_common_flags(mean, job, flags);

  CLI::App* measure = app.add_subcommand(
      "measure", "densities, moments and samples of the simplex measures");
  measure->add_option("--kind", job.measure, "measure: nu, mu or uniform");
  measure->add_option("--weights", flags.weights, "weights, e.g. 1/4");
  measure->add_option("--dim", job.dim, "dimension for the uniform measure");
  measure->add_flag("--tilde", job.tilde, "list the tilde weights");
  measure->add_flag("--normcheck", job.normcheck,
                    "integrate the density and report |1 - value|");
  measure->add_option("--density", flags.density,
                      "evaluate the density, points like 0.2,0.3;0.1,0.4");
  measure->add_option("--sample", job.sample_count, "emit this many draws");
  add_common_flags(measure, job, flags);

  CLI::App* hh = app.add_subcommand(
      "hh", "one weighted Hermite-Hadamard chain report");
  hh->add_option("--measure", job.measure, "nu or mu")->required();
  hh->add_option("--f", job.func,
                 "test function: exp, square, neglog, recip, log, logsumexp, "
                 "quadform")
      ->required();
  hh->add_option("--weights", flags.weights, "weights")->required();
  hh->add_option("--nodes", flags.nodes,
                 "nodes; scalars like 0,1 or vectors like 0,1;1,0")
      ->required();
  add_common_flags(hh, job, flags);

  CLI::App* tables = app.add_subcommand(
      "tables", "recompute the built-in reference tables and emit CSV/JSON");
  add_common_flags(tables, job, flags);

  CLI::App* audit = app.add_subcommand(
      "audit", "randomized Hermite-Hadamard verification sweep");
  audit->add_option("--trials", job.trials, "number of random chains")
      ->required();
  add_common_flags(audit, job, flags);

  CLI11_PARSE(app, argc, argv);

  if (!job_file.empty()) {
    try {
      whh::JobSpec from_file = whh::job_from_json_file(job_file);
      return whh::run_job(from_file, std::cout, std::cerr);
    } catch (const std::exception& e) {
      std::cerr << "invalid input: " << e.what() << '\n';
      return 2;
    }
  }

  if (mean->parsed()) {
    job.command = "mean";
  } else if (measure->parsed()) {
    job.command = "measure";
  } else if (hh->parsed()) {
    job.command = "hh";
  } else if (tables->parsed()) {
    job.command = "tables";
  } else if (audit->parsed()) {
    job.command = "audit";
  } else {
    std::cerr << app.help();
    return 2;
  }

  if (int rc = apply_flags(job, flags, std::cerr); rc != 0) return rc;
  return whh::run_job(job, std::cout, std::cerr);
}
