#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "whh/quadrature.hpp"

// The batch-job layer behind the command-line tool. A JobSpec captures one
// invocation (parseable from flags or a JSON job file); run_job executes it
// and writes its tables as CSV or JSON.
//
// Exit codes:
//   0  success
//   2  validation failure (named field in the diagnostic)
//   3  quadrature budget exhausted
//   4  a reference-table row missed its tolerance
//   5  a Hermite-Hadamard chain violated beyond numerical slack

namespace whh {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutDirEnvVar = "WHH_OUT_DIR";

struct JobSpec {
  std::string command;               // mean | measure | hh | tables | audit
  std::vector<double> weights;
  std::vector<std::vector<double>> nodes;  // one entry per node
  std::vector<std::string> kinds;          // mean kinds to evaluate
  std::string measure = "mu";              // nu | mu | uniform
  std::string func = "exp";                // hh test function name
  bool tilde = false;
  bool normcheck = false;
  std::vector<std::vector<double>> density_points;
  int sample_count = 0;
  int trials = 0;
  int dim = 0;  // only for the uniform measure, which carries no weights
  QuadratureConfig cfg;
  std::string format = "csv";  // csv | json
  std::string out_path;        // file (dir for `tables`); empty = stdout
  std::uint64_t seed = 0;
};

// Fraction-aware numeric parsing: "1/3" divides exact integers, plain
// decimals pass through. Throws std::invalid_argument naming the text.
double parse_number(const std::string& text);
std::vector<double> parse_number_list(const std::string& text);
// Semicolon-separated vectors of comma-separated numbers.
std::vector<std::vector<double>> parse_vector_list(const std::string& text);

// Builds a JobSpec from a JSON job file (same field names as the flags).
JobSpec job_from_json_file(const std::string& path);

// Executes the job; tables and diagnostics go to `out` / `err` unless the
// job routes them to files. Returns the exit code.
int run_job(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace whh
