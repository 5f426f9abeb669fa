#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "whh/jobs.hpp"
#include "whh/tables.hpp"

using namespace whh;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Runs the installed binary, captures stdout bytes and the exit code.
std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string out = std::filesystem::temp_directory_path() /
                          ("whh_cli_out_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(WHH_CLI_PATH) + " " + args + " > " + out +
                          " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  std::string text = slurp(out);
  std::remove(out.c_str());
  return {WEXITSTATUS(rc), text};
}

}  // namespace

TEST_CASE("fraction-aware number parsing") {
  CHECK(parse_number("1/3") == 1.0 / 3.0);
  CHECK(parse_number("0.25") == 0.25);
  CHECK(parse_number("-3/4") == -0.75);
  CHECK(parse_number("2") == 2.0);
  CHECK_THROWS_AS(parse_number("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number("1/ 2x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_number(""), std::invalid_argument);

  auto xs = parse_number_list("1/3,1/6,0.5");
  REQUIRE(xs.size() == 3);
  CHECK(xs[0] == 1.0 / 3.0);
  CHECK(xs[1] == 1.0 / 6.0);
  CHECK(xs[2] == 0.5);

  auto vs = parse_vector_list("0,1;1,0;0.5,0.5");
  REQUIRE(vs.size() == 3);
  CHECK(vs[2][1] == 0.5);
}

TEST_CASE("mean job produces one row per kind") {
  JobSpec job;
  job.command = "mean";
  job.weights = {1.0 / 3.0, 1.0 / 6.0};
  job.nodes = {{0.5}, {1.0}, {2.0}};
  job.kinds = {"logcal", "logbb"};
  std::ostringstream out, err;
  CHECK(run_job(job, out, err) == 0);
  const std::string text = out.str();
  CHECK(text.find("logcal,1.1939") != std::string::npos);
  CHECK(text.find("logbb,1.1961") != std::string::npos);
}

TEST_CASE("validation failures name the offending field and exit 2") {
  std::ostringstream out, err;
  JobSpec job;
  job.command = "mean";
  job.weights = {0.5, 0.5};  // boundary weights
  job.nodes = {{1.0}, {2.0}, {3.0}};
  CHECK(run_job(job, out, err) == 2);
  CHECK(err.str().find("int(E_n)") != std::string::npos);

  err.str("");
  job.weights = {0.3};
  job.nodes = {{1.0}, {2.0}};
  job.kinds = {"bogus"};
  CHECK(run_job(job, out, err) == 2);
  CHECK(err.str().find("kinds") != std::string::npos);

  err.str("");
  JobSpec bad;
  bad.command = "fly";
  CHECK(run_job(bad, out, err) == 2);
  CHECK(err.str().find("command") != std::string::npos);

  err.str("");
  JobSpec badfmt;
  badfmt.command = "mean";
  badfmt.format = "xml";
  CHECK(run_job(badfmt, out, err) == 2);
  CHECK(err.str().find("format") != std::string::npos);

  err.str("");
  JobSpec meas;
  meas.command = "measure";
  meas.weights = {0.3};
  CHECK(run_job(meas, out, err) == 2);  // no subaction chosen
}

TEST_CASE("budget exhaustion exits 3 with a diagnostic") {
  JobSpec job;
  job.command = "mean";
  job.weights = {0.3};
  job.nodes = {{1.0}, {4.0}};
  job.kinds = {"logcal"};
  job.cfg.method = QuadMethod::MonteCarlo;
  job.cfg.abs_tol = 1e-10;
  job.cfg.rel_tol = 1e-10;
  job.cfg.max_evals = 4096;
  std::ostringstream out, err;
  CHECK(run_job(job, out, err) == 3);
  CHECK(err.str().find("budget exhausted") != std::string::npos);
}

TEST_CASE("hh job emits a chain report") {
  JobSpec job;
  job.command = "hh";
  job.measure = "mu";
  job.func = "exp";
  job.weights = {0.3};
  job.nodes = {{0.0}, {1.0}};
  std::ostringstream out, err;
  CHECK(run_job(job, out, err) == 0);
  CHECK(out.str().find("yes") != std::string::npos);
}

TEST_CASE("audit job summarizes and succeeds") {
  JobSpec job;
  job.command = "audit";
  job.trials = 10;
  job.seed = 42;
  std::ostringstream out, err;
  CHECK(run_job(job, out, err) == 0);
  CHECK(out.str().find("10,10,0,") != std::string::npos);
}

TEST_CASE("tables job writes four files and respects the env default dir") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("whh_tables_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv(kOutDirEnvVar, dir.c_str(), 1);
  JobSpec job;
  job.command = "tables";
  std::ostringstream out, err;
  CHECK(run_job(job, out, err) == 0);
  ::unsetenv(kOutDirEnvVar);
  for (const char* stem :
       {"example45_multivariate", "example45_bivariate", "identric_bivariate",
        "noncomparability"}) {
    CHECK(fs::exists(dir / (std::string(stem) + ".csv")));
  }
  // header + at least two rows in each value table
  const std::string multi = slurp((dir / "example45_multivariate.csv").string());
  CHECK(multi.find("paper_value") != std::string::npos);
  CHECK(multi.find("logcal") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("json output round-trips every numeric field") {
  JobSpec job;
  job.command = "mean";
  job.weights = {0.3, 0.25};
  job.nodes = {{1.3}, {1.5}, {1.9}};
  job.kinds = {"logcal", "identric"};
  job.format = "json";
  job.seed = 9;
  std::ostringstream out, err;
  REQUIRE(run_job(job, out, err) == 0);
  auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["meta"]["seed"] == 9);
  CHECK(doc["meta"]["command"] == "mean");
  REQUIRE(doc["rows"].size() == 2);
  const double v = doc["rows"][0]["value"].get<double>();

  // a second identical run reproduces the same doubles exactly
  std::ostringstream out2;
  REQUIRE(run_job(job, out2, err) == 0);
  auto doc2 = nlohmann::json::parse(out2.str());
  CHECK(doc2["rows"][0]["value"].get<double>() == v);
  CHECK(out2.str() == out.str());
}

TEST_CASE("job files mirror the flag interface") {
  namespace fs = std::filesystem;
  const fs::path path =
      fs::temp_directory_path() / ("whh_job_" + std::to_string(::getpid()) + ".json");
  {
    std::ofstream f(path);
    f << R"({"command":"mean","weights":"1/3,1/6","nodes":"0.5,1,2",)"
      << R"("kinds":["logcal"],"format":"csv"})";
  }
  JobSpec job = job_from_json_file(path.string());
  CHECK(job.command == "mean");
  REQUIRE(job.weights.size() == 2);
  CHECK(job.weights[0] == 1.0 / 3.0);
  REQUIRE(job.nodes.size() == 3);
  std::ostringstream out, err;
  CHECK(run_job(job, out, err) == 0);
  CHECK(out.str().find("logcal,1.1939") != std::string::npos);
  fs::remove(path.string());
}

TEST_CASE("binary runs are byte-identical for identical jobs and seeds") {
  auto [rc1, out1] =
      run_cli("measure --kind nu --weights 1/3,1/6 --sample 500 --seed 7");
  auto [rc2, out2] =
      run_cli("measure --kind nu --weights 1/3,1/6 --sample 500 --seed 7");
  auto [rc3, out3] =
      run_cli("measure --kind nu --weights 1/3,1/6 --sample 500 --seed 8");
  CHECK(rc1 == 0);
  CHECK(rc2 == 0);
  CHECK(rc3 == 0);
  CHECK(out1.size() > 5000);
  CHECK(out1 == out2);
  CHECK(out1 != out3);

  auto [rc4, out4] = run_cli("mean --weights 0.9 --nodes 2,3 --kinds logcal");
  auto [rc5, out5] = run_cli("mean --weights 0.9 --nodes 2,3 --kinds logcal");
  CHECK(rc4 == 0);
  CHECK(out4 == out5);
}

TEST_CASE("binary maps bad flags to exit 2") {
  auto [rc, out] = run_cli("mean --weights 0.5,0.5 --nodes 1,2,3");
  CHECK(rc == 2);
  auto [rc2, out2] = run_cli("mean --weights nope --nodes 1,2");
  CHECK(rc2 == 2);
  auto [rc3, out3] = run_cli("bogus-subcommand");
  CHECK(rc3 != 0);
}

TEST_CASE("the table gate rejects out-of-tolerance rows and sign misses") {
  TableSet set;
  set.values.push_back({"t", "case", "logcal", 1.0, 1.0 + 2e-4, 1e-10});
  set.signs.push_back({"p", "case", 2.0, 1.0, 1e-9, +1, +1});
  CHECK(set.all_ok(kTableTolerance));

  set.values.push_back({"t", "case", "logbb", 1.0, 1.0 + 6e-4, 1e-10});
  CHECK(!set.all_ok(kTableTolerance));
  set.values.pop_back();

  set.signs.push_back({"p", "case2", 1.0, 2.0, 1e-9, +1, -1});
  CHECK(!set.all_ok(kTableTolerance));
}
