#include "whh/jobs.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "whh/hh.hpp"
#include "whh/means.hpp"
#include "whh/measures.hpp"
#include "whh/tables.hpp"

namespace whh {

namespace {

using Cell = std::variant<std::string, double, long>;

struct OutTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const OutTable& table, std::ostream& os) {
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_quote(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        os << csv_quote(*s);
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        os << format_double(*d);
      } else {
        os << std::get<long>(row[i]);
      }
    }
    os << '\n';
  }
}

const char* method_name(QuadMethod m) {
  switch (m) {
    case QuadMethod::Auto: return "auto";
    case QuadMethod::NestedAdaptive: return "adaptive";
    case QuadMethod::MonteCarlo: return "mc";
  }
  return "?";
}

nlohmann::json meta_block(const JobSpec& job) {
  return nlohmann::json{{"version", kVersion},
                        {"command", job.command},
                        {"method", method_name(job.cfg.method)},
                        {"abs_tol", job.cfg.abs_tol},
                        {"rel_tol", job.cfg.rel_tol},
                        {"max_evals", job.cfg.max_evals},
                        {"seed", job.seed}};
}

void write_json(const OutTable& table, const JobSpec& job, std::ostream& os) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj;
    for (size_t i = 0; i < row.size(); ++i) {
      const auto& col = table.columns[i];
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        obj[col] = *s;
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        obj[col] = *d;
      } else {
        obj[col] = std::get<long>(row[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::json doc{{"meta", meta_block(job)},
                     {"table", table.name},
                     {"rows", std::move(rows)}};
  os << doc.dump(2) << '\n';
}

void emit(const OutTable& table, const JobSpec& job, std::ostream& fallback) {
  auto write = [&](std::ostream& os) {
    if (job.format == "json") {
      write_json(table, job, os);
    } else {
      write_csv(table, os);
    }
  };
  if (job.out_path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(job.out_path, std::ios::binary);
  if (!file) {
    throw std::invalid_argument("out: cannot open '" + job.out_path + "'");
  }
  write(file);
}

struct Validation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

WeightVector weights_of(const JobSpec& job) {
  if (job.weights.empty()) {
    throw Validation("weights: required for this command");
  }
  return WeightVector(job.weights);
}

std::vector<double> scalar_nodes_of(const JobSpec& job) {
  if (job.nodes.empty()) throw Validation("nodes: required for this command");
  std::vector<double> flat;
  for (const auto& p : job.nodes) {
    if (p.size() != 1) {
      throw Validation("nodes: this command takes scalar nodes");
    }
    flat.push_back(p[0]);
  }
  return flat;
}

MeasureSpec measure_of(const JobSpec& job) {
  if (job.measure == "nu") return MeasureSpec::nu(weights_of(job));
  if (job.measure == "mu") return MeasureSpec::mu(weights_of(job));
  if (job.measure == "uniform") {
    const int n = job.dim > 0 ? job.dim
                              : static_cast<int>(job.weights.size());
    if (n < 1) {
      throw Validation("dim: the uniform measure needs --dim (or weights)");
    }
    return MeasureSpec::uniform(n);
  }
  throw Validation("measure: expected nu, mu or uniform, got '" +
                   job.measure + "'");
}

int cmd_mean(const JobSpec& job, std::ostream& out) {
  WeightVector w = weights_of(job);
  NodeVector a(scalar_nodes_of(job));
  std::vector<std::string> kinds = job.kinds;
  if (kinds.empty()) {
    kinds = {"arithmetic", "harmonic", "geometric",
             "logcal",     "logbb",    "identric"};
  }
  OutTable table{"mean", {"kind", "value", "error_bound", "evals"}, {}};
  for (const auto& name : kinds) {
    auto kind = parse_mean_kind(name);
    if (!kind) throw Validation("kinds: unknown mean kind '" + name + "'");
    MeanResult m = evaluate_mean(*kind, w, a, job.cfg);
    const long evals = m.estimate ? m.estimate->evals : 0;
    table.rows.push_back(
        {std::string(name), m.value, m.error_bound, evals});
  }
  emit(table, job, out);
  return 0;
}

int cmd_measure(const JobSpec& job, std::ostream& out) {
  const int actions = (job.tilde ? 1 : 0) + (job.normcheck ? 1 : 0) +
                      (job.density_points.empty() ? 0 : 1) +
                      (job.sample_count > 0 ? 1 : 0);
  if (actions != 1) {
    throw Validation(
        "measure: choose exactly one of --tilde, --normcheck, --density, "
        "--sample");
  }

  if (job.tilde) {
    WeightVector w = weights_of(job);
    auto tw = tilde_weights(w);
    OutTable table{"tilde", {"index", "tilde_weight"}, {}};
    for (size_t i = 0; i < tw.size(); ++i) {
      table.rows.push_back({static_cast<long>(i + 1), tw[i]});
    }
    emit(table, job, out);
    return 0;
  }

  MeasureSpec spec = measure_of(job);

  if (job.normcheck) {
    Integrand one = [](std::span<const double>) { return 1.0; };
    IntegralEstimate est = integrate(one, spec, job.cfg);
    OutTable table{
        "normcheck",
        {"value", "abs_deviation", "error_bound", "evals"},
        {{est.value, std::abs(est.value - 1.0), est.error_bound, est.evals}}};
    emit(table, job, out);
    return 0;
  }

  if (!job.density_points.empty()) {
    OutTable table{"density", {"point", "density"}, {}};
    for (const auto& coords : job.density_points) {
      SimplexPoint t{std::vector<double>(coords)};
      std::string label;
      for (size_t i = 0; i < coords.size(); ++i) {
        if (i) label += ',';
        label += format_double(coords[i]);
      }
      table.rows.push_back({label, spec.density(t)});
    }
    emit(table, job, out);
    return 0;
  }

  // sample emission
  const int n = spec.dim();
  OutTable table{"sample", {}, {}};
  for (int i = 0; i <= n; ++i) {
    table.columns.push_back("t" + std::to_string(i + 1));
  }
  SimplexSampler sampler(spec, job.seed);
  std::vector<double> bary(static_cast<size_t>(n) + 1);
  for (int i = 0; i < job.sample_count; ++i) {
    sampler.next(bary);
    std::vector<Cell> row;
    for (double x : bary) row.emplace_back(x);
    table.rows.push_back(std::move(row));
  }
  emit(table, job, out);
  return 0;
}

int cmd_hh(const JobSpec& job, std::ostream& out) {
  WeightVector w = weights_of(job);
  if (job.nodes.empty()) throw Validation("nodes: required for this command");
  const int arity = static_cast<int>(job.nodes[0].size());
  auto f = make_test_function(job.func, arity);
  if (!f) throw Validation("f: unknown test function '" + job.func + "'");
  if (job.measure != "nu" && job.measure != "mu") {
    throw Validation("measure: hh chains need nu or mu");
  }
  HHReport rep = job.measure == "nu" ? hh_nu(*f, w, job.nodes, job.cfg)
                                     : hh_mu(*f, w, job.nodes, job.cfg);
  OutTable table{"hh",
                 {"measure", "function", "convex", "left", "middle", "right",
                  "error_bound", "slack_left", "slack_right", "chain_ok",
                  "convexity_ok"},
                 {{job.measure, f->name, std::string(f->convex ? "yes" : "no"),
                   rep.left, rep.middle.value, rep.right,
                   rep.middle.error_bound, rep.slack.first, rep.slack.second,
                   std::string(rep.chain_ok ? "yes" : "no"),
                   std::string(rep.convexity_ok ? "yes" : "no")}}};
  emit(table, job, out);
  return rep.chain_ok ? 0 : 5;
}

int cmd_audit(const JobSpec& job, std::ostream& out) {
  if (job.trials < 1) throw Validation("trials: must be >= 1");
  AuditSummary s = randomized_audit(job.seed, job.trials, job.cfg);
  OutTable table{"audit",
                 {"trials", "passes", "failures", "worst_slack"},
                 {{static_cast<long>(s.trials), static_cast<long>(s.passes),
                   static_cast<long>(s.failures), s.worst_slack}}};
  emit(table, job, out);
  for (const auto& v : s.violations) {
    std::ostringstream line;
    line << "violation: trial " << v.trial << " " << v.function << " n="
         << v.dim << " measure=" << (v.measure == MeasureKind::Nu ? "nu" : "mu")
         << " slack=" << format_double(v.slack);
    out << line.str() << '\n';
  }
  return s.failures == 0 ? 0 : 5;
}

int cmd_tables(const JobSpec& job, std::ostream& out, std::ostream& err) {
  TableSet set = compute_reference_tables(job.cfg);

  std::string dir = job.out_path;
  if (dir.empty()) {
    if (const char* env = std::getenv(kOutDirEnvVar)) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);

  const char* stems[] = {"example45_multivariate", "example45_bivariate",
                         "identric_bivariate"};
  for (const char* stem : stems) {
    OutTable table{stem,
                   {"inputs", "quantity", "paper_value", "computed_value",
                    "abs_diff", "error_bound"},
                   {}};
    for (const auto& row : set.values) {
      if (row.table != stem) continue;
      table.rows.push_back({row.inputs, row.quantity, row.reference,
                            row.computed, row.abs_diff(), row.error_bound});
    }
    JobSpec file_job = job;
    file_job.out_path = dir + "/" + stem +
                        (job.format == "json" ? ".json" : ".csv");
    emit(table, file_job, out);
    out << file_job.out_path << '\n';
  }
  {
    OutTable table{"noncomparability",
                   {"pair", "inputs", "paper_value", "computed_value",
                    "abs_diff", "lhs", "rhs", "error_bound"},
                   {}};
    for (const auto& row : set.signs) {
      table.rows.push_back({row.pair_name, row.inputs,
                            static_cast<double>(row.reference_sign),
                            static_cast<double>(row.computed_sign),
                            std::abs(static_cast<double>(row.reference_sign -
                                                         row.computed_sign)),
                            row.lhs, row.rhs, row.error_bound});
    }
    JobSpec file_job = job;
    file_job.out_path = dir + "/noncomparability" +
                        std::string(job.format == "json" ? ".json" : ".csv");
    emit(table, file_job, out);
    out << file_job.out_path << '\n';
  }

  bool ok = true;
  for (const auto& row : set.values) {
    if (!(row.abs_diff() <= kTableTolerance)) {
      ok = false;
      err << "table row out of tolerance: " << row.table << " " << row.inputs
          << " " << row.quantity << " reference=" << format_double(row.reference)
          << " computed=" << format_double(row.computed) << '\n';
    }
  }
  for (const auto& row : set.signs) {
    if (row.computed_sign != row.reference_sign) {
      ok = false;
      err << "sign flip not reproduced: " << row.pair_name << " "
          << row.inputs << '\n';
    }
  }
  return ok ? 0 : 4;
}

}  // namespace

double parse_number(const std::string& text) {
  const auto bad = [&]() {
    return std::invalid_argument("not a number: '" + text + "'");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      size_t used = 0;
      const long long num = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw bad();
      const std::string den_text = text.substr(slash + 1);
      const long long den = std::stoll(den_text, &used);
      if (used != den_text.size() || den == 0) throw bad();
      return static_cast<double>(num) / static_cast<double>(den);
    }
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw bad();
    return v;
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::vector<std::vector<double>> parse_vector_list(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::string group;
  std::istringstream stream(text);
  while (std::getline(stream, group, ';')) {
    out.push_back(parse_number_list(group));
  }
  if (out.empty()) throw std::invalid_argument("empty vector list");
  return out;
}

JobSpec job_from_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("job: cannot open '" + path + "'");
  }
  nlohmann::json j = nlohmann::json::parse(file);
  JobSpec job;

  auto number_or_list = [](const nlohmann::json& node) {
    std::vector<double> out;
    if (node.is_string()) return parse_number_list(node.get<std::string>());
    for (const auto& x : node) out.push_back(x.get<double>());
    return out;
  };

  job.command = j.value("command", "");
  if (j.contains("weights")) job.weights = number_or_list(j["weights"]);
  if (j.contains("nodes")) {
    const auto& nodes = j["nodes"];
    if (nodes.is_string()) {
      // 0.5,1,2 lists scalar nodes; semicolons delimit vector nodes
      const std::string text = nodes.get<std::string>();
      if (text.find(';') != std::string::npos) {
        job.nodes = parse_vector_list(text);
      } else {
        for (double v : parse_number_list(text)) job.nodes.push_back({v});
      }
    } else {
      for (const auto& entry : nodes) {
        if (entry.is_array()) {
          std::vector<double> p;
          for (const auto& x : entry) p.push_back(x.get<double>());
          job.nodes.push_back(std::move(p));
        } else {
          job.nodes.push_back({entry.get<double>()});
        }
      }
    }
  }
  if (j.contains("kinds")) {
    for (const auto& k : j["kinds"]) job.kinds.push_back(k.get<std::string>());
  }
  job.measure = j.value("measure", job.measure);
  job.func = j.value("f", j.value("func", job.func));
  job.tilde = j.value("tilde", false);
  job.normcheck = j.value("normcheck", false);
  if (j.contains("density")) {
    const auto& d = j["density"];
    if (d.is_string()) {
      job.density_points = parse_vector_list(d.get<std::string>());
    } else {
      for (const auto& entry : d) {
        std::vector<double> p;
        for (const auto& x : entry) p.push_back(x.get<double>());
        job.density_points.push_back(std::move(p));
      }
    }
  }
  job.sample_count = j.value("sample", 0);
  job.trials = j.value("trials", 0);
  job.dim = j.value("dim", 0);
  if (j.contains("tol")) {
    job.cfg.abs_tol = j["tol"].get<double>();
    job.cfg.rel_tol = j["tol"].get<double>();
  }
  if (j.contains("rel_tol")) job.cfg.rel_tol = j["rel_tol"].get<double>();
  if (j.contains("max_evals")) job.cfg.max_evals = j["max_evals"].get<long>();
  if (j.contains("method")) {
    const std::string m = j["method"].get<std::string>();
    if (m == "auto") {
      job.cfg.method = QuadMethod::Auto;
    } else if (m == "adaptive") {
      job.cfg.method = QuadMethod::NestedAdaptive;
    } else if (m == "mc") {
      job.cfg.method = QuadMethod::MonteCarlo;
    } else {
      throw std::invalid_argument("method: expected auto, adaptive or mc");
    }
  }
  job.format = j.value("format", job.format);
  job.out_path = j.value("out", job.out_path);
  job.seed = j.value("seed", 0ULL);
  job.cfg.seed = job.seed;
  return job;
}

int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.format != "csv" && job.format != "json") {
      throw Validation("format: expected csv or json, got '" + job.format +
                       "'");
    }
    if (job.command == "mean") return cmd_mean(job, out);
    if (job.command == "measure") return cmd_measure(job, out);
    if (job.command == "hh") return cmd_hh(job, out);
    if (job.command == "audit") return cmd_audit(job, out);
    if (job.command == "tables") return cmd_tables(job, out, err);
    throw Validation("command: expected mean, measure, hh, tables or audit");
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: best estimate " << format_double(e.best.value)
        << " with error bound " << format_double(e.best.error_bound) << " after "
        << e.best.evals << " evaluations\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace whh
