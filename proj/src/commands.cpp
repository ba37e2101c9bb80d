#include "auvctl/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "auvctl/io.hpp"

namespace auvctl {

namespace fs = std::filesystem;

namespace {

void require_dir(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("output directory " + dir.string() + " does not exist");
}

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

RunReport write_run(const Scenario& sc, const SimLog& log, const Metrics& m, const std::string& stem,
                    const fs::path& out_dir) {
  RunReport r;
  r.name = sc.name;
  r.digest = config_digest(sc);
  r.metrics = m;
  r.unstable = log.unstable;
  r.diagnostic = log.diagnostic;

  const fs::path csv = out_dir / (stem + ".csv");
  const fs::path txt = out_dir / (stem + ".metrics.txt");
  write_file_atomic(csv, format_csv(log));
  r.files.push_back(csv);
  write_file_atomic(txt, format_metrics(m, {{"name", sc.name},
                                            {"digest", r.digest},
                                            {"controller", to_string(sc.controller)},
                                            {"switching", to_string(sc.gains.switching)},
                                            {"stable", log.unstable ? "false" : "true"},
                                            {"diagnostic", log.diagnostic}}));
  r.files.push_back(txt);
  return r;
}

bool lower_is_better(const std::string& key) {
  return key != "samples" && key != "settle_band" && key != "unstable";
}

std::string winner(const MetricDelta& d) {
  if (!lower_is_better(d.key)) return "-";
  if (d.a == d.b) return "tie";
  return d.a < d.b ? "A" : "B";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
  return out + "\"";
}

}  // namespace

Scenario load_scenario(const std::string& spec) {
  if (spec == "case1") return case1_scenario();
  if (spec == "case2") return case2_scenario();
  std::ifstream is(spec, std::ios::binary);
  if (!is) throw IoError("cannot read config " + spec);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

RunReport cmd_run(const Scenario& sc, const fs::path& out_dir) {
  require_dir(out_dir);
  const SimLog log = run_scenario(sc);
  return write_run(sc, log, compute_metrics(log), sc.name, out_dir);
}

CompareReport cmd_compare(const Scenario& a, const Scenario& b, const fs::path& out_dir) {
  require_dir(out_dir);
  if (const auto v = comparison_mismatches(a, b); !v.empty()) {
    throw ConfigError(v);
  }
  const Comparison c = compare(a, b);
  const bool clash = a.name == b.name;
  CompareReport r;
  r.a = write_run(a, c.log_a, c.metrics_a, clash ? "A_" + a.name : a.name, out_dir);
  r.b = write_run(b, c.log_b, c.metrics_b, clash ? "B_" + b.name : b.name, out_dir);
  r.deltas = c.deltas;
  r.files = r.a.files;
  r.files.insert(r.files.end(), r.b.files.begin(), r.b.files.end());

  std::string table = "key,A,B,relative_delta,winner\n";
  for (const auto& d : r.deltas) {
    table += d.key + "," + format_double(d.a) + "," + format_double(d.b) + "," + format_double(d.relative) +
             "," + winner(d) + "\n";
  }
  const fs::path path = out_dir / "compare.csv";
  write_file_atomic(path, table);
  r.files.push_back(path);
  return r;
}

bool SweepReport::any_unstable() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return !r.error.empty() || r.metrics.unstable; });
}

SweepReport cmd_sweep(const Scenario& base, const std::string& param, const std::vector<double>& values,
                      const fs::path& out_dir) {
  if (values.empty()) throw ConfigError({"sweep needs at least one value"});
  require_dir(out_dir);

  std::vector<Scenario> scenarios;
  std::vector<std::string> errors;
  for (double v : values) {
    Scenario sc = base;
    set_param(sc, param, v);
    for (const auto& msg : sc.violations()) errors.push_back(param + " = " + format_double(v) + ": " + msg);
    scenarios.push_back(std::move(sc));
  }
  if (!errors.empty()) throw ConfigError(errors);

  const auto results = run_batch_parallel(scenarios);

  SweepReport r;
  r.param = param;
  for (std::size_t i = 0; i < values.size(); ++i) {
    r.rows.push_back({values[i], config_digest(scenarios[i]), results[i].metrics, results[i].error});
  }

  std::string table = "value,digest,error";
  for (const auto& [k, v] : metric_fields(Metrics{})) table += "," + k;
  table += "\n";
  for (const auto& row : r.rows) {
    table += format_double(row.value) + "," + row.digest + "," + csv_quote(row.error);
    for (const auto& [k, v] : metric_fields(row.metrics)) table += "," + format_double(v);
    table += "\n";
  }
  r.table = out_dir / "sweep.csv";
  write_file_atomic(r.table, table);
  return r;
}

std::string format_run_summary(const RunReport& r) {
  const auto& m = r.metrics;
  std::ostringstream os;
  os << "scenario        " << r.name << "\n"
     << "digest          " << r.digest << "\n"
     << "status          " << (r.unstable ? "UNSTABLE (" + r.diagnostic + ")" : std::string("stable")) << "\n"
     << "samples         " << m.samples << "\n"
     << "settling time   " << fmt(m.settling_time) << " s (band " << fmt(m.settle_band) << ")\n\n";
  os << std::left << std::setw(10) << "axis" << std::setw(14) << "rmse" << std::setw(14) << "final rmse"
     << std::setw(14) << "max |e|" << std::setw(14) << "effort" << "chattering\n";
  for (int i = 0; i < kAxes; ++i) {
    os << std::setw(10) << kAxisNames[i] << std::setw(14) << fmt(m.full.axis[i].rmse) << std::setw(14)
       << fmt(m.final_half.axis[i].rmse) << std::setw(14) << fmt(m.full.axis[i].max_abs) << std::setw(14)
       << fmt(m.full.axis[i].effort) << fmt(m.full.axis[i].chattering) << "\n";
  }
  os << "\nfinal position rmse  " << fmt(m.final_half.position_rmse) << "\n"
     << "tde error sup        " << fmt(m.full.tde_error_sup) << "\n";
  for (const auto& f : r.files) os << "wrote " << f.string() << "\n";
  return os.str();
}

std::string format_compare_table(const CompareReport& r) {
  std::ostringstream os;
  os << "A: " << r.a.name << " (" << r.a.digest << ", " << (r.a.unstable ? "unstable" : "stable") << ")\n"
     << "B: " << r.b.name << " (" << r.b.digest << ", " << (r.b.unstable ? "unstable" : "stable") << ")\n\n";
  os << std::left << std::setw(30) << "metric" << std::setw(14) << "A" << std::setw(14) << "B" << std::setw(12)
     << "delta" << "winner\n";
  for (const auto& d : r.deltas) {
    const bool shown = d.key.find("rmse") != std::string::npos || d.key.find("iae") != std::string::npos ||
                       d.key.find("effort") != std::string::npos || d.key.find("chattering") != std::string::npos;
    if (!shown) continue;
    os << std::setw(30) << d.key << std::setw(14) << fmt(d.a) << std::setw(14) << fmt(d.b) << std::setw(12)
       << fmt(d.relative, 3) << winner(d) << "\n";
  }
  os << "\n";
  for (const auto& f : r.files) os << "wrote " << f.string() << "\n";
  return os.str();
}

std::string format_sweep_table(const SweepReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(14) << r.param << std::setw(10) << "stable" << std::setw(14) << "settling"
     << std::setw(16) << "final pos rmse" << std::setw(14) << "tde err sup" << "chattering\n";
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    const std::string status = !row.error.empty() ? "error" : (m.unstable ? "no" : "yes");
    os << std::setw(14) << fmt(row.value) << std::setw(10) << status << std::setw(14) << fmt(m.settling_time)
       << std::setw(16) << fmt(m.final_half.position_rmse) << std::setw(14) << fmt(m.final_half.tde_error_sup)
       << fmt(m.full.chattering) << "\n";
    if (!row.error.empty()) os << "  error: " << row.error << "\n";
  }
  os << "wrote " << r.table.string() << "\n";
  return os.str();
}

}  // namespace auvctl
