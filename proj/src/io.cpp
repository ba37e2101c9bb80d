#include "auvctl/io.hpp"

#include <fstream>
#include <system_error>

#include "auvctl/config.hpp"

namespace auvctl {

std::vector<std::string> csv_columns() {
  std::vector<std::string> cols{"t"};
  for (const char* group : {"eta", "eta_d", "e", "sigma", "tau_bar", "tau", "p_tilde", "eps", "mbar"}) {
    for (const char* ax : kAxisNames) cols.push_back(std::string(group) + "_" + ax);
  }
  cols.emplace_back("lemma_norm");
  for (const char* ax : kAxisNames) cols.push_back(std::string("d_") + ax);
  return cols;
}

std::string format_csv(const SimLog& log) {
  std::string out;
  out.reserve((log.records.size() + 1) * 46 * 20);
  const auto cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';

  auto put = [&](double v) {
    out += ',';
    out += format_double(v);
  };
  auto put4 = [&](const Vec4& v) {
    for (int i = 0; i < kAxes; ++i) put(v(i));
  };
  for (const SimRecord& r : log.records) {
    out += format_double(r.t);
    for (const Vec4* v : {&r.eta, &r.eta_d, &r.e, &r.sigma, &r.tau_bar, &r.tau, &r.p_tilde, &r.eps, &r.mbar}) {
      put4(*v);
    }
    put(r.lemma_norm);
    put4(r.d);
    out += '\n';
  }
  return out;
}

std::string format_metrics(const Metrics& m, const std::vector<std::pair<std::string, std::string>>& extra) {
  std::string out;
  for (const auto& [k, v] : extra) out += k + " = " + v + "\n";
  for (const auto& [k, v] : metric_fields(m)) out += k + " = " + format_double(v) + "\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.close();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace auvctl
