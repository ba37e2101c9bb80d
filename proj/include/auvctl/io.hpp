#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "auvctl/metrics.hpp"
#include "auvctl/simulation.hpp"

namespace auvctl {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column names in output order: t, eta, eta_d, e, sigma, tau_bar, tau, p_tilde,
/// eps, mbar (four each), lemma_norm, d (four).
std::vector<std::string> csv_columns();

/// Header plus one row per record, shortest round-trip decimals.
std::string format_csv(const SimLog& log);

/// `key = value` lines; `extra` entries come first.
std::string format_metrics(const Metrics& m,
                           const std::vector<std::pair<std::string, std::string>>& extra = {});

/// Writes via a temporary sibling and rename, so a failed write leaves no
/// partial file behind. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace auvctl
