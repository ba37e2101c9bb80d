#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "auvctl/scenario.hpp"

namespace auvctl {

/// Parse or validation failure; carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses a sectioned key = value document into a fully resolved Scenario.
///
/// Sections: [sim] [params] [gains] [tde] [trajectory] [disturbance]
/// [uncertainty]. Every key is optional; missing keys take the case-study-1
/// defaults (or case 2 with `[sim] preset = case2`). `[tde] L` defaults to Ts.
/// Vectors are four comma-separated scalars, or one scalar broadcast to all
/// axes. Scalars accept `pi` factors, e.g. `pi/4`. Trajectory and disturbance
/// axes are expressions such as `4*sin(0.04*t) + 0.02*t - 1`.
Scenario parse_config(std::string_view text);

/// Canonical text form of a scenario; parse_config(serialize_config(s)) == s.
std::string serialize_config(const Scenario& sc);

/// 16-hex-digit FNV-1a hash of the canonical form (scenario name excluded).
std::string config_digest(const Scenario& sc);

/// Sets a scalar addressed by `section.key` or `section.key[i]`. Writing a
/// vector key without an index sets all four entries. Throws ConfigError on
/// an unknown path.
void set_param(Scenario& sc, std::string_view path, double value);

/// Expression parsing for one trajectory/disturbance axis.
AxisSignal parse_signal(std::string_view expr);
std::string format_signal(const AxisSignal& s);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace auvctl
