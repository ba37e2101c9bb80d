#include "auvctl/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace auvctl {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out = "configuration error";
  for (const auto& e : v) out += "\n  " + e;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Expression parsing. A parsed expression is a sum of monomials
// coef * t^t_power * [wave(omega t + phase)].

struct Monomial {
  double coef = 1.0;
  int t_power = 0;
  std::optional<SinusoidTerm> trig;  // amplitude unused, coef carries it
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  std::vector<Monomial> parse_all() {
    auto out = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " at column " + std::to_string(pos_ + 1) + " of '" +
                                std::string(src_) + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (src_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < src_.size() && std::isalnum(static_cast<unsigned char>(src_[end]))) return false;
    pos_ = end;
    return true;
  }

  std::vector<Monomial> parse_sum() {
    std::vector<Monomial> terms;
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    for (;;) {
      Monomial m = parse_product();
      m.coef *= sign;
      terms.push_back(m);
      if (accept('+')) sign = 1.0;
      else if (accept('-')) sign = -1.0;
      else break;
    }
    return terms;
  }

  Monomial parse_product() {
    Monomial acc = parse_factor();
    for (;;) {
      if (accept('*')) {
        const Monomial f = parse_factor();
        if (acc.trig && f.trig) fail("product of two sinusoids is not supported");
        acc.coef *= f.coef;
        acc.t_power += f.t_power;
        if (f.trig) acc.trig = f.trig;
      } else if (accept('/')) {
        const Monomial f = parse_factor();
        if (f.trig || f.t_power != 0) fail("divisor must be a constant");
        if (f.coef == 0.0) fail("division by zero");
        acc.coef /= f.coef;
      } else {
        return acc;
      }
    }
  }

  Monomial parse_factor() {
    skip_ws();
    Monomial m;
    if (accept('-')) {
      m = parse_factor();
      m.coef = -m.coef;
      return m;
    }
    if (accept('(')) {
      auto inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      if (inner.size() != 1) fail("parenthesized sums are only supported inside sin/cos");
      return inner.front();
    }
    if (accept_word("pi")) {
      m.coef = std::numbers::pi;
      return m;
    }
    if (accept_word("t")) {
      m.t_power = 1;
      return m;
    }
    const bool is_sin = accept_word("sin");
    if (is_sin || accept_word("cos")) {
      if (!accept('(')) fail("expected '('");
      const auto arg = parse_sum();
      if (!accept(')')) fail("expected ')'");
      SinusoidTerm s;
      s.wave = is_sin ? Waveform::Sin : Waveform::Cos;
      for (const auto& a : arg) {
        if (a.trig || a.t_power > 1) fail("sinusoid argument must be linear in t");
        (a.t_power == 1 ? s.omega : s.phase) += a.coef;
      }
      m.trig = s;
      return m;
    }
    double v = 0.0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    m.coef = v;
    return m;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double parse_scalar(std::string_view text) {
  double v = 0.0;
  for (const auto& m : ExprParser(trim(text)).parse_all()) {
    if (m.t_power != 0 || m.trig) throw std::invalid_argument("expected a constant, got '" + std::string(text) + "'");
    v += m.coef;
  }
  if (!std::isfinite(v)) throw std::invalid_argument("value must be finite");
  return v;
}

Vec4 parse_vector(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated '['");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<double> vals;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    vals.push_back(parse_scalar(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (vals.size() == 1) return Vec4::Constant(vals[0]);
  if (vals.size() != kAxes) {
    throw std::invalid_argument("expected 1 or 4 values, got " + std::to_string(vals.size()));
  }
  return Vec4(vals[0], vals[1], vals[2], vals[3]);
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  throw std::invalid_argument("expected true/false, got '" + std::string(text) + "'");
}

std::uint64_t parse_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

ControllerKind parse_controller(std::string_view text) {
  text = trim(text);
  if (text == "bs-ismc") return ControllerKind::BsIsmc;
  if (text == "bs-ismc-tde") return ControllerKind::BsIsmcTde;
  if (text == "bs-ismc-tde-adaptive") return ControllerKind::BsIsmcTdeAdaptive;
  throw std::invalid_argument("unknown controller '" + std::string(text) +
                              "' (expected bs-ismc, bs-ismc-tde or bs-ismc-tde-adaptive)");
}

SwitchingMode parse_switching(std::string_view text) {
  text = trim(text);
  if (text == "sat") return SwitchingMode::Saturation;
  if (text == "scaled") return SwitchingMode::Scaled;
  if (text == "sgn") return SwitchingMode::Sign;
  throw std::invalid_argument("unknown switching mode '" + std::string(text) + "' (expected sat, scaled or sgn)");
}

// ---------------------------------------------------------------------------
// Field registry shared by the parser, the serializer and set_param.

double* scalar_field(Scenario& s, std::string_view section, std::string_view key) {
  if (section == "sim") {
    if (key == "duration") return &s.duration;
    if (key == "Ts") return &s.Ts;
    if (key == "divergence_limit") return &s.divergence_limit;
  } else if (section == "params") {
    AuvParams& p = s.params;
    static const std::map<std::string_view, double AuvParams::*> fields = {
        {"mass", &AuvParams::mass},     {"Iz", &AuvParams::Iz},         {"G", &AuvParams::G},
        {"B", &AuvParams::B},           {"X_udot", &AuvParams::X_udot}, {"Y_vdot", &AuvParams::Y_vdot},
        {"Z_wdot", &AuvParams::Z_wdot}, {"N_rdot", &AuvParams::N_rdot}, {"X_u", &AuvParams::X_u},
        {"Y_v", &AuvParams::Y_v},       {"Z_w", &AuvParams::Z_w},       {"N_r", &AuvParams::N_r},
        {"X_uu", &AuvParams::X_uu},     {"Y_vv", &AuvParams::Y_vv},     {"Z_ww", &AuvParams::Z_ww},
        {"N_rr", &AuvParams::N_rr},
    };
    if (auto it = fields.find(key); it != fields.end()) return &(p.*(it->second));
  } else if (section == "gains") {
    if (key == "phi") return &s.gains.phi;
    if (key == "integral_clamp") return &s.gains.integral_clamp;
  } else if (section == "tde") {
    if (key == "L") return &s.tde.delay;
    if (key == "Mbar_min") return &s.tde.mbar_min;
  } else if (section == "uncertainty") {
    if (key == "inertia") return &s.uncertainty.inertia;
    if (key == "coriolis") return &s.uncertainty.coriolis;
    if (key == "damping") return &s.uncertainty.damping;
    if (key == "restoring") return &s.uncertainty.restoring;
  }
  return nullptr;
}

Vec4* vector_field(Scenario& s, std::string_view section, std::string_view key) {
  if (section == "sim") {
    if (key == "x0") return &s.initial.eta;
    if (key == "v0") return &s.initial.eta_dot;
  } else if (section == "gains") {
    if (key == "k1") return &s.gains.k1;
    if (key == "k2") return &s.gains.k2;
    if (key == "k3") return &s.gains.k3;
    if (key == "Gamma") return &s.gains.Gamma;
  } else if (section == "tde") {
    if (key == "Mbar") return &s.tde.mbar0;
    if (key == "alpha") return &s.tde.alpha;
  } else if (section == "disturbance") {
    if (key == "noise") return &s.disturbance.noise;
  }
  return nullptr;
}

int axis_index(std::string_view key) {
  for (int i = 0; i < kAxes; ++i) {
    if (key == kAxisNames[i]) return i;
  }
  return -1;
}

const std::array<std::string_view, 7> kSections = {"sim",        "params",      "gains",      "tde",
                                                   "trajectory", "disturbance", "uncertainty"};

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

AxisSignal parse_signal(std::string_view expr) {
  AxisSignal out;
  for (const auto& m : ExprParser(trim(expr)).parse_all()) {
    if (m.trig) {
      if (m.t_power != 0) throw std::invalid_argument("t times a sinusoid is not supported");
      SinusoidTerm s = *m.trig;
      s.amplitude = m.coef;
      out.terms.push_back(s);
    } else if (m.t_power == 0) {
      out.offset += m.coef;
    } else if (m.t_power == 1) {
      out.ramp += m.coef;
    } else {
      throw std::invalid_argument("only constant, linear and sinusoidal terms are supported");
    }
  }
  return out;
}

std::string format_signal(const AxisSignal& s) {
  std::string out;
  auto emit = [&](double coef, const std::string& body) {
    const bool neg = std::signbit(coef);
    const std::string mag = format_double(std::abs(coef));
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    out += body.empty() ? mag : mag + "*" + body;
  };
  for (const auto& t : s.terms) {
    std::string arg = format_double(t.omega) + "*t";
    if (t.phase != 0.0) arg += (std::signbit(t.phase) ? " - " : " + ") + format_double(std::abs(t.phase));
    emit(t.amplitude, std::string(t.wave == Waveform::Sin ? "sin(" : "cos(") + arg + ")");
  }
  if (s.ramp != 0.0) emit(s.ramp, "t");
  if (s.offset != 0.0 || out.empty()) emit(s.offset, "");
  return out;
}

Scenario parse_config(std::string_view text) {
  std::vector<std::string> errors;
  std::vector<Entry> entries;

  // Pass 1: syntax.
  std::string section;
  bool section_valid = true;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find_first_of("#;"); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + ", column " + std::to_string(raw.find('[') + 1) + ": unterminated section header");
        section_valid = false;
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      section_valid = std::find(kSections.begin(), kSections.end(), section) != kSections.end();
      if (!section_valid) errors.push_back(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + ", column " + std::to_string(raw.find_first_not_of(" \t") + 1) +
                       ": expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) {
      errors.push_back(where + ", column 1: missing key before '='");
      continue;
    }
    if (section.empty()) {
      errors.push_back(where + ": key '" + key + "' appears before any [section]");
      continue;
    }
    if (!section_valid) continue;
    for (const auto& e : entries) {
      if (e.section == section && e.key == key) {
        errors.push_back(where + ": duplicate key '" + key + "' in [" + section + "] (first on line " +
                         std::to_string(e.line) + ")");
      }
    }
    entries.push_back({section, key, std::string(trim(line.substr(eq + 1))), line_no});
  }

  // Preset picks the defaults before any other key is applied.
  Scenario sc = case1_scenario();
  for (const auto& e : entries) {
    if (e.section == "sim" && e.key == "preset") {
      if (e.value == "case1") sc = case1_scenario();
      else if (e.value == "case2") sc = case2_scenario();
      else errors.push_back("line " + std::to_string(e.line) + ": unknown preset '" + e.value + "' (expected case1 or case2)");
    }
  }

  // Pass 2: values.
  bool delay_set = false;
  std::optional<ControllerKind> controller;
  std::optional<bool> adaptive;
  for (const auto& e : entries) {
    const std::string where = "line " + std::to_string(e.line) + ": [" + e.section + "] " + e.key;
    try {
      if (double* f = scalar_field(sc, e.section, e.key)) {
        *f = parse_scalar(e.value);
        if (e.section == "tde" && e.key == "L") delay_set = true;
      } else if (Vec4* v = vector_field(sc, e.section, e.key)) {
        *v = parse_vector(e.value);
      } else if (e.section == "sim" && e.key == "preset") {
        // handled above
      } else if (e.section == "sim" && e.key == "name") {
        if (e.value.empty()) throw std::invalid_argument("name must not be empty");
        sc.name = e.value;
      } else if (e.section == "sim" && e.key == "controller") {
        controller = parse_controller(e.value);
      } else if (e.section == "params" && e.key == "corrected_drag") {
        sc.corrected_drag = parse_bool(e.value);
      } else if (e.section == "gains" && e.key == "switching") {
        sc.gains.switching = parse_switching(e.value);
      } else if (e.section == "tde" && e.key == "adaptive") {
        adaptive = parse_bool(e.value);
      } else if (e.section == "tde" && e.key == "abs_sigma") {
        sc.tde.abs_sigma = parse_bool(e.value);
      } else if (e.section == "trajectory" && axis_index(e.key) >= 0) {
        sc.trajectory.axes[axis_index(e.key)] = parse_signal(e.value);
      } else if (e.section == "disturbance" && axis_index(e.key) >= 0) {
        sc.disturbance.axes[axis_index(e.key)] = parse_signal(e.value);
      } else if (e.section == "disturbance" && e.key == "seed") {
        sc.disturbance.seed = parse_u64(e.value);
      } else {
        errors.push_back("line " + std::to_string(e.line) + ": unknown key '" + e.key + "' in [" + e.section + "]");
      }
    } catch (const std::exception& ex) {
      errors.push_back(where + ": " + ex.what());
    }
  }

  if (!delay_set) sc.tde.delay = sc.Ts;

  ControllerKind kind = controller.value_or(sc.controller);
  if (adaptive.has_value()) {
    if (*adaptive) {
      if (kind == ControllerKind::BsIsmc) errors.emplace_back("[tde] adaptive = true requires a TDE controller");
      else kind = ControllerKind::BsIsmcTdeAdaptive;
    } else if (kind == ControllerKind::BsIsmcTdeAdaptive) {
      if (controller.has_value()) errors.emplace_back("[tde] adaptive = false contradicts controller = bs-ismc-tde-adaptive");
      else kind = ControllerKind::BsIsmcTde;
    }
  }
  sc.controller = kind;

  for (auto& v : sc.violations()) errors.push_back(std::move(v));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return sc;
}

namespace {

std::string format_vector(const Vec4& v) {
  return format_double(v(0)) + ", " + format_double(v(1)) + ", " + format_double(v(2)) + ", " +
         format_double(v(3));
}

std::string serialize_impl(const Scenario& sc, bool include_name) {
  Scenario& s = const_cast<Scenario&>(sc);  // field lookup only; nothing is written
  std::ostringstream os;
  auto scalar = [&](const char* sec, const char* key) {
    os << key << " = " << format_double(*scalar_field(s, sec, key)) << "\n";
  };
  auto vector = [&](const char* sec, const char* key) {
    os << key << " = " << format_vector(*vector_field(s, sec, key)) << "\n";
  };

  os << "[sim]\n";
  if (include_name) os << "name = " << sc.name << "\n";
  os << "controller = " << to_string(sc.controller) << "\n";
  for (const char* k : {"duration", "Ts"}) scalar("sim", k);
  for (const char* k : {"x0", "v0"}) vector("sim", k);
  scalar("sim", "divergence_limit");

  os << "\n[params]\n";
  for (const char* k : {"mass", "Iz", "G", "B", "X_udot", "Y_vdot", "Z_wdot", "N_rdot", "X_u", "Y_v",
                        "Z_w", "N_r", "X_uu", "Y_vv", "Z_ww", "N_rr"}) {
    scalar("params", k);
  }
  os << "corrected_drag = " << (sc.corrected_drag ? "true" : "false") << "\n";

  os << "\n[gains]\n";
  for (const char* k : {"k1", "k2", "k3", "Gamma"}) vector("gains", k);
  scalar("gains", "phi");
  os << "switching = " << to_string(sc.gains.switching) << "\n";
  scalar("gains", "integral_clamp");

  os << "\n[tde]\n";
  scalar("tde", "L");
  vector("tde", "Mbar");
  os << "adaptive = " << (sc.controller == ControllerKind::BsIsmcTdeAdaptive ? "true" : "false") << "\n";
  vector("tde", "alpha");
  scalar("tde", "Mbar_min");
  os << "abs_sigma = " << (sc.tde.abs_sigma ? "true" : "false") << "\n";

  os << "\n[trajectory]\n";
  for (int i = 0; i < kAxes; ++i) os << kAxisNames[i] << " = " << format_signal(sc.trajectory.axes[i]) << "\n";

  os << "\n[disturbance]\n";
  for (int i = 0; i < kAxes; ++i) os << kAxisNames[i] << " = " << format_signal(sc.disturbance.axes[i]) << "\n";
  vector("disturbance", "noise");
  os << "seed = " << sc.disturbance.seed << "\n";

  os << "\n[uncertainty]\n";
  for (const char* k : {"inertia", "coriolis", "damping", "restoring"}) scalar("uncertainty", k);
  return os.str();
}

}  // namespace

std::string serialize_config(const Scenario& sc) { return serialize_impl(sc, true); }

std::string config_digest(const Scenario& sc) {
  const std::string text = serialize_impl(sc, false);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void set_param(Scenario& sc, std::string_view path, double value) {
  const auto dot = path.find('.');
  if (dot == std::string_view::npos) throw ConfigError({"parameter path '" + std::string(path) + "' must be section.key"});
  const std::string_view section = path.substr(0, dot);
  std::string_view key = path.substr(dot + 1);
  int index = -1;
  if (const auto br = key.find('['); br != std::string_view::npos) {
    if (key.back() != ']') throw ConfigError({"malformed index in '" + std::string(path) + "'"});
    const std::string_view idx = key.substr(br + 1, key.size() - br - 2);
    const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (ec != std::errc() || ptr != idx.data() + idx.size() || index < 0 || index >= kAxes) {
      throw ConfigError({"index must be 0..3 in '" + std::string(path) + "'"});
    }
    key = key.substr(0, br);
  }
  if (double* f = scalar_field(sc, section, key)) {
    if (index >= 0) throw ConfigError({"'" + std::string(section) + "." + std::string(key) + "' is a scalar"});
    *f = value;
    return;
  }
  if (Vec4* v = vector_field(sc, section, key)) {
    if (index >= 0) (*v)(index) = value;
    else v->setConstant(value);
    return;
  }
  throw ConfigError({"unknown parameter path '" + std::string(path) + "'"});
}

}  // namespace auvctl
