#include <CLI11.hpp>

#include <iostream>

#include "auvctl/commands.hpp"
#include "auvctl/io.hpp"

namespace {

constexpr int kExitDiverged = 1;
constexpr int kExitError = 2;

auvctl::ControllerKind controller_from(const std::string& s) {
  using auvctl::ControllerKind;
  if (s == "bs-ismc") return ControllerKind::BsIsmc;
  if (s == "bs-ismc-tde") return ControllerKind::BsIsmcTde;
  if (s == "bs-ismc-tde-adaptive") return ControllerKind::BsIsmcTdeAdaptive;
  throw auvctl::ConfigError({"unknown controller '" + s + "'"});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory-tracking simulator for a 4-DOF AUV under BS-ISMC / BS-ISMC-TDE control"};
  app.require_subcommand(1);

  std::string out_dir = ".";

  auto* run = app.add_subcommand("run", "Run one scenario and write <name>.csv and <name>.metrics.txt");
  std::string run_spec, controller;
  bool adaptive = false;
  run->add_option("scenario", run_spec, "Config file, or the built-in case1 / case2")->required();
  run->add_option("--controller", controller, "bs-ismc | bs-ismc-tde | bs-ismc-tde-adaptive");
  run->add_flag("--adaptive", adaptive, "Adapt Mbar online (TDE controllers only)");
  run->add_option("--out", out_dir, "Output directory (must exist)");

  auto* cmp = app.add_subcommand("compare", "Run two scenarios on the same grid and tabulate metric deltas");
  std::string spec_a, spec_b;
  cmp->add_option("A", spec_a, "First scenario")->required();
  cmp->add_option("B", spec_b, "Second scenario")->required();
  cmp->add_option("--out", out_dir, "Output directory (must exist)");

  auto* sweep = app.add_subcommand("sweep", "Run a scenario once per parameter value and write sweep.csv");
  std::string sweep_spec, param;
  std::vector<double> values;
  sweep->add_option("scenario", sweep_spec, "Config file, or the built-in case1 / case2")->required();
  sweep->add_option("--param", param, "section.key or section.key[i], e.g. tde.L or gains.k3")->required();
  sweep->add_option("--values", values, "Comma-separated values")->delimiter(',')->required();
  sweep->add_option("--out", out_dir, "Output directory (must exist)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auvctl::Scenario sc = auvctl::load_scenario(run_spec);
      if (!controller.empty()) sc.controller = controller_from(controller);
      if (adaptive) {
        if (sc.controller == auvctl::ControllerKind::BsIsmc) {
          throw auvctl::ConfigError({"--adaptive requires a TDE controller"});
        }
        sc.controller = auvctl::ControllerKind::BsIsmcTdeAdaptive;
      }
      const auto report = auvctl::cmd_run(sc, out_dir);
      std::cout << auvctl::format_run_summary(report);
      return report.unstable ? kExitDiverged : 0;
    }
    if (*cmp) {
      const auto report = auvctl::cmd_compare(auvctl::load_scenario(spec_a), auvctl::load_scenario(spec_b), out_dir);
      std::cout << auvctl::format_compare_table(report);
      return report.a.unstable || report.b.unstable ? kExitDiverged : 0;
    }
    if (*sweep) {
      const auto report = auvctl::cmd_sweep(auvctl::load_scenario(sweep_spec), param, values, out_dir);
      std::cout << auvctl::format_sweep_table(report);
      return report.any_unstable() ? kExitDiverged : 0;
    }
  } catch (const auvctl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
