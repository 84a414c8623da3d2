#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dgwave/acceptance.hpp"
#include "dgwave/experiments.hpp"

namespace {

std::string join_ids() {
  std::string s;
  for (const auto& id : dgwave::experiment_ids()) s += (s.empty() ? "" : ", ") + id;
  return s;
}

void print_failures(const dgwave::VerificationReport& report) {
  for (const auto& c : report.claims()) {
    if (!c.pass) {
      std::cerr << "FAIL " << c.claim << ": computed " << c.computed << ", reference " << c.paper_value
                << ", tol " << c.tol << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DG wave laboratory: runs the simulation and dispersion experiments"};
  app.set_config("--config", "", "TOML/INI file with option defaults (command-line flags win)");
  app.require_subcommand(1);

  dgwave::ExperimentSpec spec;
  std::string scheme;
  std::string outdir = "results";

  auto* run = app.add_subcommand("run", "Run one experiment: " + join_ids());
  run->add_option("experiment", spec.id, "Experiment id")->required();
  run->add_option("--scheme", scheme, "Restrict to one method")
      ->check(CLI::IsMember({"U", "C", "A", "Astar"}));
  run->add_option("--degree,--N", spec.degree, "Polynomial degree N")->check(CLI::NonNegativeNumber);
  run->add_option("--cells", spec.cells, "Number of cells")->check(CLI::Range(2, 1 << 20));
  run->add_option("--tfinal", spec.tfinal, "Final time")->check(CLI::NonNegativeNumber);
  run->add_option("--cfl", spec.cfl, "CFL number (dt = cfl * min h / (2N+1))")->check(CLI::PositiveNumber);
  run->add_option("--alpha", spec.alpha, "Coupling constant for the auxiliary methods");
  run->add_option("--perturb", spec.perturb, "Node perturbation for non-uniform meshes")->capture_default_str()
      ->check(CLI::Range(0.0, 0.4999999));
  run->add_option("--seed", spec.seed, "Mesh perturbation seed")->capture_default_str();
  run->add_option("--outdir", outdir, "Output directory")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Evaluate every acceptance criterion");
  verify->add_option("--outdir", outdir, "Output directory")->capture_default_str();

  auto* list = app.add_subcommand("list", "List experiment ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& id : dgwave::experiment_ids()) std::cout << id << '\n';
      return 0;
    }
    if (run->parsed()) {
      if (!scheme.empty()) spec.scheme = dgwave::parse_method(scheme);
      spec.outdir = outdir;
      dgwave::validate(spec);
      const auto report = dgwave::run_experiment(spec);
      std::cout << spec.id << ": " << report.claims().size() << " claims, "
                << (report.passed() ? "all passed" : "some failed") << " (" << outdir << "/" << spec.id
                << "/report.csv)\n";
      print_failures(report);
      return report.passed() ? 0 : 1;
    }
    if (verify->parsed()) {
      const auto report = dgwave::verify_all(outdir);
      for (const auto& c : report.claims()) std::cout << (c.pass ? "PASS " : "FAIL ") << c.claim << '\n';
      return report.passed() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
