// Command-line driver: runs experiment sweeps to CSV and summarizes CSV files.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etdg/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Embedded Trefftz DG and SIPDG solvers for the Helmholtz equation"};
  app.require_subcommand(1);

  std::string experiment;
  std::vector<int> degrees;
  int levels = 0;
  std::vector<double> omegas;
  double alpha = 10.0;
  std::vector<std::string> methods;
  std::string out_path;
  long long dof_cap = 2'000'000;
  int quad_bump = 0;
  std::string mesh_dump;
  bool serial = false;

  auto* run = app.add_subcommand("run", "Run an experiment sweep and write CSV");
  run->add_option("--experiment", experiment, "hankel | sinsin | planewave | varomega")
      ->required()
      ->check(CLI::IsMember({"hankel", "sinsin", "planewave", "varomega"}));
  run->add_option("--p", degrees, "Polynomial degrees, e.g. 3,4,5")->delimiter(',');
  run->add_option("--levels", levels, "Number of refinement levels")->check(CLI::PositiveNumber);
  run->add_option("--omega", omegas, "Wavenumbers, e.g. 100,500")->delimiter(',');
  run->add_option("--alpha", alpha, "Penalty parameter")->check(CLI::PositiveNumber);
  run->add_option("--methods", methods, "etvol,dgvol (or embedded,standard)")->delimiter(',');
  run->add_option("--out", out_path, "CSV output path")->required();
  run->add_option("--dof-cap", dof_cap, "Skip runs with more unknowns than this");
  run->add_option("--quad-bump", quad_bump, "Extra quadrature order for error integrals");
  run->add_option("--mesh-dump", mesh_dump, "Write the meshes as plain text to this path");
  run->add_flag("--serial", serial, "Disable OpenMP kernels");

  std::string in_path;
  auto* summ = app.add_subcommand("summarize", "Print an EOC table for a CSV file");
  summ->add_option("--in", in_path, "CSV input path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*summ) {
      std::cout << etdg::summarize(etdg::read_csv(in_path));
      return 0;
    }
    etdg::RunConfig config = etdg::default_config(experiment);
    if (!degrees.empty()) config.degrees = degrees;
    if (levels > 0) config.levels = levels;
    if (!omegas.empty()) config.omegas = omegas;
    if (!methods.empty()) {
      config.methods.clear();
      for (const auto& m : methods) config.methods.push_back(etdg::parse_method(m));
    }
    config.alpha = alpha;
    config.dof_cap = dof_cap;
    config.quadrature_bump = quad_bump;
    config.output = out_path;
    if (!mesh_dump.empty()) config.mesh_dump = mesh_dump;
    config.policy = serial ? etdg::ExecutionPolicy::serial : etdg::ExecutionPolicy::parallel;

    const auto records = etdg::run_experiment(config);
    int failures = 0;
    for (const auto& r : records) {
      if (r.status == etdg::RunStatus::skipped) {
        std::cerr << "skipped: " << r.message << '\n';
      } else if (r.status == etdg::RunStatus::failed) {
        std::cerr << "error: " << r.message << '\n';
        ++failures;
      }
    }
    const auto ok = etdg::successful(records);
    if (ok.empty()) {
      std::cerr << "error: no run completed; nothing written\n";
      return 1;
    }
    std::cout << etdg::summarize(ok);
    return failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
