#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "divdiv/report.hpp"

namespace {

constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;
constexpr int kExitConfig = 4;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot open output path " << path << "\n";
    return kExitConfig;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed stress/displacement solver for the clamped plate "
               "equation with convergence and verification drivers"};
  divdiv::RunConfig config;
  std::string check;
  app.add_option("--example", config.example,
                 "square-uniform, square-nonuniform, or lshape")
      ->check(CLI::IsMember({"square-uniform", "square-nonuniform", "lshape"}));
  app.add_option("--levels", config.levels, "number of refinement levels")
      ->check(CLI::Range(1, 6));
  app.add_option("--solver", config.solver, "direct or krylov")
      ->check(CLI::IsMember({"direct", "krylov"}));
  app.add_option("--tol", config.tol, "solver residual tolerance");
  app.add_option("--perturb", config.perturb_factor,
                 "interior vertex perturbation factor")
      ->check(CLI::Range(0.0, 0.3));
  app.add_option("--seed", config.seed, "perturbation seed");
  app.add_option("--out", config.out, "output path (default stdout)");
  app.add_option("--format", config.format, "csv, md, or json")
      ->check(CLI::IsMember({"csv", "md", "json"}));
  app.add_option("--check", check,
                 "run a verification suite: unisolvence, conformity, "
                 "complex, infsup, or all");
  app.add_option("--export-mesh", config.export_mesh,
                 "write the finest mesh to this path");
  app.add_option("--quad-degree", config.quad_degree,
                 "quadrature degree for integrals against exact data")
      ->check(CLI::Range(6, 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (!check.empty()) {
      auto results = divdiv::run_checks(check);
      bool all_pass = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << "  measured=" << r.measured << "  (" << r.detail
                  << ")\n";
        all_pass = all_pass && r.pass;
      }
      return all_pass ? 0 : kExitVerification;
    }

    divdiv::ConvergenceReport report = divdiv::run_convergence(config);
    if (!config.export_mesh.empty()) {
      std::ofstream mesh_out(config.export_mesh);
      if (!mesh_out) {
        std::cerr << "cannot open mesh path " << config.export_mesh << "\n";
        return kExitConfig;
      }
      divdiv::write_mesh(divdiv::mesh_for_level(config, config.levels),
                         mesh_out);
    }
    std::string text;
    if (config.format == "csv") text = divdiv::to_csv(report);
    else if (config.format == "md") text = divdiv::to_markdown(report);
    else text = divdiv::to_json(report);
    int rc = write_output(text, config.out);
    if (rc != 0) return rc;
    if (!report.complete) {
      std::cerr << "incomplete run: " << report.error << "\n";
      return kExitSolver;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
