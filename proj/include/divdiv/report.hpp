#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "divdiv/analysis.hpp"

namespace divdiv {

struct RunConfig {
  std::string example = "square-uniform";  // square-nonuniform, lshape
  int levels = 4;
  std::string solver = "direct";  // or krylov
  double tol = 1e-10;
  double perturb_factor = 0.2;
  std::uint64_t seed = 1;
  int quad_degree = 14;
  std::string out;              // output path, empty = stdout
  std::string format = "csv";   // md, json
  std::string export_mesh;      // optional mesh dump path
};

struct ConvergenceReport {
  RunConfig config;
  std::vector<ErrorBundle> rows;
  std::vector<std::array<double, 6>> rates;  // rates[0] unused
  bool complete = false;
  double seconds = 0.0;
  std::string error;  // set when incomplete
};

// Builds the mesh family member for one level of the configured example.
Mesh mesh_for_level(const RunConfig& config, int level);

ConvergenceReport run_convergence(const RunConfig& config);

std::string to_csv(const ConvergenceReport& report);
std::string to_markdown(const ConvergenceReport& report);
std::string to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const std::string& text);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string detail;
};

std::vector<CheckResult> check_unisolvence(int ntriangles = 50,
                                           std::uint64_t seed = 7);
std::vector<CheckResult> check_conformity(int n = 4, std::uint64_t seed = 11);
std::vector<CheckResult> check_complex(int n = 2, std::uint64_t seed = 13);
std::vector<CheckResult> check_infsup(int levels = 3);

// which: unisolvence, conformity, complex, infsup, or all.
std::vector<CheckResult> run_checks(const std::string& which);

// A well-shaped random triangle (min angle bounded away from zero).
Mesh random_triangle(std::mt19937_64& rng);

}  // namespace divdiv
