#include "divdiv/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "divdiv/complex_check.hpp"
#include "divdiv/quadrature.hpp"
#include "json.hpp"

namespace divdiv {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

std::array<double, 6> bundle_values(const ErrorBundle& eb) {
  return {eb.e_sigma, eb.e_divdiv, eb.e_u, eb.e_Qu, eb.snorm_Qu,
          eb.snorm_post};
}

}  // namespace

Mesh mesh_for_level(const RunConfig& config, int level) {
  Mesh mesh;
  if (config.example == "square-uniform") {
    mesh = build_unit_square(1 << level);
  } else if (config.example == "square-nonuniform") {
    mesh = perturb(build_unit_square(1 << level), config.perturb_factor,
                   config.seed);
  } else if (config.example == "lshape") {
    mesh = build_lshape(1 << (level - 1));
  } else {
    throw std::invalid_argument("unknown example " + config.example);
  }
  mesh.level = level;
  return mesh;
}

ConvergenceReport run_convergence(const RunConfig& config) {
  auto start = std::chrono::steady_clock::now();
  ConvergenceReport report;
  report.config = config;
  if (config.levels < 1 || config.levels > 6)
    throw std::invalid_argument("levels must be in 1..6");
  Manufactured problem =
      config.example == "lshape" ? example3() : example1();
  try {
    for (int level = 1; level <= config.levels; ++level) {
      Mesh mesh = mesh_for_level(config, level);
      auto bases = build_all_bases(mesh);
      DofMap smap = build_sigma_map(mesh);
      DofMap umap = build_u_map(mesh);
      SparseSystem sys = assemble_system(mesh, bases, smap, umap, problem,
                                         config.quad_degree);
      SaddleSolution sol = solve(sys, config.solver, config.tol);
      report.rows.push_back(error_norms(mesh, bases, smap, umap, sol, problem,
                                        config.quad_degree));
    }
    report.complete = true;
  } catch (const std::exception& e) {
    report.complete = false;
    report.error = e.what();
  }
  report.rates.assign(report.rows.size(), {});
  for (std::size_t l = 1; l < report.rows.size(); ++l) {
    auto prev = bundle_values(report.rows[l - 1]);
    auto cur = bundle_values(report.rows[l]);
    for (int k = 0; k < 6; ++k)
      report.rates[l][k] = std::log2(prev[k] / cur[k]);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "level,h,err_sigma,rate,err_divdiv,rate,err_u,rate,"
         "err_Qu,rate,snorm_Qu,rate,snorm_post,rate\n";
  for (std::size_t l = 0; l < report.rows.size(); ++l) {
    const auto& eb = report.rows[l];
    auto vals = bundle_values(eb);
    out << eb.level << "," << fmt(eb.h);
    for (int k = 0; k < 6; ++k) {
      out << "," << fmt(vals[k]) << ",";
      if (l > 0) out << fmt(report.rates[l][k]);
    }
    out << "\n";
  }
  return out.str();
}

std::string to_markdown(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "| level | h | err_sigma | rate | err_divdiv | rate | err_u | rate "
         "| err_Qu | rate | snorm_Qu | rate | snorm_post | rate |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t l = 0; l < report.rows.size(); ++l) {
    const auto& eb = report.rows[l];
    auto vals = bundle_values(eb);
    out << "| " << eb.level << " | " << fmt(eb.h);
    for (int k = 0; k < 6; ++k) {
      out << " | " << fmt(vals[k]) << " | ";
      if (l > 0) out << fmt(report.rates[l][k]);
      else out << "-";
    }
    out << " |\n";
  }
  return out.str();
}

std::string to_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["config"] = {{"example", report.config.example},
                 {"levels", report.config.levels},
                 {"solver", report.config.solver},
                 {"tol", report.config.tol},
                 {"perturb_factor", report.config.perturb_factor},
                 {"seed", report.config.seed},
                 {"quad_degree", report.config.quad_degree},
                 {"format", report.config.format}};
  j["complete"] = report.complete;
  if (!report.error.empty()) j["error"] = report.error;
  j["seconds"] = report.seconds;
  j["rows"] = nlohmann::json::array();
  for (std::size_t l = 0; l < report.rows.size(); ++l) {
    const auto& eb = report.rows[l];
    nlohmann::json row = {{"level", eb.level},         {"h", eb.h},
                          {"err_sigma", eb.e_sigma},   {"err_divdiv", eb.e_divdiv},
                          {"err_u", eb.e_u},           {"err_Qu", eb.e_Qu},
                          {"snorm_Qu", eb.snorm_Qu},   {"snorm_post", eb.snorm_post}};
    if (l > 0) row["rates"] = report.rates[l];
    j["rows"].push_back(row);
  }
  return j.dump(2);
}

ConvergenceReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ConvergenceReport report;
  report.config.example = j["config"]["example"];
  report.config.levels = j["config"]["levels"];
  report.config.solver = j["config"]["solver"];
  report.config.tol = j["config"]["tol"];
  report.config.perturb_factor = j["config"]["perturb_factor"];
  report.config.seed = j["config"]["seed"];
  report.config.quad_degree = j["config"]["quad_degree"];
  report.config.format = j["config"]["format"];
  report.complete = j["complete"];
  if (j.contains("error")) report.error = j["error"];
  report.seconds = j["seconds"];
  for (const auto& row : j["rows"]) {
    ErrorBundle eb;
    eb.level = row["level"];
    eb.h = row["h"];
    eb.e_sigma = row["err_sigma"];
    eb.e_divdiv = row["err_divdiv"];
    eb.e_u = row["err_u"];
    eb.e_Qu = row["err_Qu"];
    eb.snorm_Qu = row["snorm_Qu"];
    eb.snorm_post = row["snorm_post"];
    report.rows.push_back(eb);
    std::array<double, 6> rates{};
    if (row.contains("rates"))
      for (int k = 0; k < 6; ++k) rates[k] = row["rates"][k];
    report.rates.push_back(rates);
  }
  return report;
}

Mesh random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (;;) {
    Eigen::Vector2d p1(uni(rng), uni(rng));
    Eigen::Vector2d p2(uni(rng), uni(rng));
    Eigen::Vector2d p3(uni(rng), uni(rng));
    double a = (p2 - p1).norm(), b = (p3 - p2).norm(), c = (p1 - p3).norm();
    double dmax = std::max({a, b, c});
    if (dmax < 0.3 || dmax > 2.0) continue;
    double area = 0.5 * std::abs((p2 - p1).x() * (p3 - p1).y() -
                                 (p2 - p1).y() * (p3 - p1).x());
    // Shape regularity: inradius over diameter bounded below.
    double inradius = 2.0 * area / (a + b + c);
    if (inradius / dmax < 0.12) continue;
    return single_triangle(p1, p2, p3);
  }
}

std::vector<CheckResult> check_unisolvence(int ntriangles,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst_gram = 0.0, worst_mass = 0.0;
  for (int i = 0; i < ntriangles; ++i) {
    Mesh mesh = random_triangle(rng);
    LocalBasis basis = correct_basis(mesh, 0);
    LocalBasis oracle = vandermonde_oracle(mesh, 0);
    worst_gram = std::max(worst_gram, gram_deviation(mesh, 0, basis));
    worst_gram = std::max(worst_gram, gram_deviation(mesh, 0, oracle));
    DofMap smap = build_sigma_map(mesh);
    SpMat m1 = assemble_mass(mesh, {basis}, smap);
    SpMat m2 = assemble_mass(mesh, {oracle}, smap);
    worst_mass = std::max(
        worst_mass, (Eigen::MatrixXd(m1) - Eigen::MatrixXd(m2))
                        .cwiseAbs()
                        .maxCoeff());
  }
  return {{"unisolvence_gram", worst_gram < 1e-10, worst_gram,
           "max |Gram - I| over random triangles"},
          {"unisolvence_oracle_mass", worst_mass < 1e-9, worst_mass,
           "max element mass matrix disagreement vs oracle"}};
}

std::vector<CheckResult> check_conformity(int n, std::uint64_t seed) {
  Mesh mesh = build_unit_square(n);
  auto bases = build_all_bases(mesh);
  DofMap smap = build_sigma_map(mesh);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd coeffs(smap.n_dofs);
  for (int i = 0; i < smap.n_dofs; ++i) coeffs[i] = uni(rng);

  std::vector<SymTensorPoly> sig(mesh.tris.size());
  for (const auto& tri : mesh.tris)
    sig[tri.id] = local_sigma(bases, smap, tri.id, coeffs);

  const QuadRule rule = edge_rule(8);
  double worst_edge = 0.0;
  for (const auto& e : mesh.edges) {
    if (e.ntri != 2) continue;
    auto d0 = sig[e.tri[0]].div();
    auto d1 = sig[e.tri[1]].div();
    Eigen::Vector2d pa = mesh.point(e.a), pb = mesh.point(e.b);
    for (int q = 0; q < rule.points.rows(); ++q) {
      Eigen::Vector2d p = pa + rule.points(q, 0) * (pb - pa);
      Eigen::Vector2d sn0 = sig[e.tri[0]].eval(p.x(), p.y()) * e.n;
      Eigen::Vector2d sn1 = sig[e.tri[1]].eval(p.x(), p.y()) * e.n;
      double scale = std::max({1.0, sn0.norm(), sn1.norm()});
      worst_edge = std::max(worst_edge, (sn0 - sn1).norm() / scale);
      double dn0 = d0[0].eval(p.x(), p.y()) * e.n.x() +
                   d0[1].eval(p.x(), p.y()) * e.n.y();
      double dn1 = d1[0].eval(p.x(), p.y()) * e.n.x() +
                   d1[1].eval(p.x(), p.y()) * e.n.y();
      double dscale = std::max({1.0, std::abs(dn0), std::abs(dn1)});
      worst_edge = std::max(worst_edge, std::abs(dn0 - dn1) / dscale);
    }
  }
  double worst_vertex = 0.0;
  for (const auto& tri : mesh.tris)
    for (int v = 0; v < 3; ++v) {
      Eigen::Vector2d p = mesh.point(tri.v[v]);
      Eigen::Matrix2d m = sig[tri.id].eval(p.x(), p.y());
      Eigen::Matrix2d want;
      want << coeffs[3 * tri.v[v]], coeffs[3 * tri.v[v] + 1],
          coeffs[3 * tri.v[v] + 1], coeffs[3 * tri.v[v] + 2];
      worst_vertex = std::max(worst_vertex, (m - want).cwiseAbs().maxCoeff());
    }
  return {{"conformity_edges", worst_edge < 1e-9, worst_edge,
           "normal flux single-valuedness across interior edges"},
          {"conformity_vertices", worst_vertex < 1e-10, worst_vertex,
           "vertex value single-valuedness"}};
}

std::vector<CheckResult> check_complex(int n, std::uint64_t seed) {
  Mesh mesh = build_unit_square(n);
  auto bases = build_all_bases(mesh);
  DofMap smap = build_sigma_map(mesh);
  DofMap umap = build_u_map(mesh);
  SpMat B = assemble_divdiv(mesh, bases, smap, umap);
  int nv = static_cast<int>(mesh.vertices.size());
  int ne = static_cast<int>(mesh.edges.size());
  int nt = static_cast<int>(mesh.tris.size());
  int rank = matrix_rank(B);
  bool rank_ok = rank == 3 * nt;
  bool nullity_ok = (smap.n_dofs - rank) == (6 * nv + 4 * ne - 3);

  VhMap vmap = build_vh_map(mesh);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd v(vmap.n_dofs);
  for (int i = 0; i < vmap.n_dofs; ++i) v[i] = uni(rng);
  double mismatch = 0.0;
  Eigen::VectorXd g = sym_curl_to_sigma(mesh, vmap, smap, v, &mismatch);
  double annihilation = (B * g).cwiseAbs().maxCoeff();

  // Lowest-order rigid-type kernel field (a1 + b x, a2 + b y).
  double a1 = 0.3, a2 = -0.7, b = 1.2;
  Eigen::VectorXd rt = Eigen::VectorXd::Zero(vmap.n_dofs);
  for (const auto& vx : mesh.vertices) {
    rt[6 * vx.id + 0] = a1 + b * vx.x;
    rt[6 * vx.id + 1] = a2 + b * vx.y;
    rt[6 * vx.id + 2] = b;
    rt[6 * vx.id + 5] = b;
  }
  for (const auto& e : mesh.edges) {
    Eigen::Vector2d mid = 0.5 * (mesh.point(e.a) + mesh.point(e.b));
    rt[6 * nv + 4 * e.id + 0] = a1 + b * mid.x();
    rt[6 * nv + 4 * e.id + 1] = a2 + b * mid.y();
    rt[6 * nv + 4 * e.id + 2] = b * e.length;  // (div v, mu) with div v = 2b
    rt[6 * nv + 4 * e.id + 3] = b * e.length;
  }
  Eigen::VectorXd g0 = sym_curl_to_sigma(mesh, vmap, smap, rt, nullptr);
  double kernel = g0.cwiseAbs().maxCoeff();

  return {{"complex_rank", rank_ok, double(rank), "rank(B) = 3#T"},
          {"complex_nullity", nullity_ok, double(smap.n_dofs - rank),
           "nullity(B) = 6#V + 4#E - 3"},
          {"complex_conformity", mismatch < 1e-9, mismatch,
           "sym curl DOF single-valuedness"},
          {"complex_annihilation", annihilation < 1e-9, annihilation,
           "B annihilates sym curl fields"},
          {"complex_kernel", kernel < 1e-9, kernel,
           "sym curl of lowest-order kernel fields vanishes"}};
}

std::vector<CheckResult> check_infsup(int levels) {
  std::vector<double> betas;
  for (int level = 1; level <= levels; ++level) {
    Mesh mesh = build_unit_square(1 << level);
    auto bases = build_all_bases(mesh);
    DofMap smap = build_sigma_map(mesh);
    DofMap umap = build_u_map(mesh);
    SparseSystem sys;
    sys.n_sigma = smap.n_dofs;
    sys.n_u = umap.n_dofs;
    sys.M = assemble_mass(mesh, bases, smap);
    sys.B = assemble_divdiv(mesh, bases, smap, umap);
    sys.Mu = assemble_u_mass(mesh, umap);
    betas.push_back(estimate_infsup(sys));
  }
  double bmin = *std::min_element(betas.begin(), betas.end());
  double bmax = *std::max_element(betas.begin(), betas.end());
  double spread = (bmax - bmin) / bmin;
  std::string detail = "beta_h =";
  for (double b : betas) detail += " " + fmt(b);
  return {{"infsup_positive", bmin > 0.0, bmin, detail},
          {"infsup_spread", spread < 0.25, spread,
           "relative spread across levels"}};
}

std::vector<CheckResult> run_checks(const std::string& which) {
  std::vector<CheckResult> all;
  auto add = [&](std::vector<CheckResult> r) {
    all.insert(all.end(), r.begin(), r.end());
  };
  if (which == "unisolvence" || which == "all") add(check_unisolvence());
  if (which == "conformity" || which == "all") add(check_conformity());
  if (which == "complex" || which == "all") add(check_complex());
  if (which == "infsup" || which == "all") add(check_infsup());
  if (all.empty())
    throw std::invalid_argument("unknown check " + which);
  return all;
}

}  // namespace divdiv
