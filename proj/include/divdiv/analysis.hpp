#pragma once

#include <functional>
#include <vector>

#include "divdiv/assembly.hpp"
#include "divdiv/solver.hpp"

namespace divdiv {

struct ErrorBundle {
  int level = 0;
  double h = 0.0;
  double e_sigma = 0.0;   // ||sigma - sigma_h||_0
  double e_divdiv = 0.0;  // ||div div (sigma - sigma_h)||_0 = ||-f - div div sigma_h||_0
  double e_u = 0.0;       // ||u - u_h||_0
  double e_Qu = 0.0;      // ||Q_h u - u_h||_0
  double snorm_Qu = 0.0;  // |Q_h u - u_h|_{2,h}
  double snorm_post = 0.0;  // |u - u_h*|_{2,h}
};

// Piecewise field with per-triangle value/gradient/Hessian evaluators.
struct PiecewiseField {
  std::function<double(int, double, double)> value;
  std::function<Eigen::Vector2d(int, double, double)> grad;
  std::function<Eigen::Matrix2d(int, double, double)> hess;  // null => zero
};

// Elementwise L2 projection onto piecewise P1 (barycentric coefficients).
Eigen::VectorXd project_Qh(const Mesh& mesh, const DofMap& umap,
                           const std::function<double(double, double)>& u,
                           int quad_degree = 14);

// Broken H2 seminorm plus h_e^{-3} value-jump and h_e^{-1} gradient-jump
// edge terms; boundary edges contribute their traces.
double seminorm_2h(const Mesh& mesh, const PiecewiseField& field,
                   int volume_quad_degree = 8, int edge_quad_degree = 10);

// Per-element P5 reconstruction from (sigma_h, u_h): Hessian of u_h* matches
// -sigma_h weakly, P1 moments match u_h.
std::vector<Poly> postprocess(const Mesh& mesh,
                              const std::vector<LocalBasis>& bases,
                              const DofMap& smap, const DofMap& umap,
                              const Eigen::VectorXd& sigma,
                              const Eigen::VectorXd& u);

ErrorBundle error_norms(const Mesh& mesh, const std::vector<LocalBasis>& bases,
                        const DofMap& smap, const DofMap& umap,
                        const SaddleSolution& sol, const Manufactured& problem,
                        int quad_degree = 14);

}  // namespace divdiv
