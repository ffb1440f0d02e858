#pragma once

#include <string>

#include "divdiv/assembly.hpp"

namespace divdiv {

struct SaddleSolution {
  Eigen::VectorXd sigma;  // N_sigma
  Eigen::VectorXd u;      // N_u
  double rel_residual = 0.0;
  int iterations = 0;     // 0 for the direct path
  std::string method;
};

// Solves [[M, B^T],[B, 0]] [sigma; u] = [0; load].
// method: "direct" (sparse LU) or "krylov" (MINRES with a block-diagonal
// preconditioner). Throws on factorization failure or residual > tol.
SaddleSolution solve(const SparseSystem& sys, const std::string& method,
                     double tol = 1e-10);

// beta_h^2 = smallest eigenvalue of B A^{-1} B^T x = lambda Mu x with
// A = M + B^T Mu^{-1} B. Dense path; requires N_sigma <= 2000.
double estimate_infsup(const SparseSystem& sys);

}  // namespace divdiv
