#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "divdiv/assembly.hpp"
#include "divdiv/dofmap.hpp"
#include "divdiv/mesh.hpp"
#include "divdiv/poly.hpp"
#include "divdiv/ref_basis.hpp"

namespace divdiv {

// Vector-valued quartic local basis of the H1-conforming space preceding the
// stress space in the discrete complex. DOFs: vertex values and gradients
// (18), edge mean values (6), edge divergence moments against {mu_a, mu_b}
// (6).
struct VhLocalBasis {
  std::array<std::array<Poly, 2>, 30> funcs;
};

VhLocalBasis build_vh_basis(const Mesh& mesh, int t);

// Global numbering: 6 DOFs per vertex then 4 per edge; no signs needed.
struct VhMap {
  int n_dofs = 0;
  std::vector<std::array<int, 30>> index;
};
VhMap build_vh_map(const Mesh& mesh);

// sigma = sym curl v for a vector field v: with row curls
// [[-d_y v1, d_x v1], [-d_y v2, d_x v2]] symmetrized.
SymTensorPoly sym_curl(const std::array<Poly, 2>& v);

// Applies the stress DOF catalog to sym curl of a conforming field given by
// global coefficients; checks single-valuedness across elements and returns
// the stress coefficient vector. max_mismatch receives the worst
// disagreement between the two element-side candidates.
Eigen::VectorXd sym_curl_to_sigma(const Mesh& mesh, const VhMap& vmap,
                                  const DofMap& smap,
                                  const Eigen::VectorXd& v_coeffs,
                                  double* max_mismatch = nullptr);

// Rank of B by singular values above tol * s_max (dense path).
int matrix_rank(const SpMat& B, double rel_threshold = 1e-8);

}  // namespace divdiv
