#pragma once

#include <Eigen/SparseCore>
#include <iosfwd>
#include <vector>

#include "divdiv/dofmap.hpp"
#include "divdiv/mesh.hpp"
#include "divdiv/problems.hpp"
#include "divdiv/ref_basis.hpp"

namespace divdiv {

using SpMat = Eigen::SparseMatrix<double>;

// Saddle-point system [[M, B^T],[B, 0]] [sigma; u] = [0; load].
struct SparseSystem {
  SpMat M;               // stress mass, N_sigma x N_sigma
  SpMat B;               // divdiv coupling, N_u x N_sigma
  SpMat Mu;              // displacement mass, block diagonal 3x3
  Eigen::VectorXd load;  // N_u
  int n_sigma = 0;
  int n_u = 0;
};

SpMat assemble_mass(const Mesh& mesh, const std::vector<LocalBasis>& bases,
                    const DofMap& smap, int quad_degree = 8);

SpMat assemble_divdiv(const Mesh& mesh, const std::vector<LocalBasis>& bases,
                      const DofMap& smap, const DofMap& umap);

SpMat assemble_u_mass(const Mesh& mesh, const DofMap& umap);

// load[r] = -(f, v_r); triangles touching the L-shape corner use an
// elevated rule because f loses smoothness there.
Eigen::VectorXd assemble_load(const Mesh& mesh, const Manufactured& problem,
                              const DofMap& umap, int quad_degree = 14);

SparseSystem assemble_system(const Mesh& mesh,
                             const std::vector<LocalBasis>& bases,
                             const DofMap& smap, const DofMap& umap,
                             const Manufactured& problem,
                             int quad_degree = 14);

// Field reconstruction from global coefficient vectors.
SymTensorPoly local_sigma(const std::vector<LocalBasis>& bases,
                          const DofMap& smap, int t,
                          const Eigen::VectorXd& coeffs);
Poly local_u(const Mesh& mesh, const DofMap& umap, int t,
             const Eigen::VectorXd& coeffs);

void write_matrix_market(const SpMat& m, std::ostream& out);

}  // namespace divdiv
