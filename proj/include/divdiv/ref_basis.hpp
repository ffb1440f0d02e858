#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "divdiv/mesh.hpp"
#include "divdiv/poly.hpp"

namespace divdiv {

// One stress DOF of a triangle. Vertex DOFs are the three tensor components
// at a corner; edge DOFs are moments of sigma*n against {mu_a, mu_b} x {ex,
// ey} and of div(sigma).n against {mu_a, mu_b, mu_a*mu_b}, where mu are the
// barycentric coordinates of the edge ordered by global endpoint index and n
// is the outward unit normal.
struct DofDescriptor {
  enum class Kind { vertex_value, edge_sigma_n, edge_div_n };
  Kind kind;
  int entity;  // local vertex or local edge index
  int comp;    // component / moment slot within the entity group
};

std::array<DofDescriptor, 30> local_dof_layout();

// Applies the 30 local DOF functionals of triangle t to a tensor field.
Eigen::Matrix<double, 30, 1> apply_dofs(const Mesh& mesh, int t,
                                        const SymTensorPoly& tau);

struct LocalBasis {
  std::array<SymTensorPoly, 30> funcs;  // funcs[i] dual to functional i
  std::array<DofDescriptor, 30> dofs;
};

// Reference-element objects of the explicit construction.
std::array<SymTensorPoly, 9> hz_bubbles();
Eigen::Matrix<double, 9, 9> bubble_coefficient_matrix();
std::array<SymTensorPoly, 9> edge_dual_reference();     // C-combinations
std::array<SymTensorPoly, 9> edge_dual_closed_forms();  // expanded forms

// tau(x) = (1/J) B tauhat(xhat) B^T under x = B xhat + x1.
SymTensorPoly piola(const SymTensorPoly& ref, const Eigen::Matrix2d& B,
                    const Eigen::Vector2d& x1);

// The nine Piola-mapped bubble combinations on a physical triangle; their
// normal trace sigma*n vanishes on all edges.
std::array<SymTensorPoly, 9> edge_dual_basis(const Mesh& mesh, int t);

// Vertex and edge-flux tensor functions (9 + 12) on a physical triangle.
std::array<SymTensorPoly, 21> hz_outer_basis(const Mesh& mesh, int t);

// Full local basis: bubble duals, outer functions with their edge
// div-moments removed, then dualized against the DOF catalog so the Gram
// matrix is the identity.
LocalBasis correct_basis(const Mesh& mesh, int t);

// Independent construction: applies the DOF catalog to 30 monomial tensor
// fields and inverts. Throws if the generalized Vandermonde is singular.
LocalBasis vandermonde_oracle(const Mesh& mesh, int t);

// Per-element bases for a whole mesh (parallel, deterministic).
std::vector<LocalBasis> build_all_bases(const Mesh& mesh);

// Max deviation of the DOF Gram matrix from the identity.
double gram_deviation(const Mesh& mesh, int t, const LocalBasis& basis);

// Barycentric coordinates of a physical triangle as polynomials in x, y.
std::array<Poly, 3> barycentric(const Mesh& mesh, int t);

}  // namespace divdiv
