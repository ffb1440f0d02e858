#pragma once

#include <array>
#include <vector>

#include "divdiv/mesh.hpp"

namespace divdiv {

// Global numbering with orientation signs. Stress: 3 DOFs per vertex then 7
// per edge (global index 3*v+c, 3#V + 7*e + c). Displacement: 3 per triangle.
struct DofMap {
  int n_dofs = 0;
  int dofs_per_cell = 0;
  std::vector<std::array<int, 30>> index;  // first dofs_per_cell entries used
  std::vector<std::array<int, 30>> sign;

  int operator()(int cell, int local) const { return index[cell][local]; }
  int sgn(int cell, int local) const { return sign[cell][local]; }
};

DofMap build_sigma_map(const Mesh& mesh);
DofMap build_u_map(const Mesh& mesh);

}  // namespace divdiv
