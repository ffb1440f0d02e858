#include "divdiv/dofmap.hpp"

namespace divdiv {

DofMap build_sigma_map(const Mesh& mesh) {
  DofMap map;
  int nv = static_cast<int>(mesh.vertices.size());
  map.n_dofs = 3 * nv + 7 * static_cast<int>(mesh.edges.size());
  map.dofs_per_cell = 30;
  map.index.resize(mesh.tris.size());
  map.sign.resize(mesh.tris.size());
  for (const auto& tri : mesh.tris) {
    auto& idx = map.index[tri.id];
    auto& sgn = map.sign[tri.id];
    int k = 0;
    for (int v = 0; v < 3; ++v)
      for (int c = 0; c < 3; ++c) {
        idx[k] = 3 * tri.v[v] + c;
        sgn[k++] = 1;
      }
    for (int e = 0; e < 3; ++e)
      for (int c = 0; c < 7; ++c) {
        idx[k] = 3 * nv + 7 * tri.e[e] + c;
        sgn[k++] = tri.s[e];
      }
  }
  return map;
}

DofMap build_u_map(const Mesh& mesh) {
  DofMap map;
  map.n_dofs = 3 * static_cast<int>(mesh.tris.size());
  map.dofs_per_cell = 3;
  map.index.resize(mesh.tris.size());
  map.sign.resize(mesh.tris.size());
  for (const auto& tri : mesh.tris)
    for (int c = 0; c < 3; ++c) {
      map.index[tri.id][c] = 3 * tri.id + c;
      map.sign[tri.id][c] = 1;
    }
  return map;
}

}  // namespace divdiv
