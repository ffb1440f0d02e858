#include "divdiv/complex_check.hpp"

#include <stdexcept>

#include "divdiv/quadrature.hpp"

namespace divdiv {
namespace {

// Local Vh DOF values for a vector polynomial on triangle t. Order: per
// vertex (v1, v2, dx v1, dy v1, dx v2, dy v2), then per edge (mean v1, mean
// v2, (div v, mu_a), (div v, mu_b)).
Eigen::Matrix<double, 30, 1> apply_vh_dofs(const Mesh& mesh, int t,
                                           const std::array<Poly, 2>& v) {
  static const QuadRule rule = edge_rule(8);
  const Tri& tri = mesh.tris[t];
  Eigen::Matrix<double, 30, 1> vals;
  vals.setZero();
  std::array<Poly, 2> vx = {v[0].dx(), v[1].dx()};
  std::array<Poly, 2> vy = {v[0].dy(), v[1].dy()};
  Poly div = vx[0] + vy[1];
  for (int a = 0; a < 3; ++a) {
    Eigen::Vector2d p = mesh.point(tri.v[a]);
    vals[6 * a + 0] = v[0].eval(p.x(), p.y());
    vals[6 * a + 1] = v[1].eval(p.x(), p.y());
    vals[6 * a + 2] = vx[0].eval(p.x(), p.y());
    vals[6 * a + 3] = vy[0].eval(p.x(), p.y());
    vals[6 * a + 4] = vx[1].eval(p.x(), p.y());
    vals[6 * a + 5] = vy[1].eval(p.x(), p.y());
  }
  for (int e = 0; e < 3; ++e) {
    const Edge& edge = mesh.edges[tri.e[e]];
    Eigen::Vector2d pa = mesh.point(edge.a), pb = mesh.point(edge.b);
    int base = 18 + 4 * e;
    for (int q = 0; q < rule.points.rows(); ++q) {
      double s = rule.points(q, 0);
      double w = rule.weights[q];  // mean values: weight 1/|e| * ds cancels
      Eigen::Vector2d p = pa + s * (pb - pa);
      vals[base + 0] += w * v[0].eval(p.x(), p.y());
      vals[base + 1] += w * v[1].eval(p.x(), p.y());
      double dv = div.eval(p.x(), p.y()) * edge.length;
      vals[base + 2] += w * dv * (1.0 - s);
      vals[base + 3] += w * dv * s;
    }
  }
  return vals;
}

}  // namespace

VhLocalBasis build_vh_basis(const Mesh& mesh, int t) {
  const Tri& tri = mesh.tris[t];
  Eigen::Vector2d c = tri.x1 + tri.B * Eigen::Vector2d(1.0 / 3, 1.0 / 3);
  double h = mesh.diameter(t);
  Poly xs = Poly::linear(-c.x() / h, 1.0 / h, 0.0);
  Poly ys = Poly::linear(-c.y() / h, 0.0, 1.0 / h);
  std::array<std::array<Poly, 2>, 30> cand;
  int k = 0;
  for (int d = 0; d <= 4; ++d)
    for (int i = d; i >= 0; --i) {
      Poly m = Poly::constant(1.0);
      for (int p = 0; p < i; ++p) m = m * xs;
      for (int p = 0; p < d - i; ++p) m = m * ys;
      cand[k++] = {m, Poly()};
      cand[k++] = {Poly(), m};
    }
  Eigen::Matrix<double, 30, 30> V;
  for (int j = 0; j < 30; ++j) V.col(j) = apply_vh_dofs(mesh, t, cand[j]);
  Eigen::FullPivLU<Eigen::Matrix<double, 30, 30>> lu(V);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw std::runtime_error("build_vh_basis: singular DOF matrix");
  Eigen::Matrix<double, 30, 30> X =
      lu.solve(Eigen::Matrix<double, 30, 30>::Identity());
  VhLocalBasis basis;
  for (int j = 0; j < 30; ++j) {
    std::array<Poly, 2> acc;
    for (int kk = 0; kk < 30; ++kk) {
      acc[0] += cand[kk][0] * X(kk, j);
      acc[1] += cand[kk][1] * X(kk, j);
    }
    basis.funcs[j] = acc;
  }
  return basis;
}

VhMap build_vh_map(const Mesh& mesh) {
  VhMap map;
  int nv = static_cast<int>(mesh.vertices.size());
  map.n_dofs = 6 * nv + 4 * static_cast<int>(mesh.edges.size());
  map.index.resize(mesh.tris.size());
  for (const auto& tri : mesh.tris) {
    auto& idx = map.index[tri.id];
    int k = 0;
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 6; ++c) idx[k++] = 6 * tri.v[a] + c;
    for (int e = 0; e < 3; ++e)
      for (int c = 0; c < 4; ++c) idx[k++] = 6 * nv + 4 * tri.e[e] + c;
  }
  return map;
}

SymTensorPoly sym_curl(const std::array<Poly, 2>& v) {
  Poly c11 = v[0].dy() * (-1.0);
  Poly c12 = v[0].dx();
  Poly c21 = v[1].dy() * (-1.0);
  Poly c22 = v[1].dx();
  return {c11, 0.5 * (c12 + c21), c22};
}

Eigen::VectorXd sym_curl_to_sigma(const Mesh& mesh, const VhMap& vmap,
                                  const DofMap& smap,
                                  const Eigen::VectorXd& v_coeffs,
                                  double* max_mismatch) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(smap.n_dofs);
  Eigen::VectorXd seen = Eigen::VectorXd::Zero(smap.n_dofs);
  double mismatch = 0.0;
  for (const auto& tri : mesh.tris) {
    int t = tri.id;
    VhLocalBasis vh = build_vh_basis(mesh, t);
    std::array<Poly, 2> v;
    for (int j = 0; j < 30; ++j) {
      double c = v_coeffs[vmap.index[t][j]];
      if (c == 0.0) continue;
      v[0] += vh.funcs[j][0] * c;
      v[1] += vh.funcs[j][1] * c;
    }
    SymTensorPoly sig = sym_curl(v);
    Eigen::Matrix<double, 30, 1> local = apply_dofs(mesh, t, sig);
    for (int j = 0; j < 30; ++j) {
      int g = smap(t, j);
      double val = smap.sgn(t, j) * local[j];
      if (seen[g] != 0.0)
        mismatch = std::max(mismatch, std::abs(out[g] - val) /
                                          std::max(1.0, std::abs(out[g])));
      else
        out[g] = val;
      seen[g] = 1.0;
    }
  }
  if (max_mismatch) *max_mismatch = mismatch;
  return out;
}

int matrix_rank(const SpMat& B, double rel_threshold) {
  Eigen::MatrixXd dense = Eigen::MatrixXd(B);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rel_threshold * smax) ++rank;
  return rank;
}

}  // namespace divdiv
