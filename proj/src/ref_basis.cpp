#include "divdiv/ref_basis.hpp"

#include <stdexcept>

#include "divdiv/quadrature.hpp"
#include "divdiv/util.hpp"

namespace divdiv {
namespace {

const QuadRule& dof_edge_rule() {
  static const QuadRule rule = edge_rule(8);
  return rule;
}

// Reference barycentric coordinates.
std::array<Poly, 3> ref_lambda() {
  return {Poly::linear(1.0, -1.0, -1.0), Poly::linear(0.0, 1.0, 0.0),
          Poly::linear(0.0, 0.0, 1.0)};
}

// Physical barycentric coordinates of triangle t.
std::array<Poly, 3> phys_lambda(const Tri& tri) {
  Eigen::Matrix2d Ainv = tri.B.inverse();
  Eigen::Vector2d b = -Ainv * tri.x1;
  auto lhat = ref_lambda();
  return {lhat[0].compose_affine(Ainv, b), lhat[1].compose_affine(Ainv, b),
          lhat[2].compose_affine(Ainv, b)};
}

Eigen::Matrix2d slot_matrix(int k) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  if (k == 0) m(0, 0) = 1.0;
  if (k == 1) m(0, 1) = m(1, 0) = 1.0;
  if (k == 2) m(1, 1) = 1.0;
  return m;
}

}  // namespace

std::array<DofDescriptor, 30> local_dof_layout() {
  std::array<DofDescriptor, 30> layout;
  int k = 0;
  for (int v = 0; v < 3; ++v)
    for (int c = 0; c < 3; ++c)
      layout[k++] = {DofDescriptor::Kind::vertex_value, v, c};
  for (int e = 0; e < 3; ++e) {
    for (int c = 0; c < 4; ++c)
      layout[k++] = {DofDescriptor::Kind::edge_sigma_n, e, c};
    for (int c = 0; c < 3; ++c)
      layout[k++] = {DofDescriptor::Kind::edge_div_n, e, c};
  }
  return layout;
}

Eigen::Matrix<double, 30, 1> apply_dofs(const Mesh& mesh, int t,
                                        const SymTensorPoly& tau) {
  const Tri& tri = mesh.tris[t];
  Eigen::Matrix<double, 30, 1> vals;
  vals.setZero();
  for (int v = 0; v < 3; ++v) {
    Eigen::Vector2d p = mesh.point(tri.v[v]);
    Eigen::Matrix2d m = tau.eval(p.x(), p.y());
    vals[3 * v + 0] = m(0, 0);
    vals[3 * v + 1] = m(0, 1);
    vals[3 * v + 2] = m(1, 1);
  }
  auto dv = tau.div();
  const QuadRule& rule = dof_edge_rule();
  for (int e = 0; e < 3; ++e) {
    const Edge& edge = mesh.edges[tri.e[e]];
    Eigen::Vector2d pa = mesh.point(edge.a), pb = mesh.point(edge.b);
    Eigen::Vector2d n = tri.s[e] * edge.n;
    int base = 9 + 7 * e;
    for (int q = 0; q < rule.points.rows(); ++q) {
      double s = rule.points(q, 0);
      double w = rule.weights[q] * edge.length;
      Eigen::Vector2d p = pa + s * (pb - pa);
      double mua = 1.0 - s, mub = s;
      Eigen::Vector2d sn = tau.eval(p.x(), p.y()) * n;
      vals[base + 0] += w * sn.x() * mua;
      vals[base + 1] += w * sn.y() * mua;
      vals[base + 2] += w * sn.x() * mub;
      vals[base + 3] += w * sn.y() * mub;
      double dn = dv[0].eval(p.x(), p.y()) * n.x() +
                  dv[1].eval(p.x(), p.y()) * n.y();
      vals[base + 4] += w * dn * mua;
      vals[base + 5] += w * dn * mub;
      vals[base + 6] += w * dn * mua * mub;
    }
  }
  return vals;
}

std::array<SymTensorPoly, 9> hz_bubbles() {
  auto l = ref_lambda();
  const double r2 = std::sqrt(0.5);
  Eigen::Vector2d u1(-r2, r2), u2(0.0, -1.0), u3(1.0, 0.0);
  Eigen::Matrix2d U1 = u1 * u1.transpose(), U2 = u2 * u2.transpose(),
                  U3 = u3 * u3.transpose();
  auto cubic = [](const Poly& a, const Poly& b) {
    return 4.5 * (a * b * (3.0 * a - Poly::constant(1.0)));
  };
  Poly vol = 27.0 * (l[0] * l[1] * l[2]);
  return {SymTensorPoly::from_matrix(cubic(l[1], l[2]), U1),
          SymTensorPoly::from_matrix(cubic(l[2], l[1]), U1),
          SymTensorPoly::from_matrix(cubic(l[2], l[0]), U2),
          SymTensorPoly::from_matrix(cubic(l[0], l[2]), U2),
          SymTensorPoly::from_matrix(cubic(l[0], l[1]), U3),
          SymTensorPoly::from_matrix(cubic(l[1], l[0]), U3),
          SymTensorPoly::from_matrix(vol, slot_matrix(0)),
          SymTensorPoly::from_matrix(vol, slot_matrix(1)),
          SymTensorPoly::from_matrix(vol, slot_matrix(2))};
}

Eigen::Matrix<double, 9, 9> bubble_coefficient_matrix() {
  Eigen::Matrix<double, 9, 9> C;
  C << 0, 0, 4.0 / 9, 2.0 / 9, 2.0 / 3, 4.0 / 3, 1.0 / 3, -1.0 / 3, 1.0 / 9,
      0, 0, 4.0 / 3, 2.0 / 3, 2.0 / 9, 4.0 / 9, 1.0 / 9, -1.0 / 3, 1.0 / 3,
      0, 0, -40.0 / 9, -20.0 / 9, -20.0 / 9, -40.0 / 9, -10.0 / 9, 20.0 / 9,
      -10.0 / 9,
      -4.0 / 3, -8.0 / 3, 0, 0, -4.0 / 9, -2.0 / 9, 2.0 / 9, 0, -1.0 / 3,
      -4.0 / 9, -8.0 / 9, 0, 0, -4.0 / 3, -2.0 / 3, 2.0 / 9, -2.0 / 9,
      -1.0 / 9,
      40.0 / 9, 80.0 / 9, 0, 0, 40.0 / 9, 20.0 / 9, -20.0 / 9, 10.0 / 9,
      10.0 / 9,
      -8.0 / 9, -4.0 / 9, -2.0 / 3, -4.0 / 3, 0, 0, -1.0 / 9, -2.0 / 9,
      2.0 / 9,
      -8.0 / 3, -4.0 / 3, -2.0 / 9, -4.0 / 9, 0, 0, -1.0 / 3, 0, 2.0 / 9,
      80.0 / 9, 40.0 / 9, 20.0 / 9, 40.0 / 9, 0, 0, 10.0 / 9, 10.0 / 9,
      -20.0 / 9;
  return C;
}

std::array<SymTensorPoly, 9> edge_dual_reference() {
  auto bub = hz_bubbles();
  auto C = bubble_coefficient_matrix();
  std::array<SymTensorPoly, 9> out;
  for (int i = 0; i < 9; ++i) {
    SymTensorPoly acc;
    for (int j = 0; j < 9; ++j) acc = acc + bub[j] * C(i, j);
    out[i] = acc;
  }
  return out;
}

std::array<SymTensorPoly, 9> edge_dual_closed_forms() {
  auto l = ref_lambda();
  const Poly &l1 = l[0], &l2 = l[1], &l3 = l[2];
  Poly l2s = l2 * l2, l3s = l3 * l3;
  Poly v = l1 * l2 * l3;
  auto sym = [](const Poly& a, const Poly& b, const Poly& c) {
    return SymTensorPoly{a, b, c};
  };
  std::array<SymTensorPoly, 9> cf;
  cf[0] = sym(9.0 * (l1 * l2s), -9.0 * v, 3.0 * (l1 * l3s));
  cf[1] = sym(3.0 * (l1 * l2s), -9.0 * v, 9.0 * (l1 * l3s));
  cf[2] = sym(-30.0 * (l1 * l2s), 60.0 * v, -30.0 * (l1 * l3s));
  cf[3] = sym(-3.0 * (l2 * (l2s + 8.0 * (l2 * l3) - l2 + 10.0 * l3s -
                          7.0 * l3 + l1)),
              9.0 * (l2 * l3 * (l3 - l1)), -9.0 * (l2 * l3s));
  cf[4] = sym(-3.0 * (l2 * (3.0 * l2s + 12.0 * (l2 * l3) - 3.0 * l2 +
                            10.0 * l3s - 9.0 * l3 + 3.0 * l1)),
              3.0 * (l2 * l3 * (l3 - 3.0 * l1)), -3.0 * (l2 * l3s));
  cf[5] = sym(30.0 * (l2 * (l2s + 6.0 * (l2 * l3) - l2 + 6.0 * l3s -
                            5.0 * l3 + l1)),
              30.0 * (l2 * l3 * (2.0 * l1 - l3)), 30.0 * (l2 * l3s));
  cf[6] = sym(-3.0 * (l2s * l3), 3.0 * (l2 * l3 * (l2 - 3.0 * l1)),
              -3.0 * (l3 * (10.0 * l2s + 12.0 * (l2 * l3) - 9.0 * l2 +
                            3.0 * l3s - 3.0 * l3 + 3.0 * l1)));
  cf[7] = sym(-9.0 * (l2s * l3), 9.0 * (l2 * l3 * (l2 - l1)),
              -3.0 * (l3 * (10.0 * l2s + 8.0 * (l2 * l3) - 7.0 * l2 + l3s -
                            l3 + l1)));
  cf[8] = sym(30.0 * (l2s * l3), 30.0 * (l2 * l3 * (2.0 * l1 - l2)),
              30.0 * (l3 * (6.0 * l2s + 6.0 * (l2 * l3) - 5.0 * l2 + l3s -
                            l3 + l1)));
  return cf;
}

SymTensorPoly piola(const SymTensorPoly& ref, const Eigen::Matrix2d& B,
                    const Eigen::Vector2d& x1) {
  double J = B.determinant();
  Eigen::Matrix2d Ainv = B.inverse();
  Eigen::Vector2d b = -Ainv * x1;
  Poly c11 = ref.s11.compose_affine(Ainv, b);
  Poly c12 = ref.s12.compose_affine(Ainv, b);
  Poly c22 = ref.s22.compose_affine(Ainv, b);
  SymTensorPoly out;
  out.s11 = (B(0, 0) * B(0, 0) / J) * c11 +
            (2.0 * B(0, 0) * B(0, 1) / J) * c12 +
            (B(0, 1) * B(0, 1) / J) * c22;
  out.s12 = (B(0, 0) * B(1, 0) / J) * c11 +
            ((B(0, 0) * B(1, 1) + B(0, 1) * B(1, 0)) / J) * c12 +
            (B(0, 1) * B(1, 1) / J) * c22;
  out.s22 = (B(1, 0) * B(1, 0) / J) * c11 +
            (2.0 * B(1, 0) * B(1, 1) / J) * c12 +
            (B(1, 1) * B(1, 1) / J) * c22;
  return out;
}

std::array<SymTensorPoly, 9> edge_dual_basis(const Mesh& mesh, int t) {
  auto ref = edge_dual_reference();
  std::array<SymTensorPoly, 9> out;
  for (int i = 0; i < 9; ++i)
    out[i] = piola(ref[i], mesh.tris[t].B, mesh.tris[t].x1);
  return out;
}

std::array<SymTensorPoly, 21> hz_outer_basis(const Mesh& mesh, int t) {
  const Tri& tri = mesh.tris[t];
  auto l = phys_lambda(tri);
  std::array<SymTensorPoly, 21> out;
  int k = 0;
  for (int v = 0; v < 3; ++v) {
    Poly phi = 0.5 * (l[v] * (3.0 * l[v] - Poly::constant(1.0)) *
                      (3.0 * l[v] - Poly::constant(2.0)));
    for (int c = 0; c < 3; ++c)
      out[k++] = SymTensorPoly::from_matrix(phi, slot_matrix(c));
  }
  for (int e = 0; e < 3; ++e) {
    const Edge& edge = mesh.edges[tri.e[e]];
    Eigen::Vector2d n = tri.s[e] * edge.n;
    Eigen::Vector2d tv = edge.t;
    Eigen::Matrix2d N = n * n.transpose();
    Eigen::Matrix2d S =
        0.5 * (tv * n.transpose() + n * tv.transpose());
    const Poly& la = l[(e + 1) % 3];
    const Poly& lb = l[(e + 2) % 3];
    Poly phi1 = 4.5 * (la * lb * (3.0 * la - Poly::constant(1.0)));
    Poly phi2 = 4.5 * (lb * la * (3.0 * lb - Poly::constant(1.0)));
    out[k++] = SymTensorPoly::from_matrix(phi1, N);
    out[k++] = SymTensorPoly::from_matrix(phi1, S);
    out[k++] = SymTensorPoly::from_matrix(phi2, N);
    out[k++] = SymTensorPoly::from_matrix(phi2, S);
  }
  return out;
}

LocalBasis correct_basis(const Mesh& mesh, int t) {
  auto tau9 = edge_dual_basis(mesh, t);
  auto outer = hz_outer_basis(mesh, t);

  // Edge div-moment rows of the catalog are 9+7e+{4,5,6}.
  auto div_rows = [](const Eigen::Matrix<double, 30, 1>& v) {
    Eigen::Matrix<double, 9, 1> d;
    for (int e = 0; e < 3; ++e)
      for (int c = 0; c < 3; ++c) d[3 * e + c] = v[9 + 7 * e + 4 + c];
    return d;
  };

  Eigen::Matrix<double, 9, 9> D;
  for (int j = 0; j < 9; ++j)
    D.col(j) = div_rows(apply_dofs(mesh, t, tau9[j]));
  Eigen::PartialPivLU<Eigen::Matrix<double, 9, 9>> Dlu(D);

  std::array<SymTensorPoly, 30> cand;
  for (int j = 0; j < 9; ++j) cand[j] = tau9[j];
  for (int k = 0; k < 21; ++k) {
    Eigen::Matrix<double, 9, 1> beta =
        Dlu.solve(div_rows(apply_dofs(mesh, t, outer[k])));
    SymTensorPoly corrected = outer[k];
    for (int j = 0; j < 9; ++j) corrected = corrected - tau9[j] * beta[j];
    cand[9 + k] = corrected;
  }

  Eigen::Matrix<double, 30, 30> G;
  for (int j = 0; j < 30; ++j) G.col(j) = apply_dofs(mesh, t, cand[j]);
  Eigen::Matrix<double, 30, 30> X =
      G.partialPivLu().solve(Eigen::Matrix<double, 30, 30>::Identity());

  LocalBasis basis;
  basis.dofs = local_dof_layout();
  for (int j = 0; j < 30; ++j) {
    SymTensorPoly acc;
    for (int k = 0; k < 30; ++k) acc = acc + cand[k] * X(k, j);
    basis.funcs[j] = acc;
  }
  return basis;
}

LocalBasis vandermonde_oracle(const Mesh& mesh, int t) {
  const Tri& tri = mesh.tris[t];
  Eigen::Vector2d c = tri.x1 + tri.B * Eigen::Vector2d(1.0 / 3, 1.0 / 3);
  double h = mesh.diameter(t);
  Poly xs = Poly::linear(-c.x() / h, 1.0 / h, 0.0);
  Poly ys = Poly::linear(-c.y() / h, 0.0, 1.0 / h);
  std::array<SymTensorPoly, 30> cand;
  int k = 0;
  for (int d = 0; d <= 3; ++d)
    for (int i = d; i >= 0; --i) {
      Poly mono = Poly::constant(1.0);
      for (int p = 0; p < i; ++p) mono = mono * xs;
      for (int p = 0; p < d - i; ++p) mono = mono * ys;
      for (int slot = 0; slot < 3; ++slot)
        cand[k++] = SymTensorPoly::from_matrix(mono, slot_matrix(slot));
    }
  Eigen::Matrix<double, 30, 30> V;
  for (int j = 0; j < 30; ++j) V.col(j) = apply_dofs(mesh, t, cand[j]);
  Eigen::FullPivLU<Eigen::Matrix<double, 30, 30>> lu(V);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw std::runtime_error("vandermonde_oracle: singular DOF matrix");
  Eigen::Matrix<double, 30, 30> X =
      lu.solve(Eigen::Matrix<double, 30, 30>::Identity());
  LocalBasis basis;
  basis.dofs = local_dof_layout();
  for (int j = 0; j < 30; ++j) {
    SymTensorPoly acc;
    for (int kk = 0; kk < 30; ++kk) acc = acc + cand[kk] * X(kk, j);
    basis.funcs[j] = acc;
  }
  return basis;
}

std::vector<LocalBasis> build_all_bases(const Mesh& mesh) {
  std::vector<LocalBasis> bases(mesh.tris.size());
  parallel_chunks(static_cast<int>(mesh.tris.size()), 32,
                  [&](int begin, int end) {
                    for (int t = begin; t < end; ++t)
                      bases[t] = correct_basis(mesh, t);
                  });
  return bases;
}

std::array<Poly, 3> barycentric(const Mesh& mesh, int t) {
  return phys_lambda(mesh.tris[t]);
}

double gram_deviation(const Mesh& mesh, int t, const LocalBasis& basis) {
  double dev = 0.0;
  for (int j = 0; j < 30; ++j) {
    Eigen::Matrix<double, 30, 1> col = apply_dofs(mesh, t, basis.funcs[j]);
    col[j] -= 1.0;
    dev = std::max(dev, col.cwiseAbs().maxCoeff());
  }
  return dev;
}

}  // namespace divdiv
