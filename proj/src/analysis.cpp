#include "divdiv/analysis.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "divdiv/quadrature.hpp"

namespace divdiv {
namespace {

bool touches_origin(const Mesh& mesh, int t) {
  for (int v : mesh.tris[t].v) {
    const auto& p = mesh.vertices[v];
    if (std::abs(p.x) < 1e-14 && std::abs(p.y) < 1e-14) return true;
  }
  return false;
}

// Value, gradient, and Hessian polynomials of one piecewise polynomial.
struct PolyJet {
  Poly p, px, py, pxx, pxy, pyy;
  explicit PolyJet(const Poly& q)
      : p(q), px(q.dx()), py(q.dy()), pxx(px.dx()), pxy(px.dy()),
        pyy(py.dy()) {}
  PolyJet() = default;
};

PiecewiseField field_from_polys(std::shared_ptr<std::vector<PolyJet>> jets) {
  PiecewiseField f;
  f.value = [jets](int t, double x, double y) {
    return (*jets)[t].p.eval(x, y);
  };
  f.grad = [jets](int t, double x, double y) {
    return Eigen::Vector2d((*jets)[t].px.eval(x, y),
                           (*jets)[t].py.eval(x, y));
  };
  f.hess = [jets](int t, double x, double y) {
    Eigen::Matrix2d h;
    h(0, 0) = (*jets)[t].pxx.eval(x, y);
    h(0, 1) = h(1, 0) = (*jets)[t].pxy.eval(x, y);
    h(1, 1) = (*jets)[t].pyy.eval(x, y);
    return h;
  };
  return f;
}

}  // namespace

Eigen::VectorXd project_Qh(const Mesh& mesh, const DofMap& umap,
                           const std::function<double(double, double)>& u,
                           int quad_degree) {
  const QuadRule rule = triangle_rule(quad_degree);
  const QuadRule corner = triangle_rule(20);
  bool lshape = mesh.domain == "lshape";
  Eigen::VectorXd out(umap.n_dofs);
  for (const auto& tri : mesh.tris) {
    const QuadRule& r =
        (lshape && touches_origin(mesh, tri.id)) ? corner : rule;
    auto lambda = barycentric(mesh, tri.id);
    double area = 0.5 * tri.J;
    Eigen::Matrix3d A;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = area * (i == j ? 2.0 : 1.0) / 12.0;
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int q = 0; q < r.points.rows(); ++q) {
      Eigen::Vector2d p = mesh.map_point(tri.id, r.points(q, 0), r.points(q, 1));
      double w = r.weights[q] * tri.J;
      double uv = u(p.x(), p.y());
      for (int c = 0; c < 3; ++c)
        rhs[c] += w * uv * lambda[c].eval(p.x(), p.y());
    }
    Eigen::Vector3d coeff = A.ldlt().solve(rhs);
    for (int c = 0; c < 3; ++c) out[umap(tri.id, c)] = coeff[c];
  }
  return out;
}

double seminorm_2h(const Mesh& mesh, const PiecewiseField& field,
                   int volume_quad_degree, int edge_quad_degree) {
  double total = 0.0;
  if (field.hess) {
    const QuadRule base = triangle_rule(volume_quad_degree);
    const QuadRule corner = triangle_rule(20);
    bool lshape = mesh.domain == "lshape";
    for (const auto& tri : mesh.tris) {
      const QuadRule& rule =
          (lshape && touches_origin(mesh, tri.id)) ? corner : base;
      for (int q = 0; q < rule.points.rows(); ++q) {
        Eigen::Vector2d p =
            mesh.map_point(tri.id, rule.points(q, 0), rule.points(q, 1));
        double w = rule.weights[q] * tri.J;
        Eigen::Matrix2d h = field.hess(tri.id, p.x(), p.y());
        total += w * (h(0, 0) * h(0, 0) + 2.0 * h(0, 1) * h(0, 1) +
                      h(1, 1) * h(1, 1));
      }
    }
  }
  const QuadRule erule = edge_rule(edge_quad_degree);
  for (const auto& e : mesh.edges) {
    Eigen::Vector2d pa = mesh.point(e.a), pb = mesh.point(e.b);
    double jump_v = 0.0, jump_g = 0.0;
    for (int q = 0; q < erule.points.rows(); ++q) {
      double s = erule.points(q, 0);
      double w = erule.weights[q] * e.length;
      Eigen::Vector2d p = pa + s * (pb - pa);
      double v = field.value(e.tri[0], p.x(), p.y());
      Eigen::Vector2d g = field.grad(e.tri[0], p.x(), p.y());
      if (e.ntri == 2) {
        v -= field.value(e.tri[1], p.x(), p.y());
        g -= field.grad(e.tri[1], p.x(), p.y());
      }
      jump_v += w * v * v;
      jump_g += w * g.squaredNorm();
    }
    total += jump_v / (e.length * e.length * e.length) + jump_g / e.length;
  }
  return std::sqrt(total);
}

std::vector<Poly> postprocess(const Mesh& mesh,
                              const std::vector<LocalBasis>& bases,
                              const DofMap& smap, const DofMap& umap,
                              const Eigen::VectorXd& sigma,
                              const Eigen::VectorXd& u) {
  const QuadRule rule = triangle_rule(10);
  std::vector<Poly> out(mesh.tris.size());
  for (const auto& tri : mesh.tris) {
    int t = tri.id;
    Eigen::Vector2d c = tri.x1 + tri.B * Eigen::Vector2d(1.0 / 3, 1.0 / 3);
    double hK = mesh.diameter(t);
    Poly xs = Poly::linear(-c.x() / hK, 1.0 / hK, 0.0);
    Poly ys = Poly::linear(-c.y() / hK, 0.0, 1.0 / hK);
    // P5 monomials centered/scaled for conditioning; first 3 span P1.
    std::array<Poly, 21> mono;
    std::array<PolyJet, 21> mj;
    int k = 0;
    for (int d = 0; d <= 5; ++d)
      for (int i = d; i >= 0; --i) {
        Poly m = Poly::constant(1.0);
        for (int p = 0; p < i; ++p) m = m * xs;
        for (int p = 0; p < d - i; ++p) m = m * ys;
        mj[k] = PolyJet(m);
        mono[k++] = m;
      }
    SymTensorPoly sh = local_sigma(bases, smap, t, sigma);
    Poly uh = local_u(mesh, umap, t, u);
    auto lambda = barycentric(mesh, t);

    Eigen::Matrix<double, 21, 21> A = Eigen::Matrix<double, 21, 21>::Zero();
    Eigen::Matrix<double, 21, 1> rhs = Eigen::Matrix<double, 21, 1>::Zero();
    for (int q = 0; q < rule.points.rows(); ++q) {
      Eigen::Vector2d p = mesh.map_point(t, rule.points(q, 0), rule.points(q, 1));
      double w = rule.weights[q] * tri.J;
      std::array<Eigen::Vector3d, 21> hess;  // (xx, xy, yy)
      for (int j = 0; j < 21; ++j)
        hess[j] = Eigen::Vector3d(mj[j].pxx.eval(p.x(), p.y()),
                                  mj[j].pxy.eval(p.x(), p.y()),
                                  mj[j].pyy.eval(p.x(), p.y()));
      Eigen::Matrix2d sv = sh.eval(p.x(), p.y());
      // Rows 0..17: Hessian orthogonality against degree >= 2 monomials.
      for (int r = 0; r < 18; ++r) {
        const Eigen::Vector3d& hr = hess[r + 3];
        for (int j = 0; j < 21; ++j)
          A(r, j) += w * (hr[0] * hess[j][0] + 2.0 * hr[1] * hess[j][1] +
                          hr[2] * hess[j][2]);
        rhs[r] -= w * (sv(0, 0) * hr[0] + 2.0 * sv(0, 1) * hr[1] +
                       sv(1, 1) * hr[2]);
      }
      // Rows 18..20: P1 moments.
      double uhv = uh.eval(p.x(), p.y());
      for (int r = 0; r < 3; ++r) {
        double lv = lambda[r].eval(p.x(), p.y());
        for (int j = 0; j < 21; ++j)
          A(18 + r, j) += w * lv * mono[j].eval(p.x(), p.y());
        rhs[18 + r] += w * lv * uhv;
      }
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 21, 21>> lu(A);
    if (!lu.isInvertible())
      throw std::runtime_error("postprocess: singular local system");
    Eigen::Matrix<double, 21, 1> coeff = lu.solve(rhs);
    Poly p5;
    for (int j = 0; j < 21; ++j) p5 += mono[j] * coeff[j];
    out[t] = p5;
  }
  return out;
}

ErrorBundle error_norms(const Mesh& mesh, const std::vector<LocalBasis>& bases,
                        const DofMap& smap, const DofMap& umap,
                        const SaddleSolution& sol, const Manufactured& problem,
                        int quad_degree) {
  ErrorBundle eb;
  eb.level = mesh.level;
  eb.h = mesh.max_diameter();

  const QuadRule rule = triangle_rule(quad_degree);
  const QuadRule corner = triangle_rule(20);
  bool lshape = mesh.domain == "lshape";

  Eigen::VectorXd Qu = project_Qh(
      mesh, umap, [&](double x, double y) { return problem.u(x, y); },
      quad_degree);

  auto qu_jets = std::make_shared<std::vector<PolyJet>>(mesh.tris.size());
  auto post_jets = std::make_shared<std::vector<PolyJet>>(mesh.tris.size());
  std::vector<Poly> post =
      postprocess(mesh, bases, smap, umap, sol.sigma, sol.u);

  double s2 = 0.0, dd2 = 0.0, u2 = 0.0, qu2 = 0.0;
  for (const auto& tri : mesh.tris) {
    int t = tri.id;
    const QuadRule& r = (lshape && touches_origin(mesh, t)) ? corner : rule;
    SymTensorPoly sh = local_sigma(bases, smap, t, sol.sigma);
    Poly ddh = sh.divdiv();
    Poly uh = local_u(mesh, umap, t, sol.u);
    Poly quh = local_u(mesh, umap, t, Qu);
    (*qu_jets)[t] = PolyJet(quh - uh);
    (*post_jets)[t] = PolyJet(post[t]);
    for (int q = 0; q < r.points.rows(); ++q) {
      Eigen::Vector2d p = mesh.map_point(t, r.points(q, 0), r.points(q, 1));
      double w = r.weights[q] * tri.J;
      Eigen::Matrix2d ds = problem.sigma(p.x(), p.y()) - sh.eval(p.x(), p.y());
      s2 += w * (ds(0, 0) * ds(0, 0) + 2.0 * ds(0, 1) * ds(0, 1) +
                 ds(1, 1) * ds(1, 1));
      double ddiff = -problem.f(p.x(), p.y()) - ddh.eval(p.x(), p.y());
      dd2 += w * ddiff * ddiff;
      double udiff = problem.u(p.x(), p.y()) - uh.eval(p.x(), p.y());
      u2 += w * udiff * udiff;
      double qudiff = quh.eval(p.x(), p.y()) - uh.eval(p.x(), p.y());
      qu2 += w * qudiff * qudiff;
    }
  }
  eb.e_sigma = std::sqrt(s2);
  eb.e_divdiv = std::sqrt(dd2);
  eb.e_u = std::sqrt(u2);
  eb.e_Qu = std::sqrt(qu2);

  PiecewiseField qf = field_from_polys(qu_jets);
  qf.hess = nullptr;  // piecewise P1: broken Hessian vanishes
  eb.snorm_Qu = seminorm_2h(mesh, qf, 8, 10);

  // u - u_h*: exact part evaluated through the derivative engine.
  PiecewiseField pf;
  pf.value = [&, post_jets](int t, double x, double y) {
    return problem.u(x, y) - (*post_jets)[t].p.eval(x, y);
  };
  pf.grad = [&, post_jets](int t, double x, double y) {
    Eigen::Vector2d g = problem.grad(x, y);
    g.x() -= (*post_jets)[t].px.eval(x, y);
    g.y() -= (*post_jets)[t].py.eval(x, y);
    return g;
  };
  pf.hess = [&, post_jets](int t, double x, double y) {
    Eigen::Matrix2d h = -problem.sigma(x, y);  // hess(u) = -sigma
    h(0, 0) -= (*post_jets)[t].pxx.eval(x, y);
    double m = (*post_jets)[t].pxy.eval(x, y);
    h(0, 1) -= m;
    h(1, 0) -= m;
    h(1, 1) -= (*post_jets)[t].pyy.eval(x, y);
    return h;
  };
  eb.snorm_post = seminorm_2h(mesh, pf, quad_degree, quad_degree);
  return eb;
}

}  // namespace divdiv
