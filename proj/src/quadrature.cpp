#include "divdiv/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace divdiv {
namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

// Same rule shifted to [0,1].
void gauss01(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  gauss_legendre(n, x, w);
  x = (x.array() + 1.0) * 0.5;
  w *= 0.5;
}

}  // namespace

QuadRule edge_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("edge_rule: negative degree");
  int n = degree / 2 + 1;  // n points exact to 2n-1
  Eigen::VectorXd x, w;
  gauss01(n, x, w);
  QuadRule rule;
  rule.points.setZero(n, 2);
  rule.points.col(0) = x;
  rule.weights = w;
  rule.exact_degree = 2 * n - 1;
  return rule;
}

QuadRule triangle_rule(int degree) {
  if (degree < 1 || degree > 20)
    throw std::invalid_argument("triangle_rule: degree out of [1,20]");
  // Duffy map (u,v) -> (u, v(1-u)) with Jacobian (1-u). A monomial x^p y^q
  // becomes u^p v^q (1-u)^{q+1}, degree p+q+1 in u and q in v.
  int nu = (degree + 1) / 2 + 1;
  int nv = degree / 2 + 1;
  Eigen::VectorXd xu, wu, xv, wv;
  gauss01(nu, xu, wu);
  gauss01(nv, xv, wv);
  QuadRule rule;
  rule.points.resize(nu * nv, 2);
  rule.weights.resize(nu * nv);
  int k = 0;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j, ++k) {
      rule.points(k, 0) = xu[i];
      rule.points(k, 1) = xv[j] * (1.0 - xu[i]);
      rule.weights[k] = wu[i] * wv[j] * (1.0 - xu[i]);
    }
  rule.exact_degree = degree;
  return rule;
}

}  // namespace divdiv
