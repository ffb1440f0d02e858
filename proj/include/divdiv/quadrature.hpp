#pragma once

#include <Eigen/Core>

namespace divdiv {

// Quadrature rule on a reference domain: the unit interval [0,1] or the
// reference triangle {x >= 0, y >= 0, x + y <= 1}.
struct QuadRule {
  Eigen::MatrixX2d points;  // edge rules use column 0 only
  Eigen::VectorXd weights;
  int exact_degree = 0;
};

// Gauss rule on [0,1], exact for polynomials up to `degree`.
QuadRule edge_rule(int degree);

// Tensor Gauss rule mapped by the Duffy transform, exact up to `degree`
// on the reference triangle. Supported range: 1 <= degree <= 20.
QuadRule triangle_rule(int degree);

}  // namespace divdiv
