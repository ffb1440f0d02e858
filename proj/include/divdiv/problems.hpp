#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string>

namespace divdiv {

// Truncated bivariate Taylor expansion of total degree <= 4 at a point;
// c[i][j] is the Taylor coefficient of (x-x0)^i (y-y0)^j.
class Jet4 {
 public:
  Jet4() { coef_.fill({}); }
  static Jet4 constant(double v);
  static Jet4 var_x(double x0);
  static Jet4 var_y(double y0);

  double coeff(int i, int j) const { return coef_[i][j]; }
  double value() const { return coef_[0][0]; }
  // Partial derivative d^{i+j} / dx^i dy^j at the expansion point.
  double deriv(int i, int j) const;

  Jet4 operator+(const Jet4& o) const;
  Jet4 operator-(const Jet4& o) const;
  Jet4 operator*(const Jet4& o) const;
  Jet4 operator+(double s) const;
  Jet4 operator-(double s) const;
  Jet4 operator*(double s) const;

  // Composes a univariate function given by its Taylor coefficients
  // f[k] = f^{(k)}(value())/k! with this jet.
  Jet4 compose(const std::array<double, 5>& f) const;

  Jet4 recip() const;
  Jet4 sqrt() const;
  Jet4 pow(double exponent) const;  // requires value() > 0
  Jet4 sin() const;
  Jet4 cos() const;
  Jet4 atan() const;

 private:
  std::array<std::array<double, 5>, 5> coef_;
};

inline Jet4 operator*(double s, const Jet4& j) { return j * s; }

// Clamped-plate manufactured solution: u with exact derivatives to order 4,
// stress sigma = -hess(u), load f = biharmonic(u).
struct Manufactured {
  std::string domain;
  std::function<Jet4(double, double)> jet;

  double u(double x, double y) const { return jet(x, y).value(); }
  Eigen::Vector2d grad(double x, double y) const {
    Jet4 j = jet(x, y);
    return {j.deriv(1, 0), j.deriv(0, 1)};
  }
  Eigen::Matrix2d sigma(double x, double y) const {
    Jet4 j = jet(x, y);
    Eigen::Matrix2d m;
    m(0, 0) = -j.deriv(2, 0);
    m(0, 1) = m(1, 0) = -j.deriv(1, 1);
    m(1, 1) = -j.deriv(0, 2);
    return m;
  }
  double f(double x, double y) const {
    Jet4 j = jet(x, y);
    return j.deriv(4, 0) + 2.0 * j.deriv(2, 2) + j.deriv(0, 4);
  }
};

Manufactured example1();  // u = x^2 y^2 (1-x)^2 (1-y)^2 on the unit square
Manufactured example3();  // singular r^{1+alpha} g(theta) solution, L-shape

// Singularity exponent for the L-shape solution, polished so that
// sin^2(alpha*omega) = alpha^2 sin^2(omega) to machine accuracy.
double lshape_alpha();

// Angle in [0, 3*pi/2) measured counterclockwise from the positive x-axis.
double lshape_theta(double x, double y);

}  // namespace divdiv
