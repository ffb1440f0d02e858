#pragma once

#include <Eigen/Dense>

namespace divdiv {

// Dense bivariate polynomial; coeff(i,j) multiplies x^i y^j.
class Poly {
 public:
  Poly() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit Poly(int max_degree)
      : c_(Eigen::MatrixXd::Zero(max_degree + 1, max_degree + 1)) {}

  static Poly constant(double v);
  static Poly linear(double a, double bx, double by);  // a + bx*x + by*y

  double coeff(int i, int j) const {
    return (i < c_.rows() && j < c_.cols()) ? c_(i, j) : 0.0;
  }
  void set_coeff(int i, int j, double v);

  int max_index() const { return static_cast<int>(c_.rows()) - 1; }
  int degree() const;  // max total degree with a nonzero coefficient

  double eval(double x, double y) const;
  Eigen::Vector2d grad(double x, double y) const;

  Poly dx() const;
  Poly dy() const;

  // p(A x + b) for an affine change of coordinates.
  Poly compose_affine(const Eigen::Matrix2d& A, const Eigen::Vector2d& b) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(double s) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  double max_abs_coeff() const { return c_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXd c_;
};

inline Poly operator*(double s, const Poly& p) { return p * s; }

// Symmetric 2x2 tensor field with polynomial entries.
struct SymTensorPoly {
  Poly s11, s12, s22;

  Eigen::Matrix2d eval(double x, double y) const {
    Eigen::Matrix2d m;
    m(0, 0) = s11.eval(x, y);
    m(0, 1) = m(1, 0) = s12.eval(x, y);
    m(1, 1) = s22.eval(x, y);
    return m;
  }

  // Row divergence (div s)_i = d_j s_ij, a vector of two polynomials.
  std::array<Poly, 2> div() const {
    return {s11.dx() + s12.dy(), s12.dx() + s22.dy()};
  }

  Poly divdiv() const {
    return s11.dx().dx() + 2.0 * s12.dx().dy() + s22.dy().dy();
  }

  SymTensorPoly operator+(const SymTensorPoly& o) const {
    return {s11 + o.s11, s12 + o.s12, s22 + o.s22};
  }
  SymTensorPoly operator-(const SymTensorPoly& o) const {
    return {s11 - o.s11, s12 - o.s12, s22 - o.s22};
  }
  SymTensorPoly operator*(double a) const {
    return {s11 * a, s12 * a, s22 * a};
  }

  // Scalar polynomial times a constant symmetric matrix.
  static SymTensorPoly from_matrix(const Poly& p, const Eigen::Matrix2d& m) {
    return {p * m(0, 0), p * (0.5 * (m(0, 1) + m(1, 0))), p * m(1, 1)};
  }

  double max_abs_coeff() const {
    return std::max({s11.max_abs_coeff(), s12.max_abs_coeff(),
                     s22.max_abs_coeff()});
  }
};

}  // namespace divdiv
