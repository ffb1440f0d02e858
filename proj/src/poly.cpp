#include "divdiv/poly.hpp"

#include <algorithm>

namespace divdiv {

Poly Poly::constant(double v) {
  Poly p;
  p.c_(0, 0) = v;
  return p;
}

Poly Poly::linear(double a, double bx, double by) {
  Poly p(1);
  p.c_(0, 0) = a;
  p.c_(1, 0) = bx;
  p.c_(0, 1) = by;
  return p;
}

void Poly::set_coeff(int i, int j, double v) {
  int need = std::max(i, j) + 1;
  if (need > c_.rows()) {
    Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(need, need);
    grown.topLeftCorner(c_.rows(), c_.cols()) = c_;
    c_ = std::move(grown);
  }
  c_(i, j) = v;
}

int Poly::degree() const {
  int deg = 0;
  for (int i = 0; i < c_.rows(); ++i)
    for (int j = 0; j < c_.cols(); ++j)
      if (c_(i, j) != 0.0) deg = std::max(deg, i + j);
  return deg;
}

double Poly::eval(double x, double y) const {
  // Horner in x of Horner-in-y rows.
  double acc = 0.0;
  for (int i = static_cast<int>(c_.rows()) - 1; i >= 0; --i) {
    double row = 0.0;
    for (int j = static_cast<int>(c_.cols()) - 1; j >= 0; --j)
      row = row * y + c_(i, j);
    acc = acc * x + row;
  }
  return acc;
}

Eigen::Vector2d Poly::grad(double x, double y) const {
  return {dx().eval(x, y), dy().eval(x, y)};
}

Poly Poly::dx() const {
  int n = static_cast<int>(c_.rows());
  Poly out(std::max(n - 2, 0));
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (c_(i, j) != 0.0) out.set_coeff(i - 1, j, i * c_(i, j));
  return out;
}

Poly Poly::dy() const {
  int n = static_cast<int>(c_.rows());
  Poly out(std::max(n - 2, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 1; j < n; ++j)
      if (c_(i, j) != 0.0) out.set_coeff(i, j - 1, j * c_(i, j));
  return out;
}

Poly Poly::compose_affine(const Eigen::Matrix2d& A,
                          const Eigen::Vector2d& b) const {
  int d = degree();
  Poly X = Poly::linear(b[0], A(0, 0), A(0, 1));
  Poly Y = Poly::linear(b[1], A(1, 0), A(1, 1));
  // Powers of the two substituted linear forms.
  std::vector<Poly> xp(d + 1), yp(d + 1);
  xp[0] = Poly::constant(1.0);
  yp[0] = Poly::constant(1.0);
  for (int k = 1; k <= d; ++k) {
    xp[k] = xp[k - 1] * X;
    yp[k] = yp[k - 1] * Y;
  }
  Poly out(d);
  for (int i = 0; i <= std::min<int>(d, max_index()); ++i)
    for (int j = 0; j <= std::min<int>(d, max_index()); ++j)
      if (coeff(i, j) != 0.0) out += coeff(i, j) * (xp[i] * yp[j]);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  int n = std::max(max_index(), o.max_index());
  Poly out(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double v = coeff(i, j) + o.coeff(i, j);
      if (v != 0.0) out.set_coeff(i, j, v);
    }
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + o * (-1.0); }

Poly Poly::operator*(const Poly& o) const {
  int n = max_index() + o.max_index();
  Poly out(n);
  for (int i = 0; i <= max_index(); ++i)
    for (int j = 0; j <= max_index(); ++j) {
      double a = coeff(i, j);
      if (a == 0.0) continue;
      for (int k = 0; k <= o.max_index(); ++k)
        for (int l = 0; l <= o.max_index(); ++l) {
          double b = o.coeff(k, l);
          if (b != 0.0)
            out.set_coeff(i + k, j + l, out.coeff(i + k, j + l) + a * b);
        }
    }
  return out;
}

Poly Poly::operator*(double s) const {
  Poly out = *this;
  out.c_ *= s;
  return out;
}

}  // namespace divdiv
