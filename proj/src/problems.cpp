#include "divdiv/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace divdiv {
namespace {

double factorial(int n) {
  static const double f[5] = {1, 1, 2, 6, 24};
  return f[n];
}

}  // namespace

Jet4 Jet4::constant(double v) {
  Jet4 j;
  j.coef_[0][0] = v;
  return j;
}

Jet4 Jet4::var_x(double x0) {
  Jet4 j;
  j.coef_[0][0] = x0;
  j.coef_[1][0] = 1.0;
  return j;
}

Jet4 Jet4::var_y(double y0) {
  Jet4 j;
  j.coef_[0][0] = y0;
  j.coef_[0][1] = 1.0;
  return j;
}

double Jet4::deriv(int i, int j) const {
  return coef_[i][j] * factorial(i) * factorial(j);
}

Jet4 Jet4::operator+(const Jet4& o) const {
  Jet4 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j + i < 5; ++j) r.coef_[i][j] = coef_[i][j] + o.coef_[i][j];
  return r;
}

Jet4 Jet4::operator-(const Jet4& o) const {
  Jet4 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j + i < 5; ++j) r.coef_[i][j] = coef_[i][j] - o.coef_[i][j];
  return r;
}

Jet4 Jet4::operator*(const Jet4& o) const {
  Jet4 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j + i < 5; ++j) {
      double a = coef_[i][j];
      if (a == 0.0) continue;
      for (int k = 0; k + i < 5; ++k)
        for (int l = 0; l + k + i + j < 5; ++l)
          r.coef_[i + k][j + l] += a * o.coef_[k][l];
    }
  return r;
}

Jet4 Jet4::operator+(double s) const {
  Jet4 r = *this;
  r.coef_[0][0] += s;
  return r;
}

Jet4 Jet4::operator-(double s) const { return *this + (-s); }

Jet4 Jet4::operator*(double s) const {
  Jet4 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j + i < 5; ++j) r.coef_[i][j] = coef_[i][j] * s;
  return r;
}

Jet4 Jet4::compose(const std::array<double, 5>& f) const {
  Jet4 d = *this - value();
  Jet4 r = Jet4::constant(f[0]);
  Jet4 p = Jet4::constant(1.0);
  for (int k = 1; k < 5; ++k) {
    p = p * d;
    r = r + p * f[k];
  }
  return r;
}

Jet4 Jet4::recip() const {
  double g = value();
  if (g == 0.0) throw std::domain_error("Jet4::recip at zero");
  std::array<double, 5> f;
  double p = 1.0 / g;
  for (int k = 0; k < 5; ++k) {
    f[k] = (k % 2 ? -p : p);
    p /= g;
  }
  return compose(f);
}

Jet4 Jet4::pow(double e) const {
  double g = value();
  if (!(g > 0.0)) throw std::domain_error("Jet4::pow at non-positive value");
  std::array<double, 5> f;
  double binom = 1.0;
  for (int k = 0; k < 5; ++k) {
    f[k] = binom * std::pow(g, e - k);
    binom *= (e - k) / (k + 1);
  }
  return compose(f);
}

Jet4 Jet4::sqrt() const { return pow(0.5); }

Jet4 Jet4::sin() const {
  double s = std::sin(value()), c = std::cos(value());
  return compose({s, c, -s / 2, -c / 6, s / 24});
}

Jet4 Jet4::cos() const {
  double s = std::sin(value()), c = std::cos(value());
  return compose({c, -s, -c / 2, s / 6, c / 24});
}

Jet4 Jet4::atan() const {
  double g = value();
  double q = 1.0 + g * g;
  std::array<double, 5> f;
  f[0] = std::atan(g);
  f[1] = 1.0 / q;
  f[2] = -g / (q * q);
  f[3] = (6 * g * g - 2) / (6 * q * q * q);
  f[4] = (24 * g - 24 * g * g * g) / (24 * q * q * q * q);
  return compose(f);
}

Manufactured example1() {
  Manufactured m;
  m.domain = "square";
  m.jet = [](double x0, double y0) {
    Jet4 x = Jet4::var_x(x0), y = Jet4::var_y(y0);
    Jet4 a = x * x * ((x - 1.0) * (x - 1.0));
    Jet4 b = y * y * ((y - 1.0) * (y - 1.0));
    return a * b;
  };
  return m;
}

double lshape_alpha() {
  const double omega = 1.5 * M_PI;
  const double s2 = std::sin(omega) * std::sin(omega);
  double a = 0.544483736782464;
  for (int it = 0; it < 50; ++it) {
    double F = std::sin(a * omega) * std::sin(a * omega) - a * a * s2;
    double dF = omega * std::sin(2.0 * a * omega) - 2.0 * a * s2;
    double step = F / dF;
    a -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return a;
}

double lshape_theta(double x, double y) {
  double t = std::atan2(y, x);
  if (t < 0.0) t += 2.0 * M_PI;
  return t;
}

Manufactured example3() {
  const double alpha = lshape_alpha();
  const double omega = 1.5 * M_PI;
  const double am = alpha - 1.0, ap = alpha + 1.0;
  const double g1 = std::sin(am * omega) / am - std::sin(ap * omega) / ap;
  const double g2 = std::cos(am * omega) - std::cos(ap * omega);
  Manufactured m;
  m.domain = "lshape";
  m.jet = [=](double x0, double y0) {
    if (x0 == 0.0 && y0 == 0.0)
      throw std::domain_error("example3: singular at the origin");
    Jet4 x = Jet4::var_x(x0), y = Jet4::var_y(y0);
    Jet4 cut = ((x * x - 1.0) * (x * x - 1.0)) *
               ((y * y - 1.0) * (y * y - 1.0));
    Jet4 rpow = (x * x + y * y).pow(0.5 * (1.0 + alpha));
    // theta as a jet: rotate so the point sits on the local positive axis,
    // then theta = theta0 + atan(v/u) with v/u vanishing at the point.
    double t0 = lshape_theta(x0, y0);
    double c0 = std::cos(t0), s0 = std::sin(t0);
    Jet4 u = x * c0 + y * s0;
    Jet4 v = x * (-s0) + y * c0;
    Jet4 theta = (v * u.recip()).atan() + t0;
    Jet4 g = ((theta * am).cos() - (theta * ap).cos()) * g1 -
             ((theta * am).sin() * (1.0 / am) -
              (theta * ap).sin() * (1.0 / ap)) * g2;
    return cut * rpow * g;
  };
  return m;
}

}  // namespace divdiv
