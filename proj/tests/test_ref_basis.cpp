#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "divdiv/quadrature.hpp"
#include "divdiv/ref_basis.hpp"

using namespace divdiv;

namespace {

double tensor_diff(const SymTensorPoly& a, const SymTensorPoly& b) {
  return (a - b).max_abs_coeff();
}

// The nine reference edge functionals dual to the bubble combinations:
// moments of n.div(tau) against barycentric weights, arclength measure.
// Edge 1 runs (1,0)->(0,1) with n = -(1,1)/sqrt(2); edge 2 runs
// (0,1)->(0,0) with n = (-1,0); edge 3 runs (0,0)->(1,0) with n = (0,-1).
double reference_d(int i, const SymTensorPoly& tau) {
  struct EdgeDef {
    Eigen::Vector2d a, b, n;
  };
  const std::array<EdgeDef, 3> edges = {
      EdgeDef{{1.0, 0.0}, {0.0, 1.0}, {-1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}},
      EdgeDef{{0.0, 1.0}, {0.0, 0.0}, {-1.0, 0.0}},
      EdgeDef{{0.0, 0.0}, {1.0, 0.0}, {0.0, -1.0}}};
  Poly l1 = Poly::linear(1.0, -1.0, -1.0);
  Poly l2 = Poly::linear(0.0, 1.0, 0.0);
  Poly l3 = Poly::linear(0.0, 0.0, 1.0);
  const std::array<std::pair<int, Poly>, 9> spec = {{
      {0, l2}, {0, l3}, {0, l2 * l3},
      {1, l3}, {1, l1}, {1, l3 * l1},
      {2, l1}, {2, l2}, {2, l1 * l2}}};
  const auto& [e, w] = spec[i];
  const EdgeDef& ed = edges[e];
  auto dv = tau.div();
  double len = (ed.b - ed.a).norm();
  QuadRule rule = edge_rule(8);
  double acc = 0.0;
  for (int q = 0; q < rule.points.rows(); ++q) {
    double s = rule.points(q, 0);
    Eigen::Vector2d p = ed.a + s * (ed.b - ed.a);
    double nd = ed.n.x() * dv[0].eval(p.x(), p.y()) +
                ed.n.y() * dv[1].eval(p.x(), p.y());
    acc += rule.weights[q] * len * nd * w.eval(p.x(), p.y());
  }
  return acc;
}

Mesh reference_triangle() {
  return single_triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
}

}  // namespace

TEST_CASE("bubble spot values") {
  auto bubs = hz_bubbles();
  // Factor 3*lambda2 - 1 vanishes at the barycenter for the first bubble.
  CHECK(bubs[0].eval(1.0 / 3, 1.0 / 3).norm() ==
        doctest::Approx(0.0).epsilon(1e-15));
  Eigen::Matrix2d v1 = bubs[0].eval(0.5, 0.25);
  CHECK(v1(0, 0) == doctest::Approx(9.0 / 64.0));
  CHECK(v1(0, 1) == doctest::Approx(-9.0 / 64.0));
  CHECK(v1(1, 1) == doctest::Approx(9.0 / 64.0));
  Eigen::Matrix2d v7 = bubs[6].eval(1.0 / 3, 1.0 / 3);
  CHECK(v7(0, 0) == doctest::Approx(1.0));
  CHECK(v7(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v7(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("coefficient combinations reproduce the closed forms") {
  auto combos = edge_dual_reference();
  auto closed = edge_dual_closed_forms();
  for (int i = 0; i < 9; ++i) CHECK(tensor_diff(combos[i], closed[i]) < 1e-12);
}

TEST_CASE("edge dual spot value") {
  Eigen::Matrix2d v = edge_dual_reference()[0].eval(1.0 / 3, 1.0 / 3);
  CHECK(v(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(v(0, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(v(1, 1) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("edge duals are dual to the divergence functionals") {
  auto combos = edge_dual_reference();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(reference_d(i, combos[j]) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("identity map leaves fields unchanged") {
  auto combos = edge_dual_reference();
  SymTensorPoly mapped =
      piola(combos[3], Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
  CHECK(tensor_diff(mapped, combos[3]) < 1e-14);
}

TEST_CASE("apply_dofs on a constant field") {
  Mesh m = reference_triangle();
  Eigen::Matrix2d T;
  T << 2.0, -1.0, -1.0, 3.0;
  SymTensorPoly tau = SymTensorPoly::from_matrix(Poly::constant(1.0), T);
  auto d = apply_dofs(m, 0, tau);
  // Vertex values: the three components at each corner.
  for (int v = 0; v < 3; ++v) {
    CHECK(d[3 * v + 0] == doctest::Approx(2.0));
    CHECK(d[3 * v + 1] == doctest::Approx(-1.0));
    CHECK(d[3 * v + 2] == doctest::Approx(3.0));
  }
  // Edge moments: sigma n is constant, so the mu_a and mu_b moments are
  // (T n)_c * |e| / 2; div moments vanish.
  const auto& tri = m.tris[0];
  for (int e = 0; e < 3; ++e) {
    const Edge& edge = m.edges[tri.e[e]];
    Eigen::Vector2d flux = T * (double(tri.s[e]) * edge.n);
    double half = 0.5 * edge.length;
    CHECK(d[9 + 7 * e + 0] == doctest::Approx(flux.x() * half));
    CHECK(d[9 + 7 * e + 1] == doctest::Approx(flux.y() * half));
    CHECK(d[9 + 7 * e + 2] == doctest::Approx(flux.x() * half));
    CHECK(d[9 + 7 * e + 3] == doctest::Approx(flux.y() * half));
    for (int c = 4; c < 7; ++c)
      CHECK(d[9 + 7 * e + c] == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("local bases are dual to the functionals") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Vector2d p1(uni(rng), uni(rng));
    Eigen::Vector2d p2 = p1 + Eigen::Vector2d(1.0 + 0.3 * uni(rng), 0.2 * uni(rng));
    Eigen::Vector2d p3 = p1 + Eigen::Vector2d(0.3 * uni(rng), 1.0 + 0.3 * uni(rng));
    Mesh m = single_triangle(p1, p2, p3);
    LocalBasis explicit_basis = correct_basis(m, 0);
    LocalBasis oracle = vandermonde_oracle(m, 0);
    CHECK(gram_deviation(m, 0, explicit_basis) < 1e-10);
    CHECK(gram_deviation(m, 0, oracle) < 1e-9);
    // Same span and same duals => identical functions.
    for (int i : {0, 7, 15, 29})
      CHECK(tensor_diff(explicit_basis.funcs[i], oracle.funcs[i]) < 1e-7);
  }
}

TEST_CASE("bubble-derived basis has zero normal trace on all edges") {
  Mesh m = single_triangle({0.1, -0.2}, {1.3, 0.1}, {0.4, 1.1});
  auto duals = edge_dual_basis(m, 0);
  QuadRule rule = edge_rule(8);
  const auto& tri = m.tris[0];
  for (const auto& tau : duals)
    for (int e = 0; e < 3; ++e) {
      const Edge& edge = m.edges[tri.e[e]];
      Eigen::Vector2d a = m.point(edge.a), b = m.point(edge.b);
      for (int q = 0; q < rule.points.rows(); ++q) {
        Eigen::Vector2d p = a + rule.points(q, 0) * (b - a);
        Eigen::Vector2d flux = tau.eval(p.x(), p.y()) * edge.n;
        CHECK(flux.norm() == doctest::Approx(0.0).epsilon(1e-12));
      }
    }
}

TEST_CASE("barycentric coordinates") {
  Mesh m = single_triangle({0.0, 0.5}, {2.0, 0.0}, {0.5, 2.0});
  auto l = barycentric(m, 0);
  const auto& tri = m.tris[0];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector2d p = m.point(tri.v[j]);
      CHECK(l[i].eval(p.x(), p.y()) ==
            doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
    }
  CHECK((l[0] + l[1] + l[2]).eval(0.77, 0.31) == doctest::Approx(1.0));
}
