#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "divdiv/complex_check.hpp"

using namespace divdiv;

namespace {

std::array<Poly, 2> random_p4_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::array<Poly, 2> v;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) v[c].set_coeff(i, j, uni(rng));
  return v;
}

}  // namespace

TEST_CASE("sym curl identities") {
  std::mt19937_64 rng(31);
  auto v = random_p4_vector(rng);
  SymTensorPoly s = sym_curl(v);
  // sym curl v = sym([[-d_y v1, d_x v1], [-d_y v2, d_x v2]]).
  Poly s11 = v[0].dy() * (-1.0);
  Poly s12 = 0.5 * (v[0].dx() - v[1].dy());
  Poly s22 = v[1].dx();
  CHECK((s.s11 - s11).max_abs_coeff() < 1e-13);
  CHECK((s.s12 - s12).max_abs_coeff() < 1e-13);
  CHECK((s.s22 - s22).max_abs_coeff() < 1e-13);

  // Edge-trace identities coupling the stress DOFs to tangential data of v;
  // sampled pointwise with t = (1,0), n = (0,1) along a horizontal line.
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    double x = uni(rng), y = uni(rng);
    Eigen::Matrix2d sv = s.eval(x, y);
    Eigen::Vector2d t(1.0, 0.0), n(0.0, 1.0);
    Eigen::Vector2d dtv(v[0].dx().eval(x, y), v[1].dx().eval(x, y));
    double div_v = v[0].dx().eval(x, y) + v[1].dy().eval(x, y);
    // n' s n = n . d_t v
    CHECK(n.dot(sv * n) == doctest::Approx(n.dot(dtv)).epsilon(1e-11));
    // t' s n = t . d_t v - div v / 2
    CHECK(t.dot(sv * n) ==
          doctest::Approx(t.dot(dtv) - 0.5 * div_v).epsilon(1e-11));
    // n . div(s) = d_t(div v) / 2
    auto dv = s.div();
    double div_v_dx = v[0].dx().dx().eval(x, y) + v[1].dy().dx().eval(x, y);
    CHECK(n.x() * dv[0].eval(x, y) + n.y() * dv[1].eval(x, y) ==
          doctest::Approx(0.5 * div_v_dx).epsilon(1e-10));
  }
}

TEST_CASE("rt fields are in the kernel") {
  // v = (a1 + b x, a2 + b y).
  std::array<Poly, 2> v = {Poly::linear(0.3, 1.2, 0.0),
                           Poly::linear(-0.7, 0.0, 1.2)};
  CHECK(sym_curl(v).max_abs_coeff() < 1e-15);
}

TEST_CASE("dof counts and dimension identity") {
  for (const Mesh& m : {build_unit_square(2), build_lshape(1)}) {
    VhMap vmap = build_vh_map(m);
    int nv = static_cast<int>(m.vertices.size());
    int ne = static_cast<int>(m.edges.size());
    int nt = static_cast<int>(m.tris.size());
    CHECK(vmap.n_dofs == 6 * nv + 4 * ne);
    // dim Sigma_h = dim sym curl V_h + dim(divdiv image).
    CHECK(3 * nv + 7 * ne == (6 * nv + 4 * ne - 3) + 3 * nt);
  }
}

TEST_CASE("vh basis duality at vertices") {
  Mesh m = single_triangle({0, 0}, {1, 0}, {0, 1});
  VhLocalBasis basis = build_vh_basis(m, 0);
  // Local DOF 0 is the first component value at vertex 0.
  Eigen::Vector2d p0 = m.point(m.tris[0].v[0]);
  CHECK(basis.funcs[0][0].eval(p0.x(), p0.y()) == doctest::Approx(1.0));
  CHECK(basis.funcs[0][1].eval(p0.x(), p0.y()) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(basis.funcs[0][0].grad(p0.x(), p0.y()).norm() ==
        doctest::Approx(0.0).epsilon(1e-11));
  for (int v = 1; v < 3; ++v) {
    Eigen::Vector2d p = m.point(m.tris[0].v[v]);
    CHECK(basis.funcs[0][0].eval(p.x(), p.y()) ==
          doctest::Approx(0.0).epsilon(1e-11));
    CHECK(basis.funcs[0][0].grad(p.x(), p.y()).norm() ==
          doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("conforming fields map to single-valued stress dofs") {
  Mesh m = build_unit_square(2);
  VhMap vmap = build_vh_map(m);
  DofMap smap = build_sigma_map(m);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd vc(vmap.n_dofs);
  for (int i = 0; i < vc.size(); ++i) vc[i] = uni(rng);
  double mismatch = 0.0;
  Eigen::VectorXd sc = sym_curl_to_sigma(m, vmap, smap, vc, &mismatch);
  CHECK(mismatch < 1e-9);

  // The image lies in the kernel of the coupling operator.
  auto bases = build_all_bases(m);
  DofMap umap = build_u_map(m);
  SpMat B = assemble_divdiv(m, bases, smap, umap);
  CHECK((B * sc).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("rank and nullity tie out the exact sequence") {
  Mesh m = build_unit_square(2);
  auto bases = build_all_bases(m);
  DofMap smap = build_sigma_map(m), umap = build_u_map(m);
  SpMat B = assemble_divdiv(m, bases, smap, umap);
  int nv = static_cast<int>(m.vertices.size());
  int ne = static_cast<int>(m.edges.size());
  int nt = static_cast<int>(m.tris.size());
  int rank = matrix_rank(B);
  CHECK(rank == 3 * nt);
  CHECK(smap.n_dofs - rank == 6 * nv + 4 * ne - 3);
}

TEST_CASE("matrix rank on a known matrix") {
  SpMat A(3, 3);
  A.insert(0, 0) = 1.0;
  A.insert(1, 1) = 2.0;
  A.insert(2, 2) = 1e-14;
  CHECK(matrix_rank(A) == 2);
}
