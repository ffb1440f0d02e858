#include "divdiv/assembly.hpp"

#include <ostream>
#include <stdexcept>

#include "divdiv/quadrature.hpp"
#include "divdiv/util.hpp"

namespace divdiv {
namespace {

using Triplet = Eigen::Triplet<double>;

constexpr int kChunk = 32;

// Runs per-element assembly into per-chunk buffers, merged in chunk order so
// the triplet stream does not depend on the thread count.
std::vector<Triplet> chunked_triplets(
    int ncells,
    const std::function<void(int, std::vector<Triplet>&)>& cell_fn) {
  int nchunks = (ncells + kChunk - 1) / kChunk;
  std::vector<std::vector<Triplet>> buffers(nchunks);
  parallel_chunks(ncells, kChunk, [&](int begin, int end) {
    auto& buf = buffers[begin / kChunk];
    for (int t = begin; t < end; ++t) cell_fn(t, buf);
  });
  std::vector<Triplet> merged;
  std::size_t total = 0;
  for (const auto& b : buffers) total += b.size();
  merged.reserve(total);
  for (const auto& b : buffers) merged.insert(merged.end(), b.begin(), b.end());
  return merged;
}

bool touches_origin(const Mesh& mesh, int t) {
  for (int v : mesh.tris[t].v) {
    const auto& p = mesh.vertices[v];
    if (std::abs(p.x) < 1e-14 && std::abs(p.y) < 1e-14) return true;
  }
  return false;
}

}  // namespace

SpMat assemble_mass(const Mesh& mesh, const std::vector<LocalBasis>& bases,
                    const DofMap& smap, int quad_degree) {
  if (quad_degree < 6)
    throw std::invalid_argument("assemble_mass: quadrature degree below 6");
  const QuadRule rule = triangle_rule(quad_degree);
  int npts = static_cast<int>(rule.points.rows());
  auto triplets = chunked_triplets(
      static_cast<int>(mesh.tris.size()),
      [&](int t, std::vector<Triplet>& buf) {
        const LocalBasis& basis = bases[t];
        Eigen::Matrix<double, 30, 30> local;
        local.setZero();
        for (int q = 0; q < npts; ++q) {
          Eigen::Vector2d p =
              mesh.map_point(t, rule.points(q, 0), rule.points(q, 1));
          double w = rule.weights[q] * mesh.tris[t].J;
          Eigen::Matrix<double, 3, 30> vals;
          for (int j = 0; j < 30; ++j) {
            vals(0, j) = basis.funcs[j].s11.eval(p.x(), p.y());
            vals(1, j) = basis.funcs[j].s12.eval(p.x(), p.y());
            vals(2, j) = basis.funcs[j].s22.eval(p.x(), p.y());
          }
          // Frobenius product: off-diagonal entry counts twice.
          local.noalias() += w * (vals.row(0).transpose() * vals.row(0) +
                                  2.0 * vals.row(1).transpose() * vals.row(1) +
                                  vals.row(2).transpose() * vals.row(2));
        }
        for (int i = 0; i < 30; ++i)
          for (int j = 0; j < 30; ++j)
            buf.emplace_back(smap(t, i), smap(t, j),
                             smap.sgn(t, i) * smap.sgn(t, j) * local(i, j));
      });
  SpMat M(smap.n_dofs, smap.n_dofs);
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

SpMat assemble_divdiv(const Mesh& mesh, const std::vector<LocalBasis>& bases,
                      const DofMap& smap, const DofMap& umap) {
  const QuadRule rule = triangle_rule(4);
  int npts = static_cast<int>(rule.points.rows());
  auto triplets = chunked_triplets(
      static_cast<int>(mesh.tris.size()),
      [&](int t, std::vector<Triplet>& buf) {
        auto lambda = barycentric(mesh, t);
        std::array<Poly, 30> dd;
        for (int j = 0; j < 30; ++j) dd[j] = bases[t].funcs[j].divdiv();
        Eigen::Matrix<double, 3, 30> local;
        local.setZero();
        for (int q = 0; q < npts; ++q) {
          Eigen::Vector2d p =
              mesh.map_point(t, rule.points(q, 0), rule.points(q, 1));
          double w = rule.weights[q] * mesh.tris[t].J;
          for (int r = 0; r < 3; ++r) {
            double lr = lambda[r].eval(p.x(), p.y());
            for (int j = 0; j < 30; ++j)
              local(r, j) += w * lr * dd[j].eval(p.x(), p.y());
          }
        }
        for (int r = 0; r < 3; ++r)
          for (int j = 0; j < 30; ++j)
            buf.emplace_back(umap(t, r), smap(t, j),
                             smap.sgn(t, j) * local(r, j));
      });
  SpMat B(umap.n_dofs, smap.n_dofs);
  B.setFromTriplets(triplets.begin(), triplets.end());
  return B;
}

SpMat assemble_u_mass(const Mesh& mesh, const DofMap& umap) {
  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.tris.size());
  for (const auto& tri : mesh.tris) {
    double area = 0.5 * tri.J;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.emplace_back(umap(tri.id, i), umap(tri.id, j),
                              area * (i == j ? 2.0 : 1.0) / 12.0);
  }
  SpMat Mu(umap.n_dofs, umap.n_dofs);
  Mu.setFromTriplets(triplets.begin(), triplets.end());
  return Mu;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const Manufactured& problem,
                              const DofMap& umap, int quad_degree) {
  const QuadRule rule = triangle_rule(quad_degree);
  const QuadRule corner_rule = triangle_rule(20);
  bool lshape = problem.domain == "lshape";
  Eigen::VectorXd load = Eigen::VectorXd::Zero(umap.n_dofs);
  parallel_chunks(static_cast<int>(mesh.tris.size()), kChunk,
                  [&](int begin, int end) {
                    for (int t = begin; t < end; ++t) {
                      const QuadRule& r = (lshape && touches_origin(mesh, t))
                                              ? corner_rule
                                              : rule;
                      auto lambda = barycentric(mesh, t);
                      for (int q = 0; q < r.points.rows(); ++q) {
                        Eigen::Vector2d p = mesh.map_point(t, r.points(q, 0),
                                                           r.points(q, 1));
                        double w = r.weights[q] * mesh.tris[t].J;
                        double f = problem.f(p.x(), p.y());
                        for (int c = 0; c < 3; ++c)
                          load[umap(t, c)] -=
                              w * f * lambda[c].eval(p.x(), p.y());
                      }
                    }
                  });
  return load;
}

SparseSystem assemble_system(const Mesh& mesh,
                             const std::vector<LocalBasis>& bases,
                             const DofMap& smap, const DofMap& umap,
                             const Manufactured& problem, int quad_degree) {
  SparseSystem sys;
  sys.n_sigma = smap.n_dofs;
  sys.n_u = umap.n_dofs;
  sys.M = assemble_mass(mesh, bases, smap);
  sys.B = assemble_divdiv(mesh, bases, smap, umap);
  sys.Mu = assemble_u_mass(mesh, umap);
  sys.load = assemble_load(mesh, problem, umap, quad_degree);
  return sys;
}

SymTensorPoly local_sigma(const std::vector<LocalBasis>& bases,
                          const DofMap& smap, int t,
                          const Eigen::VectorXd& coeffs) {
  SymTensorPoly acc;
  for (int j = 0; j < 30; ++j)
    acc = acc + bases[t].funcs[j] *
                    (smap.sgn(t, j) * coeffs[smap(t, j)]);
  return acc;
}

Poly local_u(const Mesh& mesh, const DofMap& umap, int t,
             const Eigen::VectorXd& coeffs) {
  auto lambda = barycentric(mesh, t);
  Poly acc;
  for (int c = 0; c < 3; ++c) acc += lambda[c] * coeffs[umap(t, c)];
  return acc;
}

void write_matrix_market(const SpMat& m, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  out.precision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

}  // namespace divdiv
