#include "divdiv/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <stdexcept>
#include <unsupported/Eigen/IterativeSolvers>

namespace divdiv {
namespace {

SpMat kkt_matrix(const SparseSystem& sys) {
  int n = sys.n_sigma + sys.n_u;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(sys.M.nonZeros() + 2 * sys.B.nonZeros());
  for (int k = 0; k < sys.M.outerSize(); ++k)
    for (SpMat::InnerIterator it(sys.M, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < sys.B.outerSize(); ++k)
    for (SpMat::InnerIterator it(sys.B, k); it; ++it) {
      trip.emplace_back(sys.n_sigma + it.row(), it.col(), it.value());
      trip.emplace_back(it.col(), sys.n_sigma + it.row(), it.value());
    }
  SpMat K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

Eigen::VectorXd kkt_rhs(const SparseSystem& sys) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys.n_sigma + sys.n_u);
  rhs.tail(sys.n_u) = sys.load;
  return rhs;
}

// Applies [diag(M)^{-1}, Mu^{-1}] blockwise; SPD, as MINRES requires.
class BlockDiagPreconditioner {
 public:
  using Scalar = double;
  using StorageIndex = int;

  BlockDiagPreconditioner() = default;

  void set(const SparseSystem& sys) {
    int n = sys.n_sigma + sys.n_u;
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < sys.n_sigma; ++i) {
      double d = sys.M.coeff(i, i);
      trip.emplace_back(i, i, d > 0.0 ? 1.0 / d : 1.0);
    }
    // Mu is block diagonal 3x3; invert the blocks exactly.
    for (int b = 0; b < sys.n_u / 3; ++b) {
      Eigen::Matrix3d blk;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) blk(i, j) = sys.Mu.coeff(3 * b + i, 3 * b + j);
      Eigen::Matrix3d inv = blk.inverse();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          trip.emplace_back(sys.n_sigma + 3 * b + i, sys.n_sigma + 3 * b + j,
                            inv(i, j));
    }
    pinv_.resize(n, n);
    pinv_.setFromTriplets(trip.begin(), trip.end());
  }

  template <typename Mat>
  BlockDiagPreconditioner& analyzePattern(const Mat&) { return *this; }
  template <typename Mat>
  BlockDiagPreconditioner& factorize(const Mat&) { return *this; }
  template <typename Mat>
  BlockDiagPreconditioner& compute(const Mat&) { return *this; }

  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const { return pinv_ * b; }

  Eigen::ComputationInfo info() const { return Eigen::Success; }

 private:
  SpMat pinv_;
};

}  // namespace

SaddleSolution solve(const SparseSystem& sys, const std::string& method,
                     double tol) {
  SpMat K = kkt_matrix(sys);
  Eigen::VectorXd rhs = kkt_rhs(sys);
  Eigen::VectorXd x;
  SaddleSolution sol;
  sol.method = method;
  if (method == "direct") {
    Eigen::SparseLU<SpMat> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error("solve: singular factorization");
    x = lu.solve(rhs);
  } else if (method == "krylov") {
    Eigen::MINRES<SpMat, Eigen::Lower | Eigen::Upper, BlockDiagPreconditioner>
        minres;
    minres.preconditioner().set(sys);
    minres.setTolerance(tol * 1e-2);
    minres.setMaxIterations(50000);
    minres.compute(K);
    x = minres.solve(rhs);
    sol.iterations = static_cast<int>(minres.iterations());
    if (minres.info() != Eigen::Success)
      throw std::runtime_error("solve: MINRES did not converge, residual " +
                               std::to_string(minres.error()));
  } else {
    throw std::invalid_argument("solve: unknown method " + method);
  }
  double denom = rhs.norm();
  if (denom == 0.0) denom = 1.0;
  sol.rel_residual = (K * x - rhs).norm() / denom;
  if (!(sol.rel_residual <= tol))
    throw std::runtime_error("solve: residual above tolerance");
  sol.sigma = x.head(sys.n_sigma);
  sol.u = x.tail(sys.n_u);
  return sol;
}

double estimate_infsup(const SparseSystem& sys) {
  if (sys.n_sigma > 2000)
    throw std::invalid_argument("estimate_infsup: dense path needs N_sigma <= 2000");
  Eigen::MatrixXd M = Eigen::MatrixXd(sys.M);
  Eigen::MatrixXd B = Eigen::MatrixXd(sys.B);
  Eigen::MatrixXd Mu = Eigen::MatrixXd(sys.Mu);
  Eigen::MatrixXd A =
      M + B.transpose() * Mu.ldlt().solve(B);
  Eigen::MatrixXd S = B * A.ldlt().solve(B.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Mu);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("estimate_infsup: eigensolve failed");
  double lmin = eig.eigenvalues().minCoeff();
  if (lmin < 0.0 && lmin > -1e-12) lmin = 0.0;
  return std::sqrt(lmin);
}

}  // namespace divdiv
