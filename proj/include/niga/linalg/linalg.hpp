#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>
#include <Eigen/OrderingMethods>

#include "niga/assembly/system.hpp"
#include "niga/errors.hpp"

namespace niga::linalg {

using assembly::SparseMatrix;

/// Rank estimate of a sparse matrix through column-pivoted sparse QR.
inline long estimate_rank(const SparseMatrix& K) {
  Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr;
  qr.setPivotThreshold(1e-12 * std::max(1.0, assembly::max_abs(K)));
  qr.compute(K);
  if (qr.info() != Eigen::Success) return -1;
  return static_cast<long>(qr.rank());
}

/// Maximum absolute row sum.
inline double norm_inf(const SparseMatrix& K) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(K.rows());
  for (int k = 0; k < K.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(K, k); it; ++it) rows[it.row()] += std::abs(it.value());
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

/// Reusable LU factorization of a (possibly nonsymmetric) sparse matrix.
class SparseSolver {
 public:
  explicit SparseSolver(const SparseMatrix& K) : K_(&K) {
    if (K.rows() != K.cols()) throw SolverError("solve_linear: matrix is not square");
    lu_.analyzePattern(K);
    lu_.factorize(K);
    if (lu_.info() != Eigen::Success) {
      throw SolverError("solve_linear: singular matrix (" + lu_.lastErrorMessage() + ")", estimate_rank(K));
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& F) const {
    Eigen::VectorXd x = lu_.solve(F);
    if (lu_.info() != Eigen::Success || !x.allFinite()) {
      throw SolverError("solve_linear: back substitution failed", estimate_rank(*K_));
    }
    // A zero or tiny pivot that slipped through shows up as a large residual.
    const double res = (*K_ * x - F).norm();
    const double scale = assembly::max_abs(*K_) * std::sqrt(static_cast<double>(K_->rows())) * x.norm() + F.norm();
    if (res > 1e-8 * scale) {
      throw SolverError("solve_linear: residual " + std::to_string(res) + " too large, matrix nearly singular",
                        estimate_rank(*K_));
    }
    return x;
  }

 private:
  const SparseMatrix* K_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

/// Direct solve of K x = F.
inline Eigen::VectorXd solve_linear(const SparseMatrix& K, const Eigen::VectorXd& F) {
  return SparseSolver(K).solve(F);
}

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // B-orthonormal columns
};

/// A v = lambda B v for symmetric A and symmetric positive definite B (after the optional shift,
/// applied as B + shift * max|diag B| * I).
inline SymmetricEigen generalized_symmetric_eig(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                                double shift = 0.0, bool vectors = true) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw SolverError("generalized_symmetric_eig: dimension mismatch");
  }
  const double sa = std::max(1e-300, A.cwiseAbs().maxCoeff());
  const double sb = std::max(1e-300, B.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-9 * sa || (B - B.transpose()).cwiseAbs().maxCoeff() > 1e-9 * sb) {
    throw SolverError("generalized_symmetric_eig: matrices must be symmetric");
  }
  Eigen::MatrixXd Bs = 0.5 * (B + B.transpose());
  if (shift > 0.0) Bs.diagonal().array() += shift * Bs.diagonal().cwiseAbs().maxCoeff();
  Eigen::LLT<Eigen::MatrixXd> llt(Bs);
  if (llt.info() != Eigen::Success) throw SolverError("generalized_symmetric_eig: B is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (A + A.transpose()), Bs, vectors ? Eigen::ComputeEigenvectors | Eigen::Ax_lBx : Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw SolverError("generalized_symmetric_eig: eigensolver failed");
  SymmetricEigen out;
  out.values = es.eigenvalues();
  if (vectors) out.vectors = es.eigenvectors();
  return out;
}

struct GeneralEigen {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

/// K v = lambda M v for nonsymmetric K and symmetric positive definite M, reduced to a standard
/// problem with the Cholesky factor of M: L^{-1} K L^{-T} w = lambda w, v = L^{-T} w.
inline GeneralEigen generalized_nonsymmetric_eig(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, bool vectors = true) {
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (M + M.transpose()));
  if (llt.info() != Eigen::Success) throw SolverError("generalized eigenproblem: mass matrix not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(K);
  C = L.triangularView<Eigen::Lower>().solve(C.transpose()).transpose();
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, vectors);
  if (es.info() != Eigen::Success) throw SolverError("generalized eigenproblem: eigensolver failed");
  GeneralEigen out;
  out.values = es.eigenvalues();
  if (vectors) {
    out.vectors = L.transpose().cast<std::complex<double>>().triangularView<Eigen::Upper>().solve(es.eigenvectors());
  }
  return out;
}

inline constexpr int kDenseLimit = 20000;

/// 2-norm condition number sigma_max / sigma_min from a dense SVD.
inline double condition_number(const Eigen::MatrixXd& K) {
  if (K.rows() > kDenseLimit) {
    throw CapabilityError("condition_number: dimension exceeds the dense limit; use an iterative estimate");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(K);
  const auto& s = svd.singularValues();
  if (s.size() == 0) throw SolverError("condition_number: empty matrix");
  const double smin = s[s.size() - 1];
  return smin > 0.0 ? s[0] / smin : std::numeric_limits<double>::infinity();
}

inline double condition_number(const SparseMatrix& K) {
  if (K.rows() > kDenseLimit) {
    throw CapabilityError("condition_number: dimension exceeds the dense limit; use an iterative estimate");
  }
  return condition_number(Eigen::MatrixXd(K));
}

}  // namespace niga::linalg
