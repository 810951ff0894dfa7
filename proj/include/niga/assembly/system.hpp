#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "niga/model/dof_map.hpp"

namespace niga::assembly {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

enum class Symmetry { symmetric, nonsymmetric };

/// Global operator and load vector.
struct AssembledSystem {
  SparseMatrix K;
  Eigen::VectorXd F;
  model::DofMap dofs;
  Symmetry symmetry = Symmetry::symmetric;

  int size() const { return static_cast<int>(F.size()); }
};

inline double max_abs(const SparseMatrix& A) {
  double m = 0.0;
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

/// max |A - A^T| / max |A| (0 for the zero matrix).
inline double asymmetry(const SparseMatrix& A) {
  const double m = max_abs(A);
  if (m == 0.0) return 0.0;
  const SparseMatrix D = A - SparseMatrix(A.transpose());
  return max_abs(D) / m;
}

/// Staged triplet list; dense element blocks are scattered through index vectors.
class TripletSink {
 public:
  explicit TripletSink(int n) : n_(n) {}

  void add(int i, int j, double v) {
    if (v != 0.0) t_.emplace_back(i, j, v);
  }

  template <class Mat>
  void add_block(const std::vector<int>& rows, const std::vector<int>& cols, const Mat& block) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < rows.size(); ++i) add(rows[i], cols[j], block(i, j));
    }
  }

  void append(const TripletSink& other) { t_.insert(t_.end(), other.t_.begin(), other.t_.end()); }

  SparseMatrix build() const {
    SparseMatrix A(n_, n_);
    A.setFromTriplets(t_.begin(), t_.end());
    A.makeCompressed();
    return A;
  }

  int size() const noexcept { return n_; }

 private:
  int n_;
  std::vector<Triplet> t_;
};

/// Sums quadrature-point blocks that share one DoF set and emits them to the sink once, so the
/// triplet count scales with elements rather than with quadrature points.
class ElementBlock {
 public:
  explicit ElementBlock(TripletSink& sink) : sink_(&sink) {}

  void add(const std::vector<int>& idx, const Eigen::MatrixXd& Ke) {
    if (idx != idx_) {
      flush();
      idx_ = idx;
      K_ = Ke;
    } else {
      K_ += Ke;
    }
  }

  void flush() {
    if (!idx_.empty()) sink_->add_block(idx_, idx_, K_);
    idx_.clear();
  }

 private:
  TripletSink* sink_;
  std::vector<int> idx_;
  Eigen::MatrixXd K_;
};

inline void scatter(Eigen::VectorXd& F, const std::vector<int>& rows, const Eigen::VectorXd& f) {
  for (std::size_t i = 0; i < rows.size(); ++i) F[rows[i]] += f[i];
}

}  // namespace niga::assembly

namespace niga::assembly {

/// Strongly imposes x_i = 0 for flagged DoFs: rows and columns are cleared and a unit-scaled
/// diagonal entry keeps the matrix nonsingular.
inline void eliminate_dofs(SparseMatrix& K, Eigen::VectorXd& F, const std::vector<char>& fixed) {
  const double diag = std::max(1.0, max_abs(K));
  for (int k = 0; k < K.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(K, k); it; ++it) {
      if (fixed[it.row()] || fixed[it.col()]) it.valueRef() = 0.0;
    }
  }
  TripletSink sink(static_cast<int>(K.rows()));
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i]) {
      sink.add(static_cast<int>(i), static_cast<int>(i), diag);
      F[i] = 0.0;
    }
  }
  K += sink.build();
  K.prune(0.0);
}

}  // namespace niga::assembly
