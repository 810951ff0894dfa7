#pragma once

#include <functional>
#include <vector>

#include <Eigen/SparseCholesky>

#include "niga/assembly/system.hpp"
#include "niga/model/elements.hpp"

namespace niga::assembly {

/// Global DoF indices of the basis functions active at a surface point (components interleaved).
inline std::vector<int> local_dofs(const model::DofMap& dofs, int patch, const std::vector<int>& basis) {
  const int c = dofs.components();
  std::vector<int> out(basis.size() * c);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (int d = 0; d < c; ++d) out[c * k + d] = dofs(patch, basis[k], d);
  }
  return out;
}

/// Discrete field u^h = sum_A R_A u_A over a multi-patch model.
struct FieldSolution {
  const model::MultiPatchModel* model = nullptr;
  model::DofMap dofs;
  Eigen::VectorXd coeffs;

  FieldSolution() = default;
  FieldSolution(const model::MultiPatchModel& m, model::DofMap d, Eigen::VectorXd c)
      : model(&m), dofs(std::move(d)), coeffs(std::move(c)) {
    if (coeffs.size() != dofs.size()) throw DomainError("field: coefficient count does not match DoF map");
  }

  int components() const { return dofs.components(); }

  /// Local coefficient vector at a surface point (length components * nb).
  Eigen::VectorXd local(int patch, const std::vector<int>& basis) const {
    const auto idx = local_dofs(dofs, patch, basis);
    Eigen::VectorXd out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = coeffs[idx[i]];
    return out;
  }

  Eigen::Vector2d vector_value(int patch, const splines::SurfacePoint& sp) const {
    const auto c = local(patch, sp.basis);
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    for (Eigen::Index k = 0; k < sp.R.size(); ++k) v += sp.R[k] * c.segment<2>(2 * k);
    return v;
  }

  /// grad(i,j) = du_i/dx_j.
  Eigen::Matrix2d vector_gradient(int patch, const splines::SurfacePoint& sp) const {
    const auto c = local(patch, sp.basis);
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    for (Eigen::Index k = 0; k < sp.R.size(); ++k) g += c.segment<2>(2 * k) * sp.grad.row(k);
    return g;
  }

  double scalar_value(int patch, const splines::SurfacePoint& sp) const {
    return sp.R.dot(local(patch, sp.basis));
  }

  Eigen::Vector2d scalar_gradient(int patch, const splines::SurfacePoint& sp) const {
    return sp.grad.transpose() * local(patch, sp.basis);
  }

  /// (u_xx, u_xy, u_yy).
  Eigen::Vector3d scalar_hessian(int patch, const splines::SurfacePoint& sp) const {
    return sp.hess.transpose() * local(patch, sp.basis);
  }

  Eigen::Vector2d vector_at(int patch, double u, double v) const {
    return vector_value(patch, splines::eval_nurbs(model->patches.at(patch), u, v));
  }

  double scalar_at(int patch, double u, double v) const {
    return scalar_value(patch, splines::eval_nurbs(model->patches.at(patch), u, v));
  }

  /// 1D patches (rods).
  double rod_value(int patch, double u) const {
    const auto cp = splines::eval_nurbs_1d(model->patches.at(patch), u);
    return cp.R.dot(local(patch, cp.basis));
  }
};

}  // namespace niga::assembly

namespace niga::assembly {

/// L2 projection of a closed-form field onto the spline space of a 2D multi-patch model
/// (patch by patch, components independently). Fields in the space are reproduced exactly.
inline FieldSolution l2_project(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f) {
  const int c = dofs.components();
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dofs.size());
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    const int n = patch.size();
    std::vector<Triplet> t;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, c);
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, patch.max_degree() + 2)) {
        const auto sp = splines::eval_nurbs(patch, q.u, q.v);
        const double w = q.w * std::abs(sp.det);
        const Eigen::Vector2d val = f(sp.x);
        for (std::size_t a = 0; a < sp.basis.size(); ++a) {
          for (std::size_t b = 0; b < sp.basis.size(); ++b) t.emplace_back(sp.basis[a], sp.basis[b], w * sp.R[a] * sp.R[b]);
          for (int d = 0; d < c; ++d) rhs(sp.basis[a], d) += w * sp.R[a] * val[d];
        }
      }
    }
    SparseMatrix M(n, n);
    M.setFromTriplets(t.begin(), t.end());
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(M);
    const Eigen::MatrixXd sol = ldlt.solve(rhs);
    for (int A = 0; A < n; ++A) {
      for (int d = 0; d < c; ++d) coeffs[dofs(p, A, d)] = sol(A, d);
    }
  }
  return FieldSolution(m, dofs, std::move(coeffs));
}

}  // namespace niga::assembly
