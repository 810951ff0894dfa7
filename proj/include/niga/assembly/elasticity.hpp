#pragma once

#include "niga/assembly/field.hpp"

namespace niga::assembly {

/// Strain-displacement matrix (e_xx, e_yy, 2 e_xy) x (2 nb), components interleaved.
inline Eigen::MatrixXd strain_matrix(const splines::SurfacePoint& sp) {
  const Eigen::Index nb = sp.R.size();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, 2 * nb);
  for (Eigen::Index k = 0; k < nb; ++k) {
    B(0, 2 * k) = sp.grad(k, 0);
    B(1, 2 * k + 1) = sp.grad(k, 1);
    B(2, 2 * k) = sp.grad(k, 1);
    B(2, 2 * k + 1) = sp.grad(k, 0);
  }
  return B;
}

/// Displacement shape matrix 2 x (2 nb).
inline Eigen::MatrixXd shape_matrix(const Eigen::VectorXd& R) {
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(2, 2 * R.size());
  for (Eigen::Index k = 0; k < R.size(); ++k) {
    N(0, 2 * k) = R[k];
    N(1, 2 * k + 1) = R[k];
  }
  return N;
}

/// Traction operator sigma(u) n as a 2 x (2 nb) matrix.
inline Eigen::MatrixXd traction_matrix(const splines::SurfacePoint& sp, const Eigen::Vector2d& n,
                                       const Eigen::Matrix3d& C) {
  Eigen::Matrix<double, 2, 3> Nn;
  Nn << n.x(), 0.0, n.y(), 0.0, n.y(), n.x();
  return Nn * C * strain_matrix(sp);
}

/// Stress (s_xx, s_yy, s_xy) from a displacement gradient.
inline Eigen::Vector3d stress_from_gradient(const Eigen::Matrix2d& g, const Eigen::Matrix3d& C) {
  return C * Eigen::Vector3d(g(0, 0), g(1, 1), g(0, 1) + g(1, 0));
}

inline Eigen::Matrix2d stress_tensor(const Eigen::Vector3d& s) {
  Eigen::Matrix2d S;
  S << s[0], s[2], s[2], s[1];
  return S;
}

inline int quad_points(const splines::NurbsPatch& p) { return p.max_degree() + 1; }

/// Bulk elasticity operator a(u,v) = int sigma(u) : eps(v).
inline SparseMatrix assemble_elasticity(const model::MultiPatchModel& m, const model::DofMap& dofs, int extra_points = 0) {
  TripletSink sink(dofs.size());
  ElementBlock block(sink);
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    const Eigen::Matrix3d C = m.materials[p].elasticity_matrix();
    const int n = quad_points(patch) + extra_points;
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, n)) {
        const auto sp = splines::eval_nurbs(patch, q.u, q.v);
        const Eigen::MatrixXd B = strain_matrix(sp);
        const Eigen::MatrixXd Ke = B.transpose() * C * B * (q.w * std::abs(sp.det));
        const auto idx = local_dofs(dofs, p, sp.basis);
        block.add(idx, Ke);
      }
    }
  }
  block.flush();
  return sink.build();
}

/// Cauchy stress (s_xx, s_yy, s_xy) of a displacement field at (u,v).
inline Eigen::Vector3d compute_stress(const FieldSolution& f, int patch, double u, double v) {
  const auto sp = splines::eval_nurbs(f.model->patches.at(patch), u, v);
  return stress_from_gradient(f.vector_gradient(patch, sp), f.model->materials.at(patch).elasticity_matrix());
}

}  // namespace niga::assembly
