#pragma once

#include "niga/assembly/field.hpp"

namespace niga::assembly {

/// Curvature operator (u_xx, u_yy, 2 u_xy) x nb.
inline Eigen::MatrixXd curvature_matrix(const splines::SurfacePoint& sp) {
  Eigen::MatrixXd B(3, sp.R.size());
  B.row(0) = sp.hess.col(0).transpose();
  B.row(1) = sp.hess.col(2).transpose();
  B.row(2) = 2.0 * sp.hess.col(1).transpose();
  return B;
}

/// Normal bending moment M_nn = -D[(1-nu) n.H.n + nu lap u] as a row over the local basis.
inline Eigen::RowVectorXd normal_moment_row(const splines::SurfacePoint& sp, const Eigen::Vector2d& n,
                                            const model::Material& mat) {
  const double D = mat.flexural_rigidity();
  const double nu = mat.nu;
  const Eigen::VectorXd nHn = sp.hess.col(0) * n.x() * n.x() + 2.0 * sp.hess.col(1) * n.x() * n.y() +
                              sp.hess.col(2) * n.y() * n.y();
  const Eigen::VectorXd lap = sp.hess.col(0) + sp.hess.col(2);
  return (-D * ((1.0 - nu) * nHn + nu * lap)).transpose();
}

/// Normal rotation u_,n as a row over the local basis.
inline Eigen::RowVectorXd normal_slope_row(const splines::SurfacePoint& sp, const Eigen::Vector2d& n) {
  return (sp.grad * n).transpose();
}

/// Bending operator D[nu lap u lap v + (1-nu) H(u):H(v)].
inline SparseMatrix assemble_kirchhoff(const model::MultiPatchModel& m, const model::DofMap& dofs) {
  TripletSink sink(dofs.size());
  ElementBlock block(sink);
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    if (patch.degree_u() < 2 || patch.degree_v() < 2) {
      throw CapabilityError("kirchhoff plate: basis must be at least quadratic (C1)");
    }
    const Eigen::Matrix3d Db = m.materials[p].bending_matrix();
    const int n = patch.max_degree() + 1;
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, n)) {
        const auto sp = splines::eval_nurbs(patch, q.u, q.v);
        const Eigen::MatrixXd B = curvature_matrix(sp);
        const Eigen::MatrixXd Ke = B.transpose() * Db * B * (q.w * std::abs(sp.det));
        const auto idx = local_dofs(dofs, p, sp.basis);
        block.add(idx, Ke);
      }
    }
  }
  block.flush();
  return sink.build();
}

/// Plate moments (M_xx, M_yy, M_xy) = -Db kappa at (u,v), with the twisting moment halved back.
inline Eigen::Vector3d compute_moments(const FieldSolution& f, int patch, double u, double v) {
  const auto sp = splines::eval_nurbs(f.model->patches.at(patch), u, v);
  const Eigen::Vector3d h = f.scalar_hessian(patch, sp);
  const model::Material& mat = f.model->materials.at(patch);
  const double D = mat.flexural_rigidity();
  return {-D * (h[0] + mat.nu * h[2]), -D * (h[2] + mat.nu * h[0]), -D * (1.0 - mat.nu) * h[1]};
}

}  // namespace niga::assembly
