#pragma once

#include "niga/assembly/elasticity.hpp"

namespace niga::assembly {

/// int b . v over every patch (vector models).
inline Eigen::VectorXd assemble_body_force(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                           const model::VectorField& b) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(dofs.size());
  if (!b) return F;
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, quad_points(patch))) {
        const auto sp = splines::eval_nurbs(patch, q.u, q.v);
        const Eigen::VectorXd fe = shape_matrix(sp.R).transpose() * b(sp.x) * (q.w * std::abs(sp.det));
        scatter(F, local_dofs(dofs, p, sp.basis), fe);
      }
    }
  }
  return F;
}

/// int f v over every patch (scalar models such as the plate).
inline Eigen::VectorXd assemble_scalar_load(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                            const model::ScalarField& f) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(dofs.size());
  if (!f) return F;
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, quad_points(patch))) {
        const auto sp = splines::eval_nurbs(patch, q.u, q.v);
        scatter(F, local_dofs(dofs, p, sp.basis), Eigen::VectorXd(sp.R * (f(sp.x) * q.w * std::abs(sp.det))));
      }
    }
  }
  return F;
}

/// int_{Gamma_N} tbar . v over the neumann-tagged segments.
inline Eigen::VectorXd assemble_neumann(const model::MultiPatchModel& m, const model::DofMap& dofs) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(dofs.size());
  for (const auto& seg : m.boundary) {
    if (seg.tag.kind != model::TagKind::neumann) continue;
    const auto& patch = m.patches[seg.patch];
    for (const auto& bp : model::boundary_rule(m, seg, quad_points(patch))) {
      const auto sp = splines::eval_nurbs(patch, bp.uv[0], bp.uv[1]);
      const Eigen::Vector2d t = seg.tag.vector(bp.x);
      scatter(F, local_dofs(dofs, seg.patch, sp.basis), Eigen::VectorXd(shape_matrix(sp.R).transpose() * t * bp.weight));
    }
  }
  return F;
}

/// L(v) = int b . v + int_{Gamma_N} tbar . v.
inline Eigen::VectorXd assemble_load(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                     const model::VectorField& b) {
  return assemble_body_force(m, dofs, b) + assemble_neumann(m, dofs);
}

}  // namespace niga::assembly
