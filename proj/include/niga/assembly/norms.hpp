#pragma once

#include <functional>

#include "niga/assembly/elasticity.hpp"
#include "niga/assembly/kirchhoff.hpp"

namespace niga::assembly {

/// Relative errors plus the absolute pieces they are built from.
struct ErrorNorms {
  double l2 = 0.0;
  double energy = 0.0;
  double l2_abs = 0.0;
  double energy_abs = 0.0;
  double ref_l2 = 0.0;
  double ref_energy = 0.0;
};

struct ElasticReference {
  model::VectorField value;
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> gradient;  // (i,j) = du_i/dx_j
};

struct PlateReference {
  model::ScalarField value;
  std::function<Eigen::Vector3d(const Eigen::Vector2d&)> hessian;  // (xx, xy, yy)
};

namespace detail {

/// Sums (err_l2^2, ref_l2^2, err_E^2, ref_E^2) over the elements of `quad_model` with p+2 points.
template <class PointFn>
ErrorNorms accumulate_errors(const model::MultiPatchModel& quad_model, PointFn&& fn) {
  double e2 = 0, r2 = 0, eE = 0, rE = 0;
  for (int p = 0; p < quad_model.num_patches(); ++p) {
    const auto& patch = quad_model.patches[p];
    const int n = patch.max_degree() + 2;
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, n)) {
        const auto sp = splines::eval_nurbs(patch, q.u, q.v);
        const Eigen::Vector4d c = fn(p, sp) * (q.w * std::abs(sp.det));
        e2 += c[0];
        r2 += c[1];
        eE += c[2];
        rE += c[3];
      }
    }
  }
  if (!(r2 > 0.0) || !(rE > 0.0)) throw DomainError("error norms: reference has zero norm");
  ErrorNorms out;
  out.l2_abs = std::sqrt(e2);
  out.energy_abs = std::sqrt(std::max(0.0, eE));
  out.ref_l2 = std::sqrt(r2);
  out.ref_energy = std::sqrt(rE);
  out.l2 = out.l2_abs / out.ref_l2;
  out.energy = out.energy_abs / out.ref_energy;
  return out;
}

inline double strain_energy_density(const Eigen::Matrix2d& g, const Eigen::Matrix3d& C) {
  const Eigen::Vector3d eps(g(0, 0), g(1, 1), g(0, 1) + g(1, 0));
  return eps.dot(C * eps);
}

inline double bending_energy_density(const Eigen::Vector3d& h, const Eigen::Matrix3d& Db) {
  const Eigen::Vector3d k(h[0], h[2], 2.0 * h[1]);
  return k.dot(Db * k);
}

}  // namespace detail

/// Relative L2 and energy errors of a displacement field against a closed-form reference.
inline ErrorNorms error_norms(const FieldSolution& uh, const ElasticReference& ref) {
  const auto& m = *uh.model;
  return detail::accumulate_errors(m, [&](int p, const splines::SurfacePoint& sp) {
    const Eigen::Matrix3d C = m.materials[p].elasticity_matrix();
    const Eigen::Vector2d u = ref.value(sp.x);
    const Eigen::Matrix2d g = ref.gradient(sp.x);
    const Eigen::Vector2d du = uh.vector_value(p, sp) - u;
    const Eigen::Matrix2d dg = uh.vector_gradient(p, sp) - g;
    return Eigen::Vector4d(du.squaredNorm(), u.squaredNorm(), detail::strain_energy_density(dg, C),
                           detail::strain_energy_density(g, C));
  });
}

/// Relative L2 and H2-type energy errors of a plate deflection.
inline ErrorNorms error_norms(const FieldSolution& uh, const PlateReference& ref) {
  const auto& m = *uh.model;
  return detail::accumulate_errors(m, [&](int p, const splines::SurfacePoint& sp) {
    const Eigen::Matrix3d Db = m.materials[p].bending_matrix();
    const double u = ref.value(sp.x);
    const Eigen::Vector3d h = ref.hessian(sp.x);
    const double du = uh.scalar_value(p, sp) - u;
    const Eigen::Vector3d dh = uh.scalar_hessian(p, sp) - h;
    return Eigen::Vector4d(du * du, u * u, detail::bending_energy_density(dh, Db),
                           detail::bending_energy_density(h, Db));
  });
}

/// Errors of a displacement field against a finer reference field on a nested mesh of the same
/// geometry (patch i of both models share the parameterization). Integration runs on the fine mesh.
inline ErrorNorms error_norms_nested(const FieldSolution& uh, const FieldSolution& ref) {
  const auto& fine = *ref.model;
  return detail::accumulate_errors(fine, [&](int p, const splines::SurfacePoint& sp) {
    const Eigen::Matrix3d C = fine.materials[p].elasticity_matrix();
    const auto spc = splines::eval_nurbs(uh.model->patches.at(p), sp.u, sp.v);
    const Eigen::Vector2d u = ref.vector_value(p, sp);
    const Eigen::Matrix2d g = ref.vector_gradient(p, sp);
    const Eigen::Vector2d du = uh.vector_value(p, spc) - u;
    const Eigen::Matrix2d dg = uh.vector_gradient(p, spc) - g;
    return Eigen::Vector4d(du.squaredNorm(), u.squaredNorm(), detail::strain_energy_density(dg, C),
                           detail::strain_energy_density(g, C));
  });
}

}  // namespace niga::assembly
