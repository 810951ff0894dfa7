#pragma once

#include "niga/assembly/field.hpp"

namespace niga::assembly {

/// Rod stiffness int E u' v' and consistent mass int rho u v over all 1D patches.
struct RodMatrices {
  SparseMatrix K;
  SparseMatrix M;
};

inline RodMatrices assemble_rod(const model::MultiPatchModel& m, const model::DofMap& dofs) {
  TripletSink sk(dofs.size()), sm(dofs.size());
  for (int p = 0; p < m.num_patches(); ++p) {
    const auto& patch = m.patches[p];
    if (patch.param_dim() != 1) throw DomainError("rod assembly: patch is not 1D");
    const double E = m.materials[p].E;
    const double rho = m.materials[p].density;
    const int n = patch.degree_u() + 1;
    for (const auto& e : model::patch_elements(patch, p)) {
      for (const auto& q : model::element_points(e, n, false)) {
        const auto cp = splines::eval_nurbs_1d(patch, q.u);
        const double J = std::abs(cp.dx) * q.w;
        const auto idx = local_dofs(dofs, p, cp.basis);
        sk.add_block(idx, idx, Eigen::MatrixXd(E * J * cp.dR * cp.dR.transpose()));
        sm.add_block(idx, idx, Eigen::MatrixXd(rho * J * cp.R * cp.R.transpose()));
      }
    }
  }
  return {sk.build(), sm.build()};
}

inline SparseMatrix assemble_stiffness_rod(const model::MultiPatchModel& m, const model::DofMap& d) {
  return assemble_rod(m, d).K;
}

inline SparseMatrix assemble_mass_rod(const model::MultiPatchModel& m, const model::DofMap& d) {
  return assemble_rod(m, d).M;
}

}  // namespace niga::assembly
