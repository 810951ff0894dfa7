#pragma once

#include "niga/nitsche/gamma.hpp"

namespace niga::nitsche {

/// All Nitsche points of the segments carrying `kind` (dirichlet or symmetry_rotation).
inline std::vector<NitschePoint> collect_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                model::TagKind kind) {
  std::vector<NitschePoint> out;
  for (const auto& seg : m.boundary) {
    if (seg.tag.kind != kind) continue;
    auto pts = kind == model::TagKind::symmetry_rotation ? rotation_points(m, dofs, seg) : dirichlet_points(m, dofs, seg);
    out.insert(out.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
  }
  return out;
}

inline std::vector<NitschePoint> collect_interface_points(const model::MultiPatchModel& m, const model::DofMap& dofs) {
  std::vector<NitschePoint> out;
  for (const auto& itf : m.interfaces) {
    auto pts = interface_points(m, dofs, itf);
    out.insert(out.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
  }
  return out;
}

/// Adds the terms for `pts` with gamma0 from the policy (eigenproblem against the bulk form A).
/// Returns the gamma0 used.
inline double add_terms(AssembledSystem& sys, const SparseMatrix& A, const std::vector<NitschePoint>& pts,
                        const NitscheConfig& cfg, TermParts parts = {}, const std::vector<char>& fixed = {}) {
  const double gamma = pts.empty() ? 0.0 : resolve_gamma(cfg, A, pts, fixed);
  add_linear_terms(sys, pts, cfg.theta, gamma, parts);
  return gamma;
}

/// Weak Dirichlet terms on every dirichlet-tagged segment of an elasticity model.
inline double add_dirichlet_terms(AssembledSystem& sys, const SparseMatrix& A, const model::MultiPatchModel& m,
                                  const NitscheConfig& cfg, TermParts parts = {}) {
  return add_terms(sys, A, collect_points(m, sys.dofs, model::TagKind::dirichlet), cfg, parts);
}

/// Kirchhoff rotation (symmetry) terms on every symmetry_rotation-tagged segment.
inline double add_symmetry_rotation_terms(AssembledSystem& sys, const SparseMatrix& A, const model::MultiPatchModel& m,
                                          const NitscheConfig& cfg, const std::vector<char>& fixed = {},
                                          TermParts parts = {}) {
  return add_terms(sys, A, collect_points(m, sys.dofs, model::TagKind::symmetry_rotation), cfg, parts, fixed);
}

/// Patch coupling terms on every interface of the model.
inline double add_interface_coupling_terms(AssembledSystem& sys, const SparseMatrix& A, const model::MultiPatchModel& m,
                                           const NitscheConfig& cfg, TermParts parts = {}) {
  return add_terms(sys, A, collect_interface_points(m, sys.dofs), cfg, parts);
}

}  // namespace niga::nitsche
