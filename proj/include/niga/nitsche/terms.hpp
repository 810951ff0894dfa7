#pragma once

#include <vector>

#include "niga/assembly/elasticity.hpp"
#include "niga/assembly/kirchhoff.hpp"
#include "niga/nitsche/config.hpp"

namespace niga::nitsche {

using assembly::AssembledSystem;
using assembly::SparseMatrix;
using assembly::TripletSink;

/// One quadrature point of a linear Nitsche term: flux operator tau (r x n), trace operator B
/// (r x n), prescribed trace Bbar (r), weight, and the global DoFs of the n local columns.
struct NitschePoint {
  std::vector<int> dofs;
  Eigen::MatrixXd T;
  Eigen::MatrixXd B;
  Eigen::VectorXd Bbar;
  double weight = 0.0;
};

/// Selects which pieces of the linear Nitsche form are assembled.
struct TermParts {
  bool consistency = true;    // -<tau(u), B(v)>
  bool adjoint = true;        // -theta <B(u), tau(v)>
  bool stabilization = true;  // gamma <B(u), B(v)>
  bool rhs = true;            // -theta <Bbar, tau(v)> + gamma <Bbar, B(v)>
};

/// K += -<tau(u),B(v)> - theta <B(u),tau(v)> + gamma <B(u),B(v)>,
/// F += -theta <Bbar,tau(v)> + gamma <Bbar,B(v)>.
inline void add_linear_terms(AssembledSystem& sys, const std::vector<NitschePoint>& pts, double theta, double gamma,
                             TermParts parts = {}) {
  TripletSink sink(sys.size());
  for (const auto& q : pts) {
    Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(q.dofs.size(), q.dofs.size());
    if (parts.consistency) Ke -= q.B.transpose() * q.T;
    if (parts.adjoint) Ke -= theta * q.T.transpose() * q.B;
    if (parts.stabilization && gamma != 0.0) Ke += gamma * q.B.transpose() * q.B;
    sink.add_block(q.dofs, q.dofs, Ke * q.weight);
    if (parts.rhs && q.Bbar.size() > 0) {
      const Eigen::VectorXd fe = (-theta * q.T.transpose() * q.Bbar + gamma * q.B.transpose() * q.Bbar) * q.weight;
      assembly::scatter(sys.F, q.dofs, fe);
    }
  }
  sys.K += sink.build();
  const bool skew_pair = parts.consistency != parts.adjoint || theta != 1.0;
  if (skew_pair && (parts.consistency || parts.adjoint) && !pts.empty()) sys.symmetry = assembly::Symmetry::nonsymmetric;
}

/// Weak Dirichlet points on an elasticity boundary segment. With `normal_only` only u.n = ubar.n is
/// imposed and tau reduces to the normal traction n.sigma(u)n (sliding support).
inline std::vector<NitschePoint> dirichlet_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                  const model::BoundarySegment& seg) {
  std::vector<NitschePoint> out;
  const auto& patch = m.patches.at(seg.patch);
  const Eigen::Matrix3d C = m.materials.at(seg.patch).elasticity_matrix();
  for (const auto& bp : model::boundary_rule(m, seg, assembly::quad_points(patch))) {
    const auto sp = splines::eval_nurbs(patch, bp.uv[0], bp.uv[1]);
    NitschePoint q;
    q.dofs = assembly::local_dofs(dofs, seg.patch, sp.basis);
    const Eigen::MatrixXd T = assembly::traction_matrix(sp, bp.normal, C);
    const Eigen::MatrixXd N = assembly::shape_matrix(sp.R);
    const Eigen::Vector2d ubar = seg.tag.vector ? seg.tag.vector(bp.x) : Eigen::Vector2d::Zero();
    if (seg.tag.normal_only) {
      q.T = bp.normal.transpose() * T;
      q.B = bp.normal.transpose() * N;
      q.Bbar = Eigen::VectorXd::Constant(1, ubar.dot(bp.normal));
    } else {
      q.T = T;
      q.B = N;
      q.Bbar = ubar;
    }
    q.weight = bp.weight;
    out.push_back(std::move(q));
  }
  return out;
}

/// Kirchhoff symmetry (rotation) points: tau = M_nn(u), B(u) = -u_,n, Bbar = prescribed rotation.
inline std::vector<NitschePoint> rotation_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                 const model::BoundarySegment& seg) {
  std::vector<NitschePoint> out;
  const auto& patch = m.patches.at(seg.patch);
  if (patch.degree_u() < 2 || patch.degree_v() < 2) {
    throw CapabilityError("symmetry rotation terms need a C1 (at least quadratic) basis");
  }
  const auto& mat = m.materials.at(seg.patch);
  for (const auto& bp : model::boundary_rule(m, seg, assembly::quad_points(patch))) {
    const auto sp = splines::eval_nurbs(patch, bp.uv[0], bp.uv[1]);
    NitschePoint q;
    q.dofs = assembly::local_dofs(dofs, seg.patch, sp.basis);
    q.T = assembly::normal_moment_row(sp, bp.normal, mat);
    q.B = -assembly::normal_slope_row(sp, bp.normal);
    q.Bbar = Eigen::VectorXd::Constant(1, seg.tag.scalar ? seg.tag.scalar(bp.x) : 0.0);
    q.weight = bp.weight;
    out.push_back(std::move(q));
  }
  return out;
}

/// Interface points: B(u) = [[u]] = u1 - u2, tau(u) = <sigma> = (sigma1 + sigma2) n1 / 2.
inline std::vector<NitschePoint> interface_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                  const model::InterfaceSpec& itf) {
  std::vector<NitschePoint> out;
  const int a = itf.side1.patch, b = itf.side2.patch;
  const auto& pa = m.patches.at(a);
  const auto& pb = m.patches.at(b);
  const Eigen::Matrix3d Ca = m.materials.at(a).elasticity_matrix();
  const Eigen::Matrix3d Cb = m.materials.at(b).elasticity_matrix();
  const int n = std::max(assembly::quad_points(pa), assembly::quad_points(pb));
  for (const auto& ip : model::interface_quadrature(m, itf, n)) {
    const auto s1 = splines::eval_nurbs(pa, ip.uv1[0], ip.uv1[1]);
    const auto s2 = splines::eval_nurbs(pb, ip.uv2[0], ip.uv2[1]);
    NitschePoint q;
    q.dofs = assembly::local_dofs(dofs, a, s1.basis);
    const auto d2 = assembly::local_dofs(dofs, b, s2.basis);
    q.dofs.insert(q.dofs.end(), d2.begin(), d2.end());
    const Eigen::Index n1 = 2 * s1.R.size(), n2 = 2 * s2.R.size();
    q.T.resize(2, n1 + n2);
    q.T << 0.5 * assembly::traction_matrix(s1, ip.normal, Ca), 0.5 * assembly::traction_matrix(s2, ip.normal, Cb);
    q.B.resize(2, n1 + n2);
    q.B << assembly::shape_matrix(s1.R), -assembly::shape_matrix(s2.R);
    q.weight = ip.weight;
    out.push_back(std::move(q));
  }
  return out;
}

/// Point coupling between rod patches a (left, outward normal +1 at its right end) and b (right).
inline NitschePoint rod_coupling_point(const model::MultiPatchModel& m, const model::DofMap& dofs, int a, int b) {
  const auto& pa = m.patches.at(a);
  const auto& pb = m.patches.at(b);
  const auto ca = splines::eval_nurbs_1d(pa, pa.knots_u.back());
  const auto cb = splines::eval_nurbs_1d(pb, pb.knots_u.front());
  if (std::abs(ca.x - cb.x) > 1e-9 * std::max(1.0, std::abs(ca.x))) {
    throw InterfaceError("rod coupling: patch ends do not coincide");
  }
  const double Ea = m.materials.at(a).E, Eb = m.materials.at(b).E;
  NitschePoint q;
  q.dofs = assembly::local_dofs(dofs, a, ca.basis);
  const auto db = assembly::local_dofs(dofs, b, cb.basis);
  q.dofs.insert(q.dofs.end(), db.begin(), db.end());
  const Eigen::Index na = ca.R.size(), nb = cb.R.size();
  q.T.resize(1, na + nb);
  q.T << 0.5 * Ea * ca.dR.transpose(), 0.5 * Eb * cb.dR.transpose();
  q.B.resize(1, na + nb);
  q.B << ca.R.transpose(), -cb.R.transpose();
  q.weight = 1.0;
  return q;
}

/// Weak end condition u = ubar at the start (at_end = false) or end of a rod patch.
inline NitschePoint rod_end_point(const model::MultiPatchModel& m, const model::DofMap& dofs, int patch, bool at_end,
                                  double ubar = 0.0) {
  const auto& p = m.patches.at(patch);
  const auto c = splines::eval_nurbs_1d(p, at_end ? p.knots_u.back() : p.knots_u.front());
  const double n = at_end ? 1.0 : -1.0;
  NitschePoint q;
  q.dofs = assembly::local_dofs(dofs, patch, c.basis);
  q.T = m.materials.at(patch).E * n * c.dR.transpose();
  q.B = c.R.transpose();
  q.Bbar = Eigen::VectorXd::Constant(1, ubar);
  q.weight = 1.0;
  return q;
}

}  // namespace niga::nitsche
