#pragma once

#include <fstream>
#include <iomanip>
#include <string>
#include <vector>

#include "niga/assembly/elasticity.hpp"
#include "niga/linalg/linalg.hpp"
#include "niga/nitsche/gamma.hpp"

namespace niga::contact {

using assembly::SparseMatrix;
using assembly::TripletSink;

/// Projection onto R^- and its generalized derivative (0 at the tie x = 0).
inline double project_Rminus(double x) { return std::min(x, 0.0); }
inline double heaviside_Rminus(double x) { return x < 0.0 ? 1.0 : 0.0; }

/// Plane {x : n.x = offset}; n is the unit normal n1 pointing from the body towards the plane.
struct RigidPlane {
  Eigen::Vector2d normal{0.0, -1.0};
  double offset = 0.0;

  /// g = (x2 - x1).n1 with x2 the point of the plane hit along n1.
  double gap(const Eigen::Vector2d& x) const { return offset - normal.dot(x); }
};

/// One contact quadrature point on a contact surface.
/// sn . U = sigma_n(u) = n1.sigma(u1)n1, un . U = [[u]]_n = (u1 - u2).n1.
struct ContactPoint {
  std::vector<int> dofs;
  Eigen::RowVectorXd sn;
  Eigen::RowVectorXd un;
  double gap = 0.0;
  double weight = 0.0;  // quadrature weight times line measure
  double factor = 1.0;  // 1/2 on each side of the unbiased formulation
  Eigen::Vector2d x;    // undeformed slave point
  Eigen::Vector2d normal;
};

/// Biased contact of a patch side against a rigid plane: sigma_n and u_n use the plane normal.
inline std::vector<ContactPoint> rigid_plane_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                    const model::BoundarySegment& seg, const RigidPlane& plane) {
  std::vector<ContactPoint> out;
  const auto& patch = m.patches.at(seg.patch);
  const Eigen::Matrix3d C = m.materials.at(seg.patch).elasticity_matrix();
  const Eigen::Vector2d n = plane.normal.normalized();
  for (const auto& bp : model::boundary_rule(m, seg, assembly::quad_points(patch))) {
    const auto sp = splines::eval_nurbs(patch, bp.uv[0], bp.uv[1]);
    ContactPoint q;
    q.dofs = assembly::local_dofs(dofs, seg.patch, sp.basis);
    q.sn = n.transpose() * assembly::traction_matrix(sp, n, C);
    q.un = n.transpose() * assembly::shape_matrix(sp.R);
    q.gap = plane.gap(bp.x);
    q.weight = bp.weight;
    q.x = bp.x;
    q.normal = n;
    out.push_back(std::move(q));
  }
  return out;
}

/// Slave-side parameter cuts: slave element boundaries merged with the projections of the master ones,
/// so every quadrature segment sees polynomial data from both bodies.
inline std::vector<double> contact_cuts(const splines::NurbsPatch& ps, model::Side ss, const splines::NurbsPatch& pm,
                                        model::Side sm) {
  const auto& kvs = model::running_knots(ps, ss);
  std::vector<double> mapped;
  for (double b : model::running_knots(pm, sm).breakpoints()) {
    const Eigen::Vector2d uv = model::side_param(pm, sm, b);
    mapped.push_back(model::project_onto_side(ps, ss, splines::eval_point(pm, uv[0], uv[1])).t);
  }
  return model::merge_breakpoints(kvs.breakpoints(), mapped, 1e-10 * (kvs.back() - kvs.front()));
}

/// Two-body points written on the slave side: pairing x1 -> x2 by closest-point projection onto
/// the master side, n1 the slave outward normal, g = (x2 - x1).n1. `scale` is 1 for biased
/// contact and 1/2 for each side of the unbiased formulation.
inline std::vector<ContactPoint> two_body_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                 const model::InterfaceSide& slave, const model::InterfaceSide& master,
                                                 double scale = 1.0, double search_tol = 1e-6) {
  std::vector<ContactPoint> out;
  const auto& ps = m.patches.at(slave.patch);
  const auto& pm = m.patches.at(master.patch);
  const Eigen::Matrix3d C = m.materials.at(slave.patch).elasticity_matrix();
  const int nq = std::max(assembly::quad_points(ps), assembly::quad_points(pm));
  const auto cuts = contact_cuts(ps, slave.side, pm, master.side);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto rule = model::gauss_rule(nq, cuts[k], cuts[k + 1]);
    for (int i = 0; i < rule.size(); ++i) {
      const model::SideEval e = model::eval_side(ps, slave.side, rule.points[i]);
      const auto sp = splines::eval_nurbs(ps, e.uv[0], e.uv[1]);
      const auto proj = model::project_onto_side(pm, master.side, e.x);
      const Eigen::Vector2d n = e.normal;
      // Pairing must land on the master surface (not just its end point) for the point to count.
      const Eigen::Vector2d d = proj.point - e.x;
      if ((d - d.dot(n) * n).norm() > search_tol * std::max(1.0, e.x.norm())) continue;
      const Eigen::Vector2d uvm = model::side_param(pm, master.side, proj.t);
      const auto spm = splines::eval_nurbs(pm, uvm[0], uvm[1]);
      ContactPoint q;
      q.dofs = assembly::local_dofs(dofs, slave.patch, sp.basis);
      const auto dm = assembly::local_dofs(dofs, master.patch, spm.basis);
      q.dofs.insert(q.dofs.end(), dm.begin(), dm.end());
      const Eigen::Index ns = 2 * sp.R.size(), nm = 2 * spm.R.size();
      q.sn = Eigen::RowVectorXd::Zero(ns + nm);
      q.sn.head(ns) = n.transpose() * assembly::traction_matrix(sp, n, C);
      q.un.resize(ns + nm);
      q.un << n.transpose() * assembly::shape_matrix(sp.R), -n.transpose() * assembly::shape_matrix(spm.R);
      q.gap = d.dot(n);
      q.weight = rule.weights[i] * e.dx_dt.norm();
      q.factor = scale;
      q.x = e.x;
      q.normal = n;
      out.push_back(std::move(q));
    }
  }
  if (out.empty()) throw InterfaceError("contact pairing: no slave point projects onto the master surface");
  return out;
}

/// Unbiased points: both sides act as slave with weight 1/2.
inline std::vector<ContactPoint> unbiased_points(const model::MultiPatchModel& m, const model::DofMap& dofs,
                                                 const model::InterfaceSide& a, const model::InterfaceSide& b) {
  auto pts = two_body_points(m, dofs, a, b, 0.5);
  auto other = two_body_points(m, dofs, b, a, 0.5);
  pts.insert(pts.end(), other.begin(), other.end());
  return pts;
}

/// The flux operator sigma_n as Nitsche points, for the gamma0 eigenproblem.
inline std::vector<nitsche::NitschePoint> flux_points(const std::vector<ContactPoint>& pts) {
  std::vector<nitsche::NitschePoint> out;
  for (const auto& q : pts) out.push_back({q.dofs, q.sn, q.un, {}, q.weight});
  return out;
}

/// Reference gamma0 = multiplier * lambda_max of the sigma_n flux eigenproblem against A.
inline double contact_gamma_reference(const SparseMatrix& A, const std::vector<ContactPoint>& pts,
                                      const std::vector<char>& fixed = {}, double multiplier = 2.0) {
  return nitsche::estimate_gamma0(A, flux_points(pts), multiplier, fixed).gamma0;
}

/// Linear part, contact points and (theta, gamma0) of a Nitsche contact problem.
struct ContactProblem {
  SparseMatrix K;      // bulk plus linear Nitsche terms
  Eigen::VectorXd F;
  std::vector<ContactPoint> points;
  double theta = -1.0;
  double gamma = 1.0;
};

/// R(u) = K u - F - theta/gamma int sn(u) sn(v) + 1/gamma int [sn(u) - gamma(un(u) - g)]_- (theta sn(v) - gamma un(v)).
inline Eigen::VectorXd contact_residual(const ContactProblem& pb, const Eigen::VectorXd& u,
                                        std::vector<char>* active = nullptr) {
  if (!(pb.gamma > 0.0)) throw ConfigError("contact: gamma0 must be positive");
  Eigen::VectorXd R = pb.K * u - pb.F;
  if (active) active->assign(pb.points.size(), 0);
  for (std::size_t k = 0; k < pb.points.size(); ++k) {
    const auto& q = pb.points[k];
    double s = 0.0, n = 0.0;
    for (std::size_t i = 0; i < q.dofs.size(); ++i) {
      s += q.sn[i] * u[q.dofs[i]];
      n += q.un[i] * u[q.dofs[i]];
    }
    const double arg = s - pb.gamma * (n - q.gap);
    const double proj = project_Rminus(arg);
    if (active) (*active)[k] = heaviside_Rminus(arg) > 0.0;
    for (std::size_t i = 0; i < q.dofs.size(); ++i) {
      R[q.dofs[i]] += q.factor * q.weight * (-pb.theta / pb.gamma * s * q.sn[i] +
                                  proj / pb.gamma * (pb.theta * q.sn[i] - pb.gamma * q.un[i]));
    }
  }
  return R;
}

/// Generalized Jacobian of contact_residual (Heaviside factor per point).
inline SparseMatrix contact_tangent(const ContactProblem& pb, const Eigen::VectorXd& u) {
  TripletSink sink(static_cast<int>(pb.K.rows()));
  for (const auto& q : pb.points) {
    double s = 0.0, n = 0.0;
    for (std::size_t i = 0; i < q.dofs.size(); ++i) {
      s += q.sn[i] * u[q.dofs[i]];
      n += q.un[i] * u[q.dofs[i]];
    }
    const double H = heaviside_Rminus(s - pb.gamma * (n - q.gap));
    Eigen::MatrixXd Ke = -pb.theta / pb.gamma * q.sn.transpose() * q.sn;
    if (H > 0.0) Ke += (1.0 / pb.gamma) * (pb.theta * q.sn - pb.gamma * q.un).transpose() * (q.sn - pb.gamma * q.un);
    sink.add_block(q.dofs, q.dofs, Ke * (q.factor * q.weight));
  }
  return pb.K + sink.build();
}

struct NewtonOptions {
  double tol = 1e-9;
  int max_iter = 100;
};

struct ContactState {
  Eigen::VectorXd u;
  std::vector<char> active;
  int iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  std::string message;
};

/// Semi-smooth Newton: u <- u - J(u)^{-1} R(u). Converged when the active set did not change in the
/// last step and |R| <= tol * (|F| + |J|_inf |u|), the normwise backward error of the last tangent
/// solve. With |F| alone the target sits below the round-off floor of the tangent solve on fine
/// meshes with small gamma0.
inline ContactState semismooth_newton(const ContactProblem& pb, const NewtonOptions& opt = {},
                                      const Eigen::VectorXd& initial = {}) {
  ContactState st;
  st.u = initial.size() ? initial : Eigen::VectorXd::Zero(pb.F.size());
  std::vector<char> prev;
  Eigen::VectorXd R = contact_residual(pb, st.u, &st.active);
  st.residual_history.push_back(R.norm());
  if (R.norm() <= opt.tol * pb.F.norm()) {
    st.converged = true;
    return st;
  }
  while (st.iterations < opt.max_iter) {
    const SparseMatrix J = contact_tangent(pb, st.u);
    Eigen::VectorXd du;
    try {
      du = linalg::solve_linear(J, -R);
    } catch (const SolverError& e) {
      st.message = std::string("tangent solve failed: ") + e.what();
      return st;
    }
    st.u += du;
    ++st.iterations;
    prev = st.active;
    R = contact_residual(pb, st.u, &st.active);
    st.residual_history.push_back(R.norm());
    if (!std::isfinite(R.norm())) {
      st.message = "residual is not finite";
      return st;
    }
    const double scale = pb.F.norm() + linalg::norm_inf(J) * st.u.norm();
    if (st.active == prev && R.norm() <= opt.tol * scale) {
      st.converged = true;
      return st;
    }
  }
  st.message = "maximum number of semi-smooth Newton iterations reached";
  return st;
}

/// Pointwise quantities at the contact points for a given displacement.
struct ContactSample {
  Eigen::Vector2d x;
  double sigma_n = 0.0;
  double gap_residual = 0.0;  // u_n - g
  double multiplier = 0.0;    // [sigma_n - gamma (u_n - g)]_-
  double weight = 0.0;
};

inline std::vector<ContactSample> sample_contact(const ContactProblem& pb, const Eigen::VectorXd& u) {
  std::vector<ContactSample> out;
  for (const auto& q : pb.points) {
    double s = 0.0, n = 0.0;
    for (std::size_t i = 0; i < q.dofs.size(); ++i) {
      s += q.sn[i] * u[q.dofs[i]];
      n += q.un[i] * u[q.dofs[i]];
    }
    out.push_back({q.x, s, n - q.gap, project_Rminus(s - pb.gamma * (n - q.gap)), q.factor * q.weight});
  }
  return out;
}

/// Largest violations of sigma_n <= 0, u_n - g <= 0 and sigma_n (u_n - g) = 0 over the points.
struct KktReport {
  double max_sigma_n = 0.0;
  double max_gap_residual = 0.0;
  double max_complementarity = 0.0;
};

inline KktReport kkt_check(const ContactProblem& pb, const Eigen::VectorXd& u) {
  KktReport r{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& s : sample_contact(pb, u)) {
    r.max_sigma_n = std::max(r.max_sigma_n, s.sigma_n);
    r.max_gap_residual = std::max(r.max_gap_residual, s.gap_residual);
    r.max_complementarity = std::max(r.max_complementarity, std::abs(s.sigma_n * s.gap_residual));
  }
  return r;
}

struct PressureSample {
  double x;
  double pressure;  // -sigma_n
};

/// Pressure p = -sigma_n at the contact points, ordered by x.
inline std::vector<PressureSample> contact_pressure_profile(const ContactProblem& pb, const Eigen::VectorXd& u) {
  std::vector<PressureSample> out;
  for (const auto& s : sample_contact(pb, u)) out.push_back({s.x.x(), -s.sigma_n});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

inline void write_pressure_csv(std::ostream& os, const std::vector<PressureSample>& p) {
  os << "x,pressure\n" << std::setprecision(12);
  for (const auto& s : p) os << s.x << ',' << s.pressure << '\n';
}

/// Resultant of the contact pressure, int -sigma_n ds.
inline double contact_force(const ContactProblem& pb, const Eigen::VectorXd& u) {
  double f = 0.0;
  for (const auto& s : sample_contact(pb, u)) f -= s.sigma_n * s.weight;
  return f;
}

}  // namespace niga::contact
