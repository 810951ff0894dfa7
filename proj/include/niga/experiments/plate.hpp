#pragma once

#include <numbers>

#include "niga/assembly/kirchhoff.hpp"
#include "niga/experiments/common.hpp"

namespace niga::experiments {

/// Simply supported unit plate under q = -q0 sin(pi x) sin(pi y), modelled on the quarter [0,0.5]^2.
/// Zero deflection on x = 0 and y = 0, weak zero rotation on the symmetry lines x = 0.5 and y = 0.5.
struct PlateParams {
  std::vector<int> degrees{3, 4};
  std::vector<int> meshes{2, 4, 8, 16};
  double E = 1e7;
  double nu = 0.3;
  double thickness = 0.01;
  double q0 = 10.0;
  NitscheConfig cfg = NitscheConfig::skew_free();
  double rate_tol = 0.3;
  double deflection_tol = 1e-3;
};

struct PlateSolve {
  MultiPatchModel model;
  model::DofMap dofs;
  Eigen::VectorXd x;
  double gamma = 0.0;
};

inline double plate_center_reference(const PlateParams& prm) {
  const Material mat{prm.E, prm.nu, model::MaterialMode::kirchhoff_plate, prm.thickness};
  return -prm.q0 / (4.0 * std::pow(std::numbers::pi, 4) * mat.flexural_rigidity());
}

inline PlateSolve solve_quarter_plate(const PlateParams& prm, int p, int n) {
  const Material mat{prm.E, prm.nu, model::MaterialMode::kirchhoff_plate, prm.thickness};
  PlateSolve s;
  s.model.components = 1;
  s.model.add_patch(splines::h_refine(splines::make_unit_square(0.5, p), n, n), mat);
  model::BoundaryTag sym{model::TagKind::symmetry_rotation};
  sym.scalar = [](const Eigen::Vector2d&) { return 0.0; };
  s.model.tag(0, Side::u_max, sym);
  s.model.tag(0, Side::v_max, sym);
  s.dofs = model::DofMap(s.model, 1);
  std::vector<char> fixed(s.dofs.size(), 0);
  for (Side side : {Side::u_min, Side::v_min}) {
    for (int a : model::side_control_points(s.model.patches[0], side)) fixed[s.dofs(0, a, 0)] = 1;
  }
  const double pi = std::numbers::pi;
  AssembledSystem sys;
  sys.dofs = s.dofs;
  const SparseMatrix A = assembly::assemble_kirchhoff(s.model, s.dofs);
  sys.K = A;
  sys.F = assembly::assemble_scalar_load(s.model, s.dofs, [&](const Eigen::Vector2d& x) {
    return -prm.q0 * std::sin(pi * x.x()) * std::sin(pi * x.y());
  });
  s.gamma = nitsche::add_symmetry_rotation_terms(sys, A, s.model, prm.cfg, fixed);
  assembly::eliminate_dofs(sys.K, sys.F, fixed);
  s.x = linalg::solve_linear(sys.K, sys.F);
  return s;
}

inline assembly::PlateReference plate_reference(const PlateParams& prm) {
  const double w0 = plate_center_reference(prm);
  const double pi = std::numbers::pi;
  assembly::PlateReference ref;
  ref.value = [w0, pi](const Eigen::Vector2d& x) { return w0 * std::sin(pi * x.x()) * std::sin(pi * x.y()); };
  ref.hessian = [w0, pi](const Eigen::Vector2d& x) {
    const double sx = std::sin(pi * x.x()), sy = std::sin(pi * x.y());
    const double cx = std::cos(pi * x.x()), cy = std::cos(pi * x.y());
    return Eigen::Vector3d(-pi * pi * w0 * sx * sy, pi * pi * w0 * cx * cy, -pi * pi * w0 * sx * sy);
  };
  return ref;
}

inline ExperimentReport run_kirchhoff_plate(const PlateParams& prm) {
  Stopwatch clock;
  ExperimentReport rep;
  rep.benchmark = "kirchhoff";
  rep.config = {{"E", prm.E},       {"nu", prm.nu},         {"thickness", prm.thickness},
                {"q0", prm.q0},     {"meshes", prm.meshes}, {"variant", variant_name(prm.cfg)}};
  const auto ref = plate_reference(prm);
  const double w0 = plate_center_reference(prm);
  for (int p : prm.degrees) {
    const std::string variant = "p=" + std::to_string(p);
    double center = 0.0;
    for (int n : prm.meshes) {
      const auto s = solve_quarter_plate(prm, p, n);
      const FieldSolution f(s.model, s.dofs, s.x);
      const auto err = assembly::error_norms(f, ref);
      center = f.scalar_at(0, 1.0, 1.0);
      Cell c;
      c.mesh = mesh_label(n, n);
      c.variant = variant;
      c.h = 0.5 / n;
      c.dofs = s.dofs.size();
      c.energy = err.energy;
      c.l2 = err.l2;
      c.extra = {{"degree", p}, {"center_deflection", center}, {"gamma0", s.gamma}};
      rep.cells.push_back(c);
    }
    if (const auto rate = variant_rate(rep, variant)) {
      rep.rates[variant] = *rate;
      rep.check("energy rate " + variant + " within " + fmt(prm.rate_tol) + " of " + std::to_string(p - 1),
                std::abs(*rate - (p - 1)) <= prm.rate_tol, "rate " + fmt(*rate));
    }
    const double rel = std::abs(center - w0) / std::abs(w0);
    rep.check("center deflection " + variant + " within " + fmt(100 * prm.deflection_tol) + "%",
              rel <= prm.deflection_tol, "w " + fmt(center, 8) + " vs " + fmt(w0, 8) + ", rel " + fmt(rel));
  }
  rep.config["w_center_ref"] = w0;
  rep.runtime_s = clock.seconds();
  return rep;
}

}  // namespace niga::experiments
