#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "niga/assembly/load.hpp"
#include "niga/assembly/norms.hpp"
#include "niga/experiments/manufactured.hpp"
#include "niga/experiments/report.hpp"
#include "niga/linalg/linalg.hpp"
#include "niga/nitsche/nitsche.hpp"
#include "niga/splines/geometry.hpp"

namespace niga::experiments {

using assembly::AssembledSystem;
using assembly::FieldSolution;
using assembly::SparseMatrix;
using model::Material;
using model::MultiPatchModel;
using model::Side;
using nitsche::GammaPolicy;
using nitsche::NitscheConfig;

inline constexpr Side kAllSides[] = {Side::u_min, Side::u_max, Side::v_min, Side::v_max};

inline model::BoundaryTag dirichlet_tag(model::VectorField f, bool normal_only = false) {
  model::BoundaryTag t{model::TagKind::dirichlet};
  t.vector = std::move(f);
  t.normal_only = normal_only;
  return t;
}

inline model::BoundaryTag sliding_tag() {
  return dirichlet_tag([](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero().eval(); }, true);
}

inline model::BoundaryTag traction_tag(Eigen::Vector2d t) {
  model::BoundaryTag tag{model::TagKind::neumann};
  tag.vector = [t](const Eigen::Vector2d&) { return t; };
  return tag;
}

/// Human label of a Nitsche variant.
inline std::string variant_name(const NitscheConfig& cfg) {
  if (cfg.theta == -1.0) return "skew(" + cfg.gamma.str() + ")";
  if (cfg.theta == 1.0) return "standard(" + cfg.gamma.str() + ")";
  return "theta=" + std::to_string(cfg.theta) + "(" + cfg.gamma.str() + ")";
}

/// Linear elastic solve with weak Dirichlet data and patch coupling under one Nitsche variant.
struct ElasticSolve {
  AssembledSystem sys;
  SparseMatrix A;
  Eigen::VectorXd x;
  double gamma_boundary = 0.0;
  double gamma_interface = 0.0;
};

inline ElasticSolve solve_elastic(const MultiPatchModel& m, const NitscheConfig& boundary, const NitscheConfig& interface,
                                  const model::VectorField& body = {}) {
  ElasticSolve s;
  s.sys.dofs = model::DofMap(m, 2);
  s.A = assembly::assemble_elasticity(m, s.sys.dofs);
  s.sys.K = s.A;
  s.sys.F = assembly::assemble_load(m, s.sys.dofs, body);
  s.gamma_boundary = nitsche::add_dirichlet_terms(s.sys, s.A, m, boundary);
  if (!m.interfaces.empty()) s.gamma_interface = nitsche::add_interface_coupling_terms(s.sys, s.A, m, interface);
  s.x = linalg::solve_linear(s.sys.K, s.sys.F);
  return s;
}

inline std::string mesh_label(int nu, int nv) { return std::to_string(nu) + "x" + std::to_string(nv); }

inline std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace niga::experiments
