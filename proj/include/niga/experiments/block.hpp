#pragma once

#include <optional>

#include "niga/assembly/field.hpp"
#include "niga/contact/contact.hpp"
#include "niga/experiments/common.hpp"

namespace niga::experiments {

/// Two stacked blocks with non-matching meshes under a uniform top pressure (plane stress).
/// Exact solution: u = (0.03 x, -0.1 y), sigma_yy = -100, sigma_xx = sigma_xy = 0.
struct BlockParams {
  int degree = 2;
  double E = 1000.0;
  double nu = 0.3;
  double pressure = 100.0;
  double width = 1.0;
  double lower_height = 0.5;
  double upper_height = 0.5;
  std::array<int, 2> lower_mesh{7, 4};
  std::array<int, 2> upper_mesh{4, 3};  // coarser slave block
  int samples = 20;                     // cell-centred samples per direction and block
  double initial_shift = 1e-3;          // downward start offset of the upper block
  double uy_tol = 0.01;
  double syy_tol = 0.05;
  double relabel_tol = 1e-9;
  int exact_start_iter_limit = 2;
  contact::NewtonOptions newton{};
  double gamma_multiplier = 2.0;      // contact gamma0 = multiplier * lambda_max
  std::optional<double> gamma_fixed;  // absolute contact gamma0

  double exact_uy(double y) const { return -pressure / E * y; }
};

struct BlockVariant {
  bool unbiased = false;
  double theta = -1.0;
  std::string name() const { return std::string(unbiased ? "unbiased" : "biased") + (theta < 0 ? ",skew" : ",standard"); }
};

struct BlockSolve {
  MultiPatchModel model;
  contact::ContactProblem problem;
  contact::ContactState state;
  model::DofMap dofs;
};

inline MultiPatchModel block_model(const BlockParams& prm) {
  const Material mat{prm.E, prm.nu, model::MaterialMode::plane_stress};
  const double y1 = prm.lower_height, y2 = prm.lower_height + prm.upper_height;
  MultiPatchModel m;
  m.add_patch(splines::h_refine(splines::make_rectangle(0, 0, prm.width, y1, prm.degree), prm.lower_mesh[0],
                                prm.lower_mesh[1]),
              mat);
  m.add_patch(splines::h_refine(splines::make_rectangle(0, y1, prm.width, y2, prm.degree), prm.upper_mesh[0],
                                prm.upper_mesh[1]),
              mat);
  m.tag(0, Side::u_min, sliding_tag());
  m.tag(0, Side::v_min, sliding_tag());
  m.tag(1, Side::u_min, sliding_tag());
  m.tag(1, Side::v_max, traction_tag({0.0, -prm.pressure}));
  return m;
}

/// Exact displacement interpolated into the spline space (linear fields are reproduced exactly).
inline Eigen::VectorXd block_exact_coefficients(const BlockParams& prm, const MultiPatchModel& m,
                                                const model::DofMap& dofs) {
  const double ex = prm.nu * prm.pressure / prm.E, ey = -prm.pressure / prm.E;
  return assembly::l2_project(m, dofs, [ex, ey](const Eigen::Vector2d& x) {
           return Eigen::Vector2d(ex * x.x(), ey * x.y());
         }).coeffs;
}

/// Contact points of a variant. For the unbiased variant `swap` exchanges the surface labels.
inline std::vector<contact::ContactPoint> block_points(const MultiPatchModel& m, const model::DofMap& dofs,
                                                       const BlockVariant& v, bool swap = false) {
  const model::InterfaceSide upper{1, Side::v_min}, lower{0, Side::v_max};
  if (!v.unbiased) return contact::two_body_points(m, dofs, upper, lower);
  return swap ? contact::unbiased_points(m, dofs, lower, upper) : contact::unbiased_points(m, dofs, upper, lower);
}

inline BlockSolve solve_block(const BlockParams& prm, const BlockVariant& v, bool swap = false,
                              const Eigen::VectorXd* initial = nullptr) {
  BlockSolve s;
  s.model = block_model(prm);
  s.dofs = model::DofMap(s.model, 2);
  AssembledSystem sys;
  sys.dofs = s.dofs;
  const SparseMatrix A = assembly::assemble_elasticity(s.model, s.dofs);
  sys.K = A;
  sys.F = assembly::assemble_neumann(s.model, s.dofs);
  nitsche::add_dirichlet_terms(sys, A, s.model, NitscheConfig{v.theta, GammaPolicy::eigen_scaled(2.0)});
  s.problem.K = sys.K;
  s.problem.F = sys.F;
  s.problem.points = block_points(s.model, s.dofs, v, swap);
  s.problem.theta = v.theta;
  s.problem.gamma = prm.gamma_fixed ? *prm.gamma_fixed
                                    : contact::contact_gamma_reference(A, s.problem.points, {}, prm.gamma_multiplier);
  Eigen::VectorXd u0;
  if (initial) {
    u0 = *initial;
  } else {
    u0 = Eigen::VectorXd::Zero(s.dofs.size());
    for (int a = 0; a < s.model.patches[1].size(); ++a) u0[s.dofs(1, a, 1)] = -prm.initial_shift;
  }
  s.state = contact::semismooth_newton(s.problem, prm.newton, u0);
  return s;
}

struct BlockErrorSample {
  int patch = 0;
  Eigen::Vector2d x;
  double uy_rel = 0.0;
  double syy_rel = 0.0;
};

/// Pointwise relative errors of u_y and sigma_yy at cell-centred samples of both blocks.
inline std::vector<BlockErrorSample> block_errors(const BlockParams& prm, const BlockSolve& s) {
  std::vector<BlockErrorSample> out;
  const FieldSolution f(s.model, s.dofs, s.state.u);
  const double syy_exact = -prm.pressure;
  for (int p = 0; p < 2; ++p) {
    const auto& patch = s.model.patches[p];
    const Eigen::Matrix3d C = s.model.materials[p].elasticity_matrix();
    for (int j = 0; j < prm.samples; ++j) {
      for (int i = 0; i < prm.samples; ++i) {
        const double u = (i + 0.5) / prm.samples, v = (j + 0.5) / prm.samples;
        const auto sp = splines::eval_nurbs(patch, u, v);
        const Eigen::Matrix2d g = f.vector_gradient(p, sp);
        const Eigen::Vector3d sigma = C * Eigen::Vector3d(g(0, 0), g(1, 1), g(0, 1) + g(1, 0));
        const double uy_exact = prm.exact_uy(sp.x.y());
        out.push_back({p, sp.x, (f.vector_value(p, sp).y() - uy_exact) / std::abs(uy_exact),
                       (sigma[1] - syy_exact) / std::abs(syy_exact)});
      }
    }
  }
  return out;
}

struct BlockRange {
  double uy_min = 0.0, uy_max = 0.0, syy_min = 0.0, syy_max = 0.0;
  double uy_abs() const { return std::max(std::abs(uy_min), std::abs(uy_max)); }
  double syy_abs() const { return std::max(std::abs(syy_min), std::abs(syy_max)); }
};

inline BlockRange block_range(const std::vector<BlockErrorSample>& e) {
  BlockRange r;
  if (e.empty()) return r;
  r.uy_min = r.uy_max = e.front().uy_rel;
  r.syy_min = r.syy_max = e.front().syy_rel;
  for (const auto& s : e) {
    r.uy_min = std::min(r.uy_min, s.uy_rel);
    r.uy_max = std::max(r.uy_max, s.uy_rel);
    r.syy_min = std::min(r.syy_min, s.syy_rel);
    r.syy_max = std::max(r.syy_max, s.syy_rel);
  }
  return r;
}

inline CsvTable block_error_table(const std::vector<BlockErrorSample>& e) {
  CsvTable t{{"patch", "x", "y", "uy_rel_error", "syy_rel_error"}, {}};
  for (const auto& s : e) t.rows.push_back({double(s.patch), s.x.x(), s.x.y(), s.uy_rel, s.syy_rel});
  return t;
}

struct BlockRun {
  ExperimentReport report;
  std::map<std::string, CsvTable> error_fields;  // per variant
  CsvTable ranges;                               // min/max relative errors in percent, one row per variant
};

inline std::vector<BlockVariant> block_variants() {
  return {{false, 1.0}, {false, -1.0}, {true, 1.0}, {true, -1.0}};
}

inline BlockRun run_block_contact(const BlockParams& prm, const std::vector<BlockVariant>& variants = block_variants()) {
  Stopwatch clock;
  BlockRun run;
  auto& rep = run.report;
  rep.benchmark = "block";
  rep.config = {{"degree", prm.degree},
                {"E", prm.E},
                {"nu", prm.nu},
                {"pressure", prm.pressure},
                {"lower_mesh", prm.lower_mesh},
                {"upper_mesh", prm.upper_mesh},
                {"samples", prm.samples}};
  run.ranges.header = {"unbiased", "theta", "uy_min_pct", "uy_max_pct", "syy_min_pct", "syy_max_pct"};
  for (const auto& v : variants) {
    const auto s = solve_block(prm, v);
    Cell c;
    c.mesh = mesh_label(prm.lower_mesh[0], prm.lower_mesh[1]) + "/" + mesh_label(prm.upper_mesh[0], prm.upper_mesh[1]);
    c.variant = v.name();
    c.dofs = s.dofs.size();
    c.newton_iters = s.state.iterations;
    c.converged = s.state.converged;
    rep.check("Newton converges " + v.name(), s.state.converged, s.state.message);
    if (s.state.converged) {
      const auto errors = block_errors(prm, s);
      const auto r = block_range(errors);
      run.error_fields[v.name()] = block_error_table(errors);
      run.ranges.rows.push_back({v.unbiased ? 1.0 : 0.0, v.theta, 100 * r.uy_min, 100 * r.uy_max, 100 * r.syy_min,
                                 100 * r.syy_max});
      const auto kkt = contact::kkt_check(s.problem, s.state.u);
      c.extra = {{"gamma0", s.problem.gamma},
                 {"uy_rel_min", r.uy_min},
                 {"uy_rel_max", r.uy_max},
                 {"syy_rel_min", r.syy_min},
                 {"syy_rel_max", r.syy_max},
                 {"kkt_gap_residual", kkt.max_gap_residual},
                 {"kkt_complementarity", kkt.max_complementarity}};
      rep.check("u_y relative error " + v.name() + " within " + fmt(100 * prm.uy_tol) + "%", r.uy_abs() <= prm.uy_tol,
                fmt(100 * r.uy_min) + "% .. " + fmt(100 * r.uy_max) + "%");
      rep.check("sigma_yy relative error " + v.name() + " within " + fmt(100 * prm.syy_tol) + "%",
                r.syy_abs() <= prm.syy_tol, fmt(100 * r.syy_min) + "% .. " + fmt(100 * r.syy_max) + "%");

      const Eigen::VectorXd exact = block_exact_coefficients(prm, s.model, s.dofs);
      const auto from_exact = solve_block(prm, v, false, &exact);
      c.extra["iterations_from_exact"] = from_exact.state.iterations;
      rep.check("exact start converges in <= " + std::to_string(prm.exact_start_iter_limit) + " iterations " + v.name(),
                from_exact.state.converged && from_exact.state.iterations <= prm.exact_start_iter_limit,
                std::to_string(from_exact.state.iterations) + " iterations");

      if (v.unbiased) {
        const auto swapped = solve_block(prm, v, true);
        const double diff = swapped.state.converged ? (swapped.state.u - s.state.u).norm() / s.state.u.norm()
                                                    : std::numeric_limits<double>::infinity();
        c.extra["relabel_difference"] = diff;
        rep.check("relabel invariance " + v.name() + " within " + fmt(prm.relabel_tol), diff <= prm.relabel_tol,
                  "relative difference " + fmt(diff));
      }
    }
    rep.cells.push_back(c);
  }
  rep.runtime_s = clock.seconds();
  return run;
}

}  // namespace niga::experiments
