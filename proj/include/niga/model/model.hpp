#pragma once

#include <functional>
#include <string>
#include <vector>

#include "niga/model/material.hpp"
#include "niga/model/quadrature.hpp"
#include "niga/splines/nurbs_patch.hpp"

namespace niga::model {

using splines::NurbsPatch;

/// Patch boundary side, named by the fixed parameter.
enum class Side { u_min, u_max, v_min, v_max };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::u_min: return "u_min";
    case Side::u_max: return "u_max";
    case Side::v_min: return "v_min";
    case Side::v_max: return "v_max";
  }
  return "?";
}

/// Parameter direction that runs along the side (0 = u, 1 = v).
inline int running_dir(Side s) { return (s == Side::u_min || s == Side::u_max) ? 1 : 0; }

inline const splines::KnotVector& running_knots(const NurbsPatch& patch, Side s) {
  return running_dir(s) == 0 ? patch.knots_u : *patch.knots_v;
}

/// (u,v) of the point with running parameter t on side s.
inline Eigen::Vector2d side_param(const NurbsPatch& patch, Side s, double t) {
  switch (s) {
    case Side::u_min: return {patch.knots_u.front(), t};
    case Side::u_max: return {patch.knots_u.back(), t};
    case Side::v_min: return {t, patch.knots_v->front()};
    case Side::v_max: return {t, patch.knots_v->back()};
  }
  return {0, 0};
}

/// Outward unit normal of the parameter square on side s.
inline Eigen::Vector2d param_normal(Side s) {
  switch (s) {
    case Side::u_min: return {-1, 0};
    case Side::u_max: return {1, 0};
    case Side::v_min: return {0, -1};
    case Side::v_max: return {0, 1};
  }
  return {0, 0};
}

/// Local indices of the control points on side s (with clamped knots these carry the trace).
inline std::vector<int> side_control_points(const NurbsPatch& patch, Side s) {
  std::vector<int> out;
  const int nu = patch.n_u(), nv = patch.n_v();
  switch (s) {
    case Side::u_min: for (int j = 0; j < nv; ++j) out.push_back(patch.index(0, j)); break;
    case Side::u_max: for (int j = 0; j < nv; ++j) out.push_back(patch.index(nu - 1, j)); break;
    case Side::v_min: for (int i = 0; i < nu; ++i) out.push_back(patch.index(i, 0)); break;
    case Side::v_max: for (int i = 0; i < nu; ++i) out.push_back(patch.index(i, nv - 1)); break;
  }
  return out;
}

using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;
using ScalarField = std::function<double(const Eigen::Vector2d&)>;

enum class TagKind { free, dirichlet, neumann, symmetry_rotation, contact };

/// Boundary condition carried by a tagged boundary segment. Prescribed data are closed-form
/// functions of the physical point. For dirichlet, `normal_only` constrains u.n only (sliding).
struct BoundaryTag {
  TagKind kind = TagKind::free;
  VectorField vector;  // dirichlet value, neumann traction
  ScalarField scalar;  // scalar dirichlet value, symmetry rotation, plate load
  int surface = -1;    // contact surface id
  bool normal_only = false;
};

/// Range [begin,end] of the running parameter of one patch side.
struct BoundarySegment {
  int patch = 0;
  Side side = Side::u_min;
  double begin = 0.0;
  double end = 1.0;
  BoundaryTag tag;
};

struct InterfaceSide {
  int patch = 0;
  Side side = Side::u_min;
};

/// Two geometrically coincident patch sides coupled weakly. n1 is the outward normal of side1.
struct InterfaceSpec {
  InterfaceSide side1;
  InterfaceSide side2;
};

struct MultiPatchModel {
  std::vector<NurbsPatch> patches;
  std::vector<Material> materials;
  std::vector<BoundarySegment> boundary;
  std::vector<InterfaceSpec> interfaces;
  int components = 2;

  int num_patches() const { return static_cast<int>(patches.size()); }

  int add_patch(NurbsPatch patch, Material mat) {
    patch.validate();
    mat.validate();
    patches.push_back(std::move(patch));
    materials.push_back(mat);
    return num_patches() - 1;
  }

  /// Tag a whole side.
  void tag(int patch, Side side, BoundaryTag t) {
    const auto& kv = running_knots(patches.at(patch), side);
    boundary.push_back({patch, side, kv.front(), kv.back(), std::move(t)});
  }

  void validate() const;
};

/// Physical quantities of a boundary point: map, tangent derivative, outward normal.
struct SideEval {
  Eigen::Vector2d uv;
  Eigen::Vector2d x;
  Eigen::Vector2d dx_dt;
  Eigen::Vector2d normal;
};

inline SideEval eval_side(const NurbsPatch& patch, Side s, double t) {
  SideEval e;
  e.uv = side_param(patch, s, t);
  const auto sp = splines::eval_nurbs(patch, e.uv[0], e.uv[1]);
  e.x = sp.x;
  e.dx_dt = sp.jacobian.col(running_dir(s));
  const Eigen::Vector2d n = sp.jacobian.inverse().transpose() * param_normal(s);
  e.normal = n.normalized();
  return e;
}

/// Closest point on side s of `patch` to the physical point x. Sampling for the initial
/// guess, then Newton on (x(t) - x) . x'(t) = 0 clamped to the parameter range.
struct SideProjection {
  double t = 0.0;
  Eigen::Vector2d point;
  double distance = 0.0;
};

inline SideProjection project_onto_side(const NurbsPatch& patch, Side s, const Eigen::Vector2d& x,
                                        int samples = 64) {
  const auto& kv = running_knots(patch, s);
  const double a = kv.front(), b = kv.back();
  auto point_at = [&](double t) { return splines::eval_point(patch, side_param(patch, s, t)[0], side_param(patch, s, t)[1]); };
  double best_t = a;
  double best_d = (point_at(a) - x).squaredNorm();
  for (int k = 1; k <= samples; ++k) {
    const double t = a + (b - a) * k / samples;
    const double d = (point_at(t) - x).squaredNorm();
    if (d < best_d) best_d = d, best_t = t;
  }
  double t = best_t;
  const double h = 1e-6 * (b - a);
  for (int it = 0; it < 50; ++it) {
    const Eigen::Vector2d p = point_at(t);
    const SideEval e = eval_side(patch, s, t);
    // Second derivative of the side curve by differencing the analytic first derivative.
    const double tp = std::min(b, t + h), tm = std::max(a, t - h);
    const Eigen::Vector2d ddx = (eval_side(patch, s, tp).dx_dt - eval_side(patch, s, tm).dx_dt) / (tp - tm);
    const double f = (p - x).dot(e.dx_dt);
    const double df = e.dx_dt.squaredNorm() + (p - x).dot(ddx);
    if (df <= 0.0) break;
    const double step = f / df;
    t = std::clamp(t - step, a, b);
    if (std::abs(step) < 1e-15 * (b - a)) break;
  }
  SideProjection out;
  out.t = t;
  out.point = point_at(t);
  out.distance = (out.point - x).norm();
  return out;
}

inline void MultiPatchModel::validate() const {
  if (materials.size() != patches.size()) throw ConfigError("model: one material per patch required");
  for (const auto& p : patches) p.validate();
  for (const auto& m : materials) m.validate();
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const auto& s = boundary[i];
    if (s.patch < 0 || s.patch >= num_patches()) throw ConfigError("model: boundary segment on unknown patch");
    const auto& kv = running_knots(patches[s.patch], s.side);
    if (s.begin < kv.front() - 1e-12 || s.end > kv.back() + 1e-12 || !(s.end > s.begin)) {
      throw ConfigError("model: boundary segment outside its side");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = boundary[j];
      if (o.patch == s.patch && o.side == s.side && s.begin < o.end - 1e-12 && o.begin < s.end - 1e-12) {
        throw ConfigError(std::string("model: overlapping boundary tags on patch side ") + to_string(s.side));
      }
    }
  }
  for (const auto& itf : interfaces) {
    const auto& p1 = patches.at(itf.side1.patch);
    const auto& p2 = patches.at(itf.side2.patch);
    const auto& kv = running_knots(p1, itf.side1.side);
    for (int k = 0; k <= 8; ++k) {
      const double t = kv.front() + (kv.back() - kv.front()) * k / 8.0;
      const Eigen::Vector2d uv = side_param(p1, itf.side1.side, t);
      const Eigen::Vector2d x = splines::eval_point(p1, uv[0], uv[1]);
      const auto proj = project_onto_side(p2, itf.side2.side, x);
      if (proj.distance > 1e-9 * std::max(1.0, x.norm())) {
        throw InterfaceError("model: interface sides are not coincident near (" + std::to_string(x.x()) + "," +
                             std::to_string(x.y()) + ")");
      }
    }
  }
}

}  // namespace niga::model
