#pragma once

#include <algorithm>
#include <vector>

#include "niga/model/model.hpp"

namespace niga::model {

/// One nonzero knot span (a single interval for 1D patches).
struct Element {
  int patch = 0;
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
};

inline std::vector<Element> patch_elements(const NurbsPatch& patch, int patch_id = 0) {
  std::vector<Element> out;
  const auto bu = patch.knots_u.breakpoints();
  const std::vector<double> bv = patch.knots_v ? patch.knots_v->breakpoints() : std::vector<double>{0.0, 1.0};
  for (std::size_t j = 0; j + 1 < bv.size(); ++j) {
    for (std::size_t i = 0; i + 1 < bu.size(); ++i) out.push_back({patch_id, bu[i], bu[i + 1], bv[j], bv[j + 1]});
  }
  return out;
}

/// Elements of every patch, indexed by patch.
inline std::vector<std::vector<Element>> enumerate_elements(const MultiPatchModel& m) {
  std::vector<std::vector<Element>> out;
  for (int p = 0; p < m.num_patches(); ++p) out.push_back(patch_elements(m.patches[p], p));
  return out;
}

/// Tensor Gauss points of an element: (u, v, parametric weight).
struct ParamPoint {
  double u, v, w;
};

inline std::vector<ParamPoint> element_points(const Element& e, int n, bool bivariate = true) {
  const auto ru = gauss_rule(n, e.u0, e.u1);
  std::vector<ParamPoint> pts;
  if (!bivariate) {
    for (int i = 0; i < ru.size(); ++i) pts.push_back({ru.points[i], 0.0, ru.weights[i]});
    return pts;
  }
  const auto rv = gauss_rule(n, e.v0, e.v1);
  for (int j = 0; j < rv.size(); ++j) {
    for (int i = 0; i < ru.size(); ++i) pts.push_back({ru.points[i], rv.points[j], ru.weights[i] * rv.weights[j]});
  }
  return pts;
}

/// Quadrature point on a patch side: weight includes the line measure |dx/dt|.
struct BoundaryPoint {
  double t = 0.0;
  Eigen::Vector2d uv;
  Eigen::Vector2d x;
  Eigen::Vector2d normal;
  double weight = 0.0;
};

/// Gauss rule on [begin,end] of side s, segmented at the running-direction breakpoints.
inline std::vector<BoundaryPoint> boundary_rule(const NurbsPatch& patch, Side s, double begin, double end, int n) {
  std::vector<double> cuts{begin};
  for (double b : running_knots(patch, s).breakpoints()) {
    if (b > begin + 1e-14 && b < end - 1e-14) cuts.push_back(b);
  }
  cuts.push_back(end);
  std::vector<BoundaryPoint> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto r = gauss_rule(n, cuts[k], cuts[k + 1]);
    for (int i = 0; i < r.size(); ++i) {
      const SideEval e = eval_side(patch, s, r.points[i]);
      out.push_back({r.points[i], e.uv, e.x, e.normal, r.weights[i] * e.dx_dt.norm()});
    }
  }
  return out;
}

inline std::vector<BoundaryPoint> boundary_rule(const MultiPatchModel& m, const BoundarySegment& seg, int n) {
  return boundary_rule(m.patches.at(seg.patch), seg.side, seg.begin, seg.end, n);
}

/// Matched quadrature point on an interface, carrying the parameters on both sides.
struct InterfacePoint {
  Eigen::Vector2d uv1;
  Eigen::Vector2d uv2;
  Eigen::Vector2d x;
  Eigen::Vector2d normal;  // outward normal of side 1
  double weight = 0.0;
};

/// Union of two sorted breakpoint lists (tolerance `tol`).
inline std::vector<double> merge_breakpoints(std::vector<double> a, const std::vector<double>& b, double tol = 1e-12) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double v : a) {
    if (out.empty() || v > out.back() + tol) out.push_back(v);
  }
  return out;
}

/// Quadrature on an interface segmented at the union of both sides' element boundaries.
/// Side-2 breakpoints are carried into side-1 parameters by closest-point projection.
inline std::vector<InterfacePoint> interface_quadrature(const MultiPatchModel& m, const InterfaceSpec& itf, int n) {
  const auto& p1 = m.patches.at(itf.side1.patch);
  const auto& p2 = m.patches.at(itf.side2.patch);
  const Side s1 = itf.side1.side, s2 = itf.side2.side;
  const auto& kv1 = running_knots(p1, s1);
  const auto& kv2 = running_knots(p2, s2);
  const double scale = std::max(1.0, (eval_side(p1, s1, kv1.back()).x - eval_side(p1, s1, kv1.front()).x).norm());

  std::vector<double> mapped;
  for (double b : kv2.breakpoints()) {
    const Eigen::Vector2d uv = side_param(p2, s2, b);
    mapped.push_back(project_onto_side(p1, s1, splines::eval_point(p2, uv[0], uv[1])).t);
  }
  std::sort(mapped.begin(), mapped.end());
  const auto cuts = merge_breakpoints(kv1.breakpoints(), mapped, 1e-10 * (kv1.back() - kv1.front()));

  std::vector<InterfacePoint> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto r = gauss_rule(n, cuts[k], cuts[k + 1]);
    for (int i = 0; i < r.size(); ++i) {
      const SideEval e1 = eval_side(p1, s1, r.points[i]);
      const auto proj = project_onto_side(p2, s2, e1.x);
      if (proj.distance > 1e-10 * scale) {
        throw InterfaceError("interface inversion failed at (" + std::to_string(e1.x.x()) + "," +
                             std::to_string(e1.x.y()) + "), residual " + std::to_string(proj.distance));
      }
      out.push_back({e1.uv, side_param(p2, s2, proj.t), e1.x, e1.normal, r.weights[i] * e1.dx_dt.norm()});
    }
  }
  return out;
}

}  // namespace niga::model
