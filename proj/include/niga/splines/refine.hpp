#pragma once

#include <vector>

#include "niga/splines/nurbs_patch.hpp"

namespace niga::splines {

namespace detail {

using HPoint = Eigen::Vector3d;  // (w x, w y, w)

/// Boehm single-knot insertion on a homogeneous control polygon.
inline KnotVector insert_knot_curve(const KnotVector& U, std::vector<HPoint>& P, double t) {
  const int p = U.degree();
  const int k = U.find_span(t);
  const int s = U.multiplicity(t);
  const int n = static_cast<int>(P.size()) - 1;
  std::vector<HPoint> Q(n + 2);
  for (int i = 0; i <= k - p; ++i) Q[i] = P[i];
  for (int i = k - p + 1; i <= k - s; ++i) {
    const double alpha = (t - U[i]) / (U[i + p] - U[i]);
    Q[i] = alpha * P[i] + (1.0 - alpha) * P[i - 1];
  }
  for (int i = k - s + 1; i <= n + 1; ++i) Q[i] = P[i - 1];
  P = std::move(Q);
  std::vector<double> values = U.values();
  values.insert(values.begin() + k + 1, t);
  return KnotVector(std::move(values), p);
}

/// Degree elevation by one of a single-span (Bezier) homogeneous polygon.
inline void elevate_bezier_curve(std::vector<HPoint>& P) {
  const int p = static_cast<int>(P.size()) - 1;
  std::vector<HPoint> Q(p + 2);
  Q[0] = P[0];
  Q[p + 1] = P[p];
  for (int i = 1; i <= p; ++i) {
    const double a = static_cast<double>(i) / (p + 1);
    Q[i] = a * P[i - 1] + (1.0 - a) * P[i];
  }
  P = std::move(Q);
}

inline std::vector<HPoint> to_homogeneous(const NurbsPatch& patch) {
  std::vector<HPoint> h(patch.size());
  for (int A = 0; A < patch.size(); ++A) {
    const double w = patch.weights[A];
    h[A] = HPoint(w * patch.points[A].x(), w * patch.points[A].y(), w);
  }
  return h;
}

inline void from_homogeneous(NurbsPatch& patch, const std::vector<HPoint>& h) {
  patch.points.resize(h.size());
  patch.weights.resize(h.size());
  for (std::size_t A = 0; A < h.size(); ++A) {
    patch.weights[A] = h[A].z();
    patch.points[A] = h[A].head<2>() / h[A].z();
  }
}

/// Apply a curve operation to every row (dir 0) or column (dir 1) of the control grid.
template <class CurveOp>
NurbsPatch transform_direction(const NurbsPatch& patch, int dir, CurveOp&& op) {
  const std::vector<HPoint> H = to_homogeneous(patch);
  const int nu = patch.n_u();
  const int nv = patch.n_v();
  const int lines = dir == 0 ? nv : nu;
  const int len = dir == 0 ? nu : nv;
  std::vector<std::vector<HPoint>> out(lines);
  KnotVector new_knots;
  for (int l = 0; l < lines; ++l) {
    std::vector<HPoint> curve(len);
    for (int m = 0; m < len; ++m) curve[m] = dir == 0 ? H[m + nu * l] : H[l + nu * m];
    new_knots = op(curve);
    out[l] = std::move(curve);
  }
  NurbsPatch result = patch;
  if (dir == 0) {
    result.knots_u = new_knots;
  } else {
    result.knots_v = new_knots;
  }
  const int new_len = static_cast<int>(out.front().size());
  std::vector<HPoint> grid(static_cast<std::size_t>(new_len) * lines);
  const int new_nu = dir == 0 ? new_len : nu;
  for (int l = 0; l < lines; ++l) {
    for (int m = 0; m < new_len; ++m) {
      if (dir == 0) {
        grid[m + new_nu * l] = out[l][m];
      } else {
        grid[l + new_nu * m] = out[l][m];
      }
    }
  }
  from_homogeneous(result, grid);
  return result;
}

}  // namespace detail

/// Insert the knot t in direction dir (0 = u, 1 = v). Geometry is unchanged.
inline NurbsPatch insert_knot(const NurbsPatch& patch, int dir, double t) {
  const KnotVector& U = dir == 0 ? patch.knots_u : *patch.knots_v;
  return detail::transform_direction(patch, dir, [&](std::vector<detail::HPoint>& curve) {
    return detail::insert_knot_curve(U, curve, t);
  });
}

/// Uniform h-refinement: every nonzero span is split into `subdivisions` equal parts.
inline NurbsPatch h_refine(const NurbsPatch& patch, int subdivisions_u, int subdivisions_v = 1) {
  if (subdivisions_u < 1 || subdivisions_v < 1) {
    throw DomainError("h_refine: subdivisions must be >= 1");
  }
  NurbsPatch result = patch;
  auto refine_dir = [&](int dir, int subdivisions) {
    if (subdivisions == 1) return;
    const KnotVector& U = dir == 0 ? result.knots_u : *result.knots_v;
    const std::vector<double> bp = U.breakpoints();
    for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
      for (int k = 1; k < subdivisions; ++k) {
        const double t = bp[s] + (bp[s + 1] - bp[s]) * k / subdivisions;
        result = insert_knot(result, dir, t);
      }
    }
  };
  refine_dir(0, subdivisions_u);
  if (patch.param_dim() == 2) refine_dir(1, subdivisions_v);
  return result;
}

/// Degree elevation of a single-element patch by `times` in every direction (exact).
inline NurbsPatch elevate_bezier(const NurbsPatch& patch, int times) {
  NurbsPatch result = patch;
  for (int dir = 0; dir < patch.param_dim(); ++dir) {
    const KnotVector& U0 = dir == 0 ? patch.knots_u : *patch.knots_v;
    if (U0.num_elements() != 1) throw DomainError("elevate_bezier: patch must be a single element");
    for (int t = 0; t < times; ++t) {
      const KnotVector& U = dir == 0 ? result.knots_u : *result.knots_v;
      const int p = U.degree() + 1;
      result = detail::transform_direction(result, dir, [&](std::vector<detail::HPoint>& curve) {
        detail::elevate_bezier_curve(curve);
        return KnotVector::uniform(p, 1, U.front(), U.back());
      });
    }
  }
  return result;
}

}  // namespace niga::splines
