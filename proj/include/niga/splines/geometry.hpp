#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "niga/splines/refine.hpp"

namespace niga::splines {

/// Axis-aligned rectangle [x0,x1]x[y0,y1] as a single Bezier element of degree p.
inline NurbsPatch make_rectangle(double x0, double y0, double x1, double y1, int p) {
  if (!(x1 > x0) || !(y1 > y0)) throw DomainError("rectangle: non-positive dimensions");
  if (p < 1 || p > kMaxDegree) throw DomainError("rectangle: unsupported degree " + std::to_string(p));
  NurbsPatch patch;
  patch.knots_u = KnotVector::uniform(p, 1);
  patch.knots_v = KnotVector::uniform(p, 1);
  for (int j = 0; j <= p; ++j) {
    for (int i = 0; i <= p; ++i) {
      patch.points.emplace_back(x0 + (x1 - x0) * i / p, y0 + (y1 - y0) * j / p);
      patch.weights.push_back(1.0);
    }
  }
  return patch;
}

inline NurbsPatch make_unit_square(double L, int p) { return make_rectangle(0.0, 0.0, L, L, p); }

/// Single-patch disk of radius R centred at the origin: the classical 3x3 biquadratic
/// construction (four 90 degree arcs on the sides), elevated to degree p.
/// The Jacobian vanishes at the four parametric corners only.
inline NurbsPatch make_disk(double R, int p) {
  if (!(R > 0.0)) throw DomainError("disk: radius must be positive");
  if (p < 2 || p > kMaxDegree) throw DomainError("disk: degree must be in [2,5]");
  const double c = R / std::sqrt(2.0);
  const double m = R * std::sqrt(2.0);
  const double w = std::sqrt(2.0) / 2.0;
  NurbsPatch patch;
  patch.knots_u = KnotVector::uniform(2, 1);
  patch.knots_v = KnotVector::uniform(2, 1);
  patch.points = {{-c, -c}, {0.0, -m}, {c, -c},  //
                  {-m, 0.0}, {0.0, 0.0}, {m, 0.0},  //
                  {-c, c},  {0.0, m},  {c, c}};
  patch.weights = {1.0, w, 1.0, w, 1.0, w, 1.0, w, 1.0};
  return elevate_bezier(patch, p - 2);
}

/// Quarter annulus in the first quadrant: u runs along the arcs (from the x axis to the
/// y axis), v runs radially from r_in to r_out.
inline NurbsPatch make_quarter_annulus(double r_in, double r_out, int p) {
  if (!(r_in > 0.0) || !(r_out > r_in)) throw DomainError("quarter annulus: need 0 < r_in < r_out");
  if (p < 2 || p > kMaxDegree) throw DomainError("quarter annulus: degree must be in [2,5]");
  const double w = std::sqrt(2.0) / 2.0;
  NurbsPatch patch;
  patch.knots_u = KnotVector::uniform(2, 1);
  patch.knots_v = KnotVector::uniform(2, 1);
  for (int j = 0; j <= 2; ++j) {
    const double r = r_in + (r_out - r_in) * j / 2.0;
    patch.points.insert(patch.points.end(), {{r, 0.0}, {r, r}, {0.0, r}});
    patch.weights.insert(patch.weights.end(), {1.0, w, 1.0});
  }
  return elevate_bezier(patch, p - 2);
}

/// Rod on [x0, x0+L] as a 1D patch with the identity map.
inline NurbsPatch make_rod(double L, int p, double x0 = 0.0) {
  if (!(L > 0.0)) throw DomainError("rod: length must be positive");
  if (p < 1 || p > kMaxDegree) throw DomainError("rod: unsupported degree " + std::to_string(p));
  NurbsPatch patch;
  patch.knots_u = KnotVector::uniform(p, 1);
  for (int i = 0; i <= p; ++i) {
    patch.points.emplace_back(x0 + L * i / p, 0.0);
    patch.weights.push_back(1.0);
  }
  return patch;
}

enum class GeometryKind { unit_square, disk, quarter_annulus, rod };

struct GeometrySpec {
  GeometryKind kind = GeometryKind::unit_square;
  double a = 1.0;  // L, R or r_in
  double b = 0.0;  // r_out for the annulus
};

inline NurbsPatch make_geometry(const GeometrySpec& spec, int p) {
  switch (spec.kind) {
    case GeometryKind::unit_square: return make_unit_square(spec.a, p);
    case GeometryKind::disk: return make_disk(spec.a, p);
    case GeometryKind::quarter_annulus: return make_quarter_annulus(spec.a, spec.b, p);
    case GeometryKind::rod: return make_rod(spec.a, p);
  }
  throw DomainError("make_geometry: unknown kind");
}

}  // namespace niga::splines
