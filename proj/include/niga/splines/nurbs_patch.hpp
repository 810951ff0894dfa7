#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "niga/splines/basis.hpp"

namespace niga::splines {

/// Tensor-product NURBS patch (parametric dimension 1 or 2) in the plane.
///
/// Control points are stored with u running fastest: index A = i + n_u * j.
/// A 1D patch (no v knots) describes a curve; rods place it on the x axis.
struct NurbsPatch {
  KnotVector knots_u;
  std::optional<KnotVector> knots_v;
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;

  int param_dim() const noexcept { return knots_v ? 2 : 1; }
  int n_u() const noexcept { return knots_u.num_basis(); }
  int n_v() const noexcept { return knots_v ? knots_v->num_basis() : 1; }
  int size() const noexcept { return n_u() * n_v(); }
  int index(int i, int j) const noexcept { return i + n_u() * j; }
  int degree_u() const noexcept { return knots_u.degree(); }
  int degree_v() const noexcept { return knots_v ? knots_v->degree() : 0; }
  int max_degree() const noexcept { return std::max(degree_u(), degree_v()); }

  void validate() const {
    if (static_cast<int>(points.size()) != size() || static_cast<int>(weights.size()) != size()) {
      throw DomainError("nurbs patch: control grid does not match basis counts");
    }
    for (double w : weights) {
      if (!(w > 0.0)) throw DomainError("nurbs patch: weights must be positive");
    }
  }
};

/// Geometry and rational basis at one parameter of a 2D patch.
/// grad(a, k) = dR_a/dx_k; hess(a, 0..2) = (xx, xy, yy).
struct SurfacePoint {
  double u = 0.0;
  double v = 0.0;
  Eigen::Vector2d x;
  Eigen::Matrix2d jacobian;  // column k = dx/dxi_k
  double det = 0.0;
  Eigen::Vector2d x_uu, x_uv, x_vv;
  std::vector<int> basis;  // local control point indices
  Eigen::VectorXd R;
  Eigen::MatrixX2d grad;
  Eigen::MatrixX3d hess;
  Eigen::MatrixX2d grad_param;  // dR/du, dR/dv
};

/// Geometry and rational basis at one parameter of a 1D patch (x-coordinate map).
struct CurvePoint {
  double u = 0.0;
  double x = 0.0;
  double dx = 0.0;   // dx/du
  double ddx = 0.0;  // d2x/du2
  std::vector<int> basis;
  Eigen::VectorXd R;
  Eigen::VectorXd dR;   // d/dx
  Eigen::VectorXd ddR;  // d2/dx2
};

inline SurfacePoint eval_nurbs(const NurbsPatch& patch, double u, double v) {
  if (patch.param_dim() != 2) throw DomainError("eval_nurbs: patch is not bivariate");
  const BasisValues1D bu = eval_basis_1d(patch.knots_u, u);
  const BasisValues1D bv = eval_basis_1d(*patch.knots_v, v);
  const int nu = bu.count();
  const int nv = bv.count();
  const int nb = nu * nv;

  SurfacePoint out;
  out.u = u;
  out.v = v;
  out.basis.resize(nb);
  Eigen::VectorXd B00(nb), B10(nb), B01(nb), B20(nb), B11(nb), B02(nb);
  double W = 0, Wu = 0, Wv = 0, Wuu = 0, Wuv = 0, Wvv = 0;
  for (int b = 0; b < nv; ++b) {
    for (int a = 0; a < nu; ++a) {
      const int k = a + nu * b;
      const int A = patch.index(bu.first_index() + a, bv.first_index() + b);
      const double w = patch.weights[A];
      out.basis[k] = A;
      B00[k] = bu.ders[0][a] * bv.ders[0][b] * w;
      B10[k] = bu.ders[1][a] * bv.ders[0][b] * w;
      B01[k] = bu.ders[0][a] * bv.ders[1][b] * w;
      B20[k] = bu.ders[2][a] * bv.ders[0][b] * w;
      B11[k] = bu.ders[1][a] * bv.ders[1][b] * w;
      B02[k] = bu.ders[0][a] * bv.ders[2][b] * w;
      W += B00[k];
      Wu += B10[k];
      Wv += B01[k];
      Wuu += B20[k];
      Wuv += B11[k];
      Wvv += B02[k];
    }
  }
  const Eigen::VectorXd R = B00 / W;
  const Eigen::VectorXd Ru = (B10 - R * Wu) / W;
  const Eigen::VectorXd Rv = (B01 - R * Wv) / W;
  const Eigen::VectorXd Ruu = (B20 - 2.0 * Ru * Wu - R * Wuu) / W;
  const Eigen::VectorXd Ruv = (B11 - Ru * Wv - Rv * Wu - R * Wuv) / W;
  const Eigen::VectorXd Rvv = (B02 - 2.0 * Rv * Wv - R * Wvv) / W;

  out.x.setZero();
  Eigen::Vector2d xu = Eigen::Vector2d::Zero(), xv = Eigen::Vector2d::Zero();
  out.x_uu.setZero();
  out.x_uv.setZero();
  out.x_vv.setZero();
  for (int k = 0; k < nb; ++k) {
    const Eigen::Vector2d& P = patch.points[out.basis[k]];
    out.x += R[k] * P;
    xu += Ru[k] * P;
    xv += Rv[k] * P;
    out.x_uu += Ruu[k] * P;
    out.x_uv += Ruv[k] * P;
    out.x_vv += Rvv[k] * P;
  }
  out.jacobian.col(0) = xu;
  out.jacobian.col(1) = xv;
  out.det = out.jacobian.determinant();
  if (std::abs(out.det) <= 1e-13 * xu.norm() * xv.norm() || !std::isfinite(out.det)) {
    throw GeometryError("singular geometry Jacobian", u, v);
  }
  const Eigen::Matrix2d Jinv = out.jacobian.inverse();

  out.R = R;
  out.grad_param.resize(nb, 2);
  out.grad_param.col(0) = Ru;
  out.grad_param.col(1) = Rv;
  out.grad = out.grad_param * Jinv;

  out.hess.resize(nb, 3);
  for (int k = 0; k < nb; ++k) {
    Eigen::Matrix2d H;
    H << Ruu[k], Ruv[k], Ruv[k], Rvv[k];
    for (int i = 0; i < 2; ++i) {
      Eigen::Matrix2d Hx;
      Hx << out.x_uu[i], out.x_uv[i], out.x_uv[i], out.x_vv[i];
      H -= out.grad(k, i) * Hx;
    }
    const Eigen::Matrix2d Hphys = Jinv.transpose() * H * Jinv;
    out.hess(k, 0) = Hphys(0, 0);
    out.hess(k, 1) = Hphys(0, 1);
    out.hess(k, 2) = Hphys(1, 1);
  }
  return out;
}

inline CurvePoint eval_nurbs_1d(const NurbsPatch& patch, double u) {
  if (patch.param_dim() != 1) throw DomainError("eval_nurbs_1d: patch is not univariate");
  const BasisValues1D bu = eval_basis_1d(patch.knots_u, u);
  const int nb = bu.count();
  CurvePoint out;
  out.u = u;
  out.basis.resize(nb);
  Eigen::VectorXd B0(nb), B1(nb), B2(nb);
  double W = 0, Wu = 0, Wuu = 0;
  for (int a = 0; a < nb; ++a) {
    const int A = bu.first_index() + a;
    const double w = patch.weights[A];
    out.basis[a] = A;
    B0[a] = bu.ders[0][a] * w;
    B1[a] = bu.ders[1][a] * w;
    B2[a] = bu.ders[2][a] * w;
    W += B0[a];
    Wu += B1[a];
    Wuu += B2[a];
  }
  const Eigen::VectorXd R = B0 / W;
  const Eigen::VectorXd Ru = (B1 - R * Wu) / W;
  const Eigen::VectorXd Ruu = (B2 - 2.0 * Ru * Wu - R * Wuu) / W;
  out.x = out.dx = out.ddx = 0.0;
  for (int a = 0; a < nb; ++a) {
    const double P = patch.points[out.basis[a]].x();
    out.x += R[a] * P;
    out.dx += Ru[a] * P;
    out.ddx += Ruu[a] * P;
  }
  if (std::abs(out.dx) < 1e-14) throw GeometryError("singular curve Jacobian", u, 0.0);
  out.R = R;
  out.dR = Ru / out.dx;
  out.ddR = (Ruu - out.dR * out.ddx) / (out.dx * out.dx);
  return out;
}

/// Geometry point only (cheaper than a full evaluation).
inline Eigen::Vector2d eval_point(const NurbsPatch& patch, double u, double v = 0.0) {
  if (patch.param_dim() == 1) return {eval_nurbs_1d(patch, u).x, 0.0};
  const BasisValues1D bu = eval_basis_1d(patch.knots_u, u);
  const BasisValues1D bv = eval_basis_1d(*patch.knots_v, v);
  Eigen::Vector2d num = Eigen::Vector2d::Zero();
  double W = 0;
  for (int b = 0; b < bv.count(); ++b) {
    for (int a = 0; a < bu.count(); ++a) {
      const int A = patch.index(bu.first_index() + a, bv.first_index() + b);
      const double c = bu.ders[0][a] * bv.ders[0][b] * patch.weights[A];
      num += c * patch.points[A];
      W += c;
    }
  }
  return num / W;
}

}  // namespace niga::splines
