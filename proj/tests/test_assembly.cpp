#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "niga/assembly/load.hpp"
#include "niga/assembly/norms.hpp"
#include "niga/assembly/rod.hpp"
#include "niga/linalg/linalg.hpp"
#include "niga/splines/geometry.hpp"

using namespace niga;
using namespace niga::assembly;
using namespace niga::model;
using splines::h_refine;

namespace {

MultiPatchModel square_model(double L, int p, int ne, Material mat = {1000.0, 0.3}) {
  MultiPatchModel m;
  m.add_patch(h_refine(splines::make_unit_square(L, p), ne, ne), mat);
  return m;
}

/// Coefficients of an affine vector field: control-point values (linear precision, unit weights).
Eigen::VectorXd affine_coeffs(const MultiPatchModel& m, const DofMap& d,
                              const std::function<Eigen::Vector2d(Eigen::Vector2d)>& f) {
  Eigen::VectorXd c(d.size());
  for (int p = 0; p < m.num_patches(); ++p)
    for (int A = 0; A < m.patches[p].size(); ++A) {
      const Eigen::Vector2d v = f(m.patches[p].points[A]);
      for (int k = 0; k < d.components(); ++k) c[d(p, A, k)] = v[k];
    }
  return c;
}

int count_small_singular(const SparseMatrix& K, double rel) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(K)};
  const auto& s = svd.singularValues();
  int n = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) n += s[i] < rel * s[0];
  return n;
}

}  // namespace

TEST(Elasticity, RigidTranslationInKernel) {
  const auto m = square_model(1.0, 2, 3);
  const DofMap d(m, 2);
  const SparseMatrix K = assemble_elasticity(m, d);
  Eigen::VectorXd t(d.size());
  for (int i = 0; i < d.size(); ++i) t[i] = (i % 2 == 0) ? 0.7 : -0.2;
  EXPECT_LT((K * t).norm(), 1e-9 * max_abs(K) * t.norm());
  EXPECT_LT(asymmetry(K), 1e-12);
}

TEST(Elasticity, UniaxialEnergy) {
  const auto m = square_model(1.0, 2, 2);
  const DofMap d(m, 2);
  const SparseMatrix K = assemble_elasticity(m, d);
  const auto c = affine_coeffs(m, d, [](Eigen::Vector2d x) { return Eigen::Vector2d(0.03 * x.x(), -0.1 * x.y()); });
  EXPECT_NEAR(0.5 * c.dot(K * c), 5.0, 1e-10);
  const FieldSolution f(m, d, c);
  const auto s = compute_stress(f, 0, 0.3, 0.8);
  EXPECT_NEAR(s[1], -100.0, 1e-9);
  EXPECT_NEAR(s[0], 0.0, 1e-9);
  EXPECT_NEAR(s[2], 0.0, 1e-9);
  const FieldSolution z(m, d, Eigen::VectorXd::Zero(d.size()));
  EXPECT_EQ(compute_stress(z, 0, 0.5, 0.5).norm(), 0.0);
}

TEST(Elasticity, KernelDimensionThree) {
  const auto m = square_model(1.0, 2, 2);
  const DofMap d(m, 2);
  EXPECT_EQ(count_small_singular(assemble_elasticity(m, d), 1e-9), 3);
}

TEST(Elasticity, BilinearInMaterial) {
  auto m = square_model(2.0, 3, 2);
  const DofMap d(m, 2);
  const SparseMatrix K1 = assemble_elasticity(m, d);
  m.materials[0].E *= 2.0;
  const SparseMatrix K2 = assemble_elasticity(m, d);
  EXPECT_LT(max_abs(K2 - 2.0 * K1), 1e-13 * max_abs(K2));
}

TEST(Elasticity, QuadratureRefinementStable) {
  const auto m = square_model(3.0, 3, 3);
  const DofMap d(m, 2);
  const SparseMatrix K1 = assemble_elasticity(m, d);
  const SparseMatrix K2 = assemble_elasticity(m, d, 3);
  EXPECT_LT(max_abs(K2 - K1), 1e-10 * max_abs(K1));
}

TEST(Kirchhoff, AffineKernelAndSymmetry) {
  MultiPatchModel m;
  m.add_patch(h_refine(splines::make_unit_square(1.0, 3), 3, 3), {1e7, 0.3, MaterialMode::kirchhoff_plate, 0.01});
  const DofMap d(m, 1);
  const SparseMatrix K = assemble_kirchhoff(m, d);
  EXPECT_LT(asymmetry(K), 1e-12);
  for (auto f : {std::function<double(Eigen::Vector2d)>([](Eigen::Vector2d) { return 1.0; }),
                 std::function<double(Eigen::Vector2d)>([](Eigen::Vector2d x) { return 2 * x.x() - 3 * x.y(); })}) {
    const auto c = affine_coeffs(m, d, [&](Eigen::Vector2d x) { return Eigen::Vector2d(f(x), 0.0); });
    EXPECT_LT((K * c).norm(), 1e-9 * max_abs(K) * c.norm());
  }
  MultiPatchModel small;
  small.add_patch(h_refine(splines::make_unit_square(1.0, 2), 2, 2), m.materials[0]);
  EXPECT_EQ(count_small_singular(assemble_kirchhoff(small, DofMap(small, 1)), 1e-9), 3);
}

TEST(Kirchhoff, EnergyOfXSquared) {
  MultiPatchModel m;
  const Material plate{1e7, 0.3, MaterialMode::kirchhoff_plate, 0.01};
  m.add_patch(h_refine(splines::make_unit_square(1.0, 2), 2, 2), plate);
  const DofMap d(m, 1);
  const auto f = l2_project(m, d, [](const Eigen::Vector2d& x) { return Eigen::Vector2d(x.x() * x.x(), 0.0); });
  const SparseMatrix K = assemble_kirchhoff(m, d);
  EXPECT_NEAR(0.5 * f.coeffs.dot(K * f.coeffs), 2.0 * plate.flexural_rigidity(), 1e-9 * plate.flexural_rigidity());
}

TEST(Kirchhoff, RejectsLinearBasis) {
  MultiPatchModel m;
  m.add_patch(splines::make_unit_square(1.0, 1), {1e7, 0.3, MaterialMode::kirchhoff_plate, 0.01});
  EXPECT_THROW(assemble_kirchhoff(m, DofMap(m, 1)), CapabilityError);
}

TEST(Load, ZeroAndNeumannResultant) {
  auto m = square_model(4.0, 3, 3);
  const DofMap d(m, 2);
  EXPECT_EQ(assemble_load(m, d, nullptr).norm(), 0.0);
  BoundaryTag t{TagKind::neumann};
  t.vector = [](const Eigen::Vector2d&) { return Eigen::Vector2d(0.0, -2.5); };
  m.tag(0, Side::v_max, t);
  const auto F = assemble_load(m, d, nullptr);
  double fy = 0, fx = 0;
  for (int i = 0; i < d.size(); ++i) (i % 2 ? fy : fx) += F[i];
  EXPECT_NEAR(fy, -2.5 * 4.0, 1e-10);
  EXPECT_NEAR(fx, 0.0, 1e-12);
}

TEST(Load, PlateSineIntegral) {
  MultiPatchModel m;
  m.add_patch(h_refine(splines::make_unit_square(0.5, 3), 8, 8), {1e7, 0.3, MaterialMode::kirchhoff_plate, 0.01});
  const DofMap d(m, 1);
  const auto F = assemble_scalar_load(m, d, [](const Eigen::Vector2d& x) {
    return -10.0 * std::sin(std::numbers::pi * x.x()) * std::sin(std::numbers::pi * x.y());
  });
  EXPECT_NEAR(F.sum(), -10.0 / (std::numbers::pi * std::numbers::pi), 1e-8);
}

TEST(Rod, KernelMassAndHandAssembledEigen) {
  MultiPatchModel m;
  m.components = 1;
  m.add_patch(h_refine(splines::make_rod(2.5, 3), 4), {1.0, 0.0, MaterialMode::rod});
  const DofMap d(m, 1);
  const auto rm = assemble_rod(m, d);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(d.size());
  EXPECT_LT((rm.K * one).norm(), 1e-12);
  EXPECT_NEAR(one.dot(rm.M * one), 2.5, 1e-13);
  EXPECT_LT(asymmetry(rm.K), 1e-14);
  EXPECT_LT(asymmetry(rm.M), 1e-14);
  EXPECT_EQ(count_small_singular(rm.K, 1e-9), 1);

  // p = 1, two elements on (0,1), both ends fixed: hand-assembled linear element matrices
  // give k = 2 E / h, m = 2 rho h / 3 for the middle node.
  MultiPatchModel lin;
  lin.components = 1;
  lin.add_patch(h_refine(splines::make_rod(1.0, 1), 2), {1.0, 0.0, MaterialMode::rod});
  const auto r1 = assemble_rod(lin, DofMap(lin, 1));
  const double h = 0.5, k = 2.0 / h, mm = 2.0 * h / 3.0;
  EXPECT_NEAR(r1.K.coeff(1, 1) / r1.M.coeff(1, 1), k / mm, 1e-12);
  EXPECT_NEAR(k / mm, 12.0, 1e-12);
}

TEST(Norms, ExactInterpolationAndPerturbation) {
  const auto m = square_model(2.0, 2, 3);
  const DofMap d(m, 2);
  auto u = [](const Eigen::Vector2d& x) { return Eigen::Vector2d(0.1 + 0.2 * x.x() - 0.3 * x.y(), 0.05 * x.x() + 0.4 * x.y()); };
  ElasticReference ref{u, [](const Eigen::Vector2d&) {
                         Eigen::Matrix2d g;
                         g << 0.2, -0.3, 0.05, 0.4;
                         return g;
                       }};
  const FieldSolution f(m, d, affine_coeffs(m, d, u));
  const auto e = error_norms(f, ref);
  EXPECT_LT(e.l2, 1e-12);
  EXPECT_LT(e.energy, 1e-12);
  EXPECT_GE(e.l2, 0.0);

  const SparseMatrix K = assemble_elasticity(m, d, 1);
  const int k = 7;
  const double eps = 1e-3;
  FieldSolution g = f;
  g.coeffs[k] += eps;
  const auto e2 = error_norms(g, ref);
  const double expected = eps * std::sqrt(K.coeff(k, k)) / std::sqrt(f.coeffs.dot(K * f.coeffs));
  EXPECT_NEAR(e2.energy, expected, 1e-9 * expected);
}

TEST(Norms, ZeroReferenceThrows) {
  const auto m = square_model(1.0, 2, 1);
  const DofMap d(m, 2);
  const FieldSolution f(m, d, Eigen::VectorXd::Zero(d.size()));
  ElasticReference zero{[](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero().eval(); },
                        [](const Eigen::Vector2d&) { return Eigen::Matrix2d::Zero().eval(); }};
  EXPECT_THROW(error_norms(f, zero), DomainError);
}

TEST(Norms, NestedReferenceOfSameFieldIsZero) {
  const auto coarse = square_model(1.0, 2, 2);
  const auto fine = square_model(1.0, 2, 4);
  auto u = [](const Eigen::Vector2d& x) { return Eigen::Vector2d(x.x() * x.y(), x.x() * x.x()); };
  const auto fc = l2_project(coarse, DofMap(coarse, 2), u);
  const auto ff = l2_project(fine, DofMap(fine, 2), u);
  EXPECT_LT(error_norms_nested(fc, ff).energy, 1e-10);
}
