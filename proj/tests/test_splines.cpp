#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "niga/splines/geometry.hpp"
#include "niga/splines/patch_io.hpp"

using namespace niga;
using namespace niga::splines;

namespace {

double gauss_area(const NurbsPatch& patch, int n) {
  // Composite Gauss-Legendre built from a tiny local rule table (oracle independent of the
  // library quadrature): 5-point rule on n x n sub-cells.
  const double x5[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                        0.9061798459386640};
  const double w5[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                        0.4786286704993665, 0.2369268850561891};
  double area = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          const double u = (a + 0.5 * (x5[i] + 1.0)) / n;
          const double v = (b + 0.5 * (x5[j] + 1.0)) / n;
          area += w5[i] * w5[j] * 0.25 / (n * n) * std::abs(eval_nurbs(patch, u, v).det);
        }
      }
    }
  }
  return area;
}

}  // namespace

TEST(KnotVector, RejectsInvalid) {
  EXPECT_THROW(KnotVector({0, 0.5, 1, 1}, 1), DomainError);
  EXPECT_THROW(KnotVector({0, 0, 1, 0.5, 1, 1}, 2), DomainError);
  EXPECT_THROW(KnotVector({0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1}, 6), DomainError);
  EXPECT_NO_THROW(KnotVector({0, 0, 1, 1}, 1));
}

TEST(Basis, LinearHat) {
  const auto b = eval_basis_1d(KnotVector({0, 0, 1, 1}, 1), 0.5);
  EXPECT_DOUBLE_EQ(b.ders[0][0], 0.5);
  EXPECT_DOUBLE_EQ(b.ders[0][1], 0.5);
}

TEST(Basis, QuadraticBernstein) {
  const auto b = eval_basis_1d(KnotVector({0, 0, 0, 1, 1, 1}, 2), 0.5);
  EXPECT_NEAR(b.ders[0][0], 0.25, 1e-15);
  EXPECT_NEAR(b.ders[0][1], 0.5, 1e-15);
  EXPECT_NEAR(b.ders[0][2], 0.25, 1e-15);
}

TEST(Basis, OutOfRangeThrows) {
  EXPECT_THROW(eval_basis_1d(KnotVector({0, 0, 1, 1}, 1), 1.5), DomainError);
}

TEST(Basis, DerivativesMatchFiniteDifferences) {
  const KnotVector kv({0, 0, 0, 0.5, 1, 1, 1}, 2);
  const double u = 0.3, h = 1e-6;
  const auto b = eval_basis_1d(kv, u);
  const auto bp = eval_basis_1d(kv, u + h);
  const auto bm = eval_basis_1d(kv, u - h);
  double s0 = 0, s1 = 0, s2 = 0;
  for (int j = 0; j <= 2; ++j) {
    const double fd1 = (bp.ders[0][j] - bm.ders[0][j]) / (2 * h);
    const double fd2 = (bp.ders[1][j] - bm.ders[1][j]) / (2 * h);
    EXPECT_NEAR(b.ders[1][j], fd1, 1e-6 * std::max(1.0, std::abs(fd1)));
    EXPECT_NEAR(b.ders[2][j], fd2, 1e-6 * std::max(1.0, std::abs(fd2)));
    s0 += b.ders[0][j];
    s1 += b.ders[1][j];
    s2 += b.ders[2][j];
  }
  EXPECT_NEAR(s0, 1.0, 1e-14);
  EXPECT_NEAR(s1, 0.0, 1e-12);
  EXPECT_NEAR(s2, 0.0, 1e-12);
}

class Continuity : public ::testing::TestWithParam<int> {};

TEST_P(Continuity, CpMinusOneAcrossSimpleKnot) {
  const int p = GetParam();
  const KnotVector kv = KnotVector::uniform(p, 3);
  const double knot = 1.0 / 3.0, eps = 1e-11;
  const auto left = eval_basis_1d(kv, knot - eps);
  const auto right = eval_basis_1d(kv, knot + eps);
  // Compare full-length basis vectors since the spans differ.
  for (int k = 0; k <= std::min(p - 1, 2); ++k) {
    std::vector<double> l(kv.num_basis(), 0.0), r(kv.num_basis(), 0.0);
    for (int j = 0; j <= p; ++j) {
      l[left.first_index() + j] = left.ders[k][j];
      r[right.first_index() + j] = right.ders[k][j];
    }
    for (int a = 0; a < kv.num_basis(); ++a) EXPECT_NEAR(l[a], r[a], 1e-9 * std::pow(10.0, k)) << "k=" << k;
  }
}

INSTANTIATE_TEST_SUITE_P(Degrees, Continuity, ::testing::Values(1, 2, 3, 4, 5));

TEST(Nurbs, IdentityMapHasIdentityJacobian) {
  const auto patch = make_unit_square(1.0, 3);
  const auto sp = eval_nurbs(patch, 0.3, 0.7);
  EXPECT_NEAR((sp.jacobian - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-13);
  EXPECT_NEAR((sp.grad - sp.grad_param).norm(), 0.0, 1e-12);
  EXPECT_NEAR(sp.x.x(), 0.3, 1e-14);
  EXPECT_NEAR(sp.x.y(), 0.7, 1e-14);
}

TEST(Nurbs, QuarterArcOnCircle) {
  const double R = 3.0;
  const auto patch = make_quarter_annulus(R, 2 * R, 2);
  for (int k = 0; k < 20; ++k) {
    const auto x = eval_point(patch, k / 19.0, 0.0);
    EXPECT_NEAR(x.squaredNorm(), R * R, 1e-12 * R * R);
  }
  EXPECT_NEAR(patch.weights[1], std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(Nurbs, PartitionOfUnityRandom) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.01, 0.99);
  for (const auto& patch : {h_refine(make_disk(10.0, 3), 3, 2), make_quarter_annulus(1, 2, 4),
                            h_refine(make_unit_square(20, 2), 4, 4)}) {
    for (int s = 0; s < 100; ++s) {
      const auto sp = eval_nurbs(patch, U(rng), U(rng));
      EXPECT_NEAR(sp.R.sum(), 1.0, 1e-12);
      EXPECT_NEAR(sp.grad.colwise().sum().norm(), 0.0, 1e-9);
    }
  }
}

TEST(Nurbs, PhysicalDerivativesMatchFiniteDifferences) {
  // Differentiate R_A(x) by moving in physical space: invert the map with Newton.
  const auto patch = h_refine(make_quarter_annulus(1.0, 2.0, 3), 2, 2);
  const double u0 = 0.37, v0 = 0.61;
  const auto sp = eval_nurbs(patch, u0, v0);
  auto basis_at = [&](const Eigen::Vector2d& x) {
    Eigen::Vector2d uv(u0, v0);
    for (int it = 0; it < 30; ++it) {
      const auto q = eval_nurbs(patch, uv[0], uv[1]);
      uv -= q.jacobian.inverse() * (q.x - x);
    }
    const auto q = eval_nurbs(patch, uv[0], uv[1]);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(patch.size());
    for (std::size_t k = 0; k < q.basis.size(); ++k) full[q.basis[k]] = q.R[k];
    return full;
  };
  auto grad_at = [&](const Eigen::Vector2d& x, int dim) {
    const double h = 1e-5;
    Eigen::Vector2d e = Eigen::Vector2d::Zero();
    e[dim] = h;
    return Eigen::VectorXd((basis_at(x + e) - basis_at(x - e)) / (2 * h));
  };
  const double h = 1e-4;
  for (int d = 0; d < 2; ++d) {
    const Eigen::VectorXd fd = grad_at(sp.x, d);
    for (std::size_t k = 0; k < sp.basis.size(); ++k) {
      EXPECT_NEAR(sp.grad(k, d), fd[sp.basis[k]], 1e-6 * std::max(1.0, std::abs(fd[sp.basis[k]])));
    }
  }
  // Second derivatives from central differences of analytic first derivatives.
  auto grad_analytic = [&](const Eigen::Vector2d& x) {
    Eigen::Vector2d uv(u0, v0);
    for (int it = 0; it < 30; ++it) {
      const auto q = eval_nurbs(patch, uv[0], uv[1]);
      uv -= q.jacobian.inverse() * (q.x - x);
    }
    const auto q = eval_nurbs(patch, uv[0], uv[1]);
    Eigen::MatrixX2d full = Eigen::MatrixX2d::Zero(patch.size(), 2);
    for (std::size_t k = 0; k < q.basis.size(); ++k) full.row(q.basis[k]) = q.grad.row(k);
    return full;
  };
  const Eigen::MatrixX2d gxp = grad_analytic(sp.x + Eigen::Vector2d(h, 0));
  const Eigen::MatrixX2d gxm = grad_analytic(sp.x - Eigen::Vector2d(h, 0));
  const Eigen::MatrixX2d gyp = grad_analytic(sp.x + Eigen::Vector2d(0, h));
  const Eigen::MatrixX2d gym = grad_analytic(sp.x - Eigen::Vector2d(0, h));
  for (std::size_t k = 0; k < sp.basis.size(); ++k) {
    const int A = sp.basis[k];
    const double xx = (gxp(A, 0) - gxm(A, 0)) / (2 * h);
    const double xy = (gyp(A, 0) - gym(A, 0)) / (2 * h);
    const double yy = (gyp(A, 1) - gym(A, 1)) / (2 * h);
    EXPECT_NEAR(sp.hess(k, 0), xx, 1e-6 * std::max(1.0, std::abs(xx)));
    EXPECT_NEAR(sp.hess(k, 1), xy, 1e-6 * std::max(1.0, std::abs(xy)));
    EXPECT_NEAR(sp.hess(k, 2), yy, 1e-6 * std::max(1.0, std::abs(yy)));
  }
}

TEST(Nurbs, DegenerateJacobianThrowsWithParameters) {
  const auto disk = make_disk(1.0, 2);
  try {
    eval_nurbs(disk, 0.0, 0.0);
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.u(), 0.0);
    EXPECT_EQ(e.v(), 0.0);
  }
}

TEST(Refine, UnitSquareOnce) {
  const auto sq = make_unit_square(20.0, 2);
  EXPECT_EQ(sq.n_u(), 3);
  EXPECT_EQ(sq.n_v(), 3);
  const auto r = h_refine(sq, 2, 2);
  EXPECT_EQ(r.knots_u.num_elements(), 2);
  EXPECT_EQ(r.knots_v->num_elements(), 2);
  EXPECT_NEAR((r.points.front() - sq.points.front()).norm(), 0.0, 1e-14);
  EXPECT_NEAR((r.points.back() - sq.points.back()).norm(), 0.0, 1e-14);
}

TEST(Refine, GeometryInvariance) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int p = 2; p <= 5; ++p) {
    const auto base = make_disk(10.0, p);
    const auto fine = h_refine(h_refine(base, 2, 3), 2, 2);
    for (int s = 0; s < 50; ++s) {
      const double u = U(rng), v = U(rng);
      EXPECT_NEAR((eval_point(base, u, v) - eval_point(fine, u, v)).norm(), 0.0, 1e-12 * 10.0);
    }
  }
}

TEST(Refine, QuarterDiskArcStaysOnCircle) {
  const auto fine = h_refine(h_refine(make_quarter_annulus(2.0, 5.0, 3), 2, 2), 2, 2);
  for (int k = 0; k <= 40; ++k) {
    EXPECT_NEAR(eval_point(fine, k / 40.0, 0.0).norm(), 2.0, 1e-12);
    EXPECT_NEAR(eval_point(fine, k / 40.0, 1.0).norm(), 5.0, 1e-12);
  }
}

TEST(Refine, RejectsZeroSubdivisions) { EXPECT_THROW(h_refine(make_unit_square(1, 2), 0, 1), DomainError); }

TEST(Geometry, SquareGrid) {
  const auto sq = make_unit_square(20.0, 2);
  EXPECT_EQ(sq.size(), 9);
  for (double w : sq.weights) EXPECT_EQ(w, 1.0);
  EXPECT_THROW(make_disk(10.0, 1), DomainError);
  EXPECT_THROW(make_disk(-1.0, 2), DomainError);
}

TEST(Geometry, DiskAreaAndBoundary) {
  for (int p = 2; p <= 5; ++p) {
    const auto disk = make_disk(10.0, p);
    const double area = gauss_area(disk, 8);
    EXPECT_NEAR(area, 100.0 * std::numbers::pi, 1e-9 * 100.0 * std::numbers::pi) << "p=" << p;
    for (int k = 0; k <= 10; ++k) {
      EXPECT_NEAR(eval_point(disk, k / 10.0, 0.0).norm(), 10.0, 1e-11);
      EXPECT_NEAR(eval_point(disk, 1.0, k / 10.0).norm(), 10.0, 1e-11);
    }
    for (int i = 1; i < 10; ++i) {
      for (int j = 1; j < 10; ++j) EXPECT_GT(eval_nurbs(disk, i / 10.0, j / 10.0).det, 0.0);
    }
  }
}

TEST(Geometry, RodIsIdentityMap) {
  const auto rod = h_refine(make_rod(2.0, 3), 4);
  const auto cp = eval_nurbs_1d(rod, 0.25);
  EXPECT_NEAR(cp.x, 0.5, 1e-14);
  EXPECT_NEAR(cp.dx, 2.0, 1e-13);
  EXPECT_NEAR(cp.R.sum(), 1.0, 1e-14);
}

TEST(PatchIo, RoundTrip) {
  const auto disk = h_refine(make_disk(10.0, 3), 2, 3);
  std::stringstream ss;
  write_patch(ss, disk);
  const auto back = read_patch(ss);
  EXPECT_EQ(back.knots_u, disk.knots_u);
  EXPECT_EQ(*back.knots_v, *disk.knots_v);
  for (int A = 0; A < disk.size(); ++A) {
    EXPECT_EQ(back.weights[A], disk.weights[A]);
    EXPECT_EQ(back.points[A], disk.points[A]);
  }
  std::stringstream bad("dim 2\ndegree_u 2\nknots_u 0 0 1 1\n");
  EXPECT_THROW(read_patch(bad), DomainError);
}
