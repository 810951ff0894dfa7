#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "niga/model/dof_map.hpp"
#include "niga/model/elements.hpp"
#include "niga/splines/geometry.hpp"

using namespace niga;
using namespace niga::model;
using niga::splines::h_refine;
using niga::splines::make_rectangle;
using niga::splines::make_unit_square;

TEST(Gauss, OnePoint) {
  const auto r = gauss_rule(1);
  EXPECT_EQ(r.points[0], 0.0);
  EXPECT_DOUBLE_EQ(r.weights[0], 2.0);
}

TEST(Gauss, TwoPoint) {
  const auto r = gauss_rule(2);
  EXPECT_NEAR(r.points[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.points[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 1.0, 1e-15);
}

TEST(Gauss, ThreePointQuartic) {
  const auto r = gauss_rule(3);
  double s = 0;
  for (int i = 0; i < 3; ++i) s += r.weights[i] * std::pow(r.points[i], 4);
  EXPECT_NEAR(s, 0.4, 1e-14);
}

TEST(Gauss, ExactnessUpTo2nMinus1) {
  for (int n = 1; n <= 16; ++n) {
    const auto r = gauss_rule(n);
    double wsum = 0;
    for (double w : r.weights) {
      EXPECT_GT(w, 0.0);
      wsum += w;
    }
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
  EXPECT_THROW(gauss_rule(0), DomainError);
  EXPECT_THROW(gauss_rule(17), DomainError);
}

TEST(Material, Validation) {
  EXPECT_THROW((Material{-1.0, 0.3}).validate(), ConfigError);
  EXPECT_THROW((Material{1.0, 0.5}).validate(), ConfigError);
  Material plate{1e7, 0.3, MaterialMode::kirchhoff_plate, 0.01};
  EXPECT_NEAR(plate.flexural_rigidity(), 1e7 * 1e-6 / (12 * 0.91), 1e-12);
}

TEST(Elements, Enumerate) {
  MultiPatchModel m;
  m.add_patch(make_unit_square(1.0, 2), {});
  EXPECT_EQ(enumerate_elements(m)[0].size(), 1u);
  m.patches[0] = h_refine(m.patches[0], 8, 8);
  const auto els = enumerate_elements(m)[0];
  EXPECT_EQ(els.size(), 64u);
  double area = 0;
  for (const auto& e : els) area += (e.u1 - e.u0) * (e.v1 - e.v0);
  EXPECT_NEAR(area, 1.0, 1e-14);
}

TEST(DofMap, DisjointAndBijective) {
  MultiPatchModel m;
  m.add_patch(make_unit_square(1.0, 2), {});
  m.add_patch(make_rectangle(1, 0, 2, 1, 2), {});
  EXPECT_EQ(global_dof_map(m, 1).size(), 18);
  MultiPatchModel one;
  one.add_patch(make_unit_square(1.0, 2), {});
  const auto d = global_dof_map(one, 2);
  EXPECT_EQ(d.size(), 18);
  const auto d2 = global_dof_map(m, 2);
  std::set<int> seen;
  for (int p = 0; p < 2; ++p)
    for (int A = 0; A < 9; ++A)
      for (int c = 0; c < 2; ++c) seen.insert(d2(p, A, c));
  EXPECT_EQ(seen.size(), 36u);
  EXPECT_EQ(*seen.begin(), 0);
  EXPECT_EQ(*seen.rbegin(), 35);
}

TEST(Interface, MergedBreakpoints) {
  EXPECT_EQ(merge_breakpoints({0, 0.5, 1}, {0, 0.5, 1}).size(), 3u);
  const auto m = merge_breakpoints({0, 0.5, 1}, {0, 1.0 / 3, 2.0 / 3, 1});
  ASSERT_EQ(m.size(), 5u);
  EXPECT_NEAR(m[1], 1.0 / 3, 1e-15);
  EXPECT_NEAR(m[2], 0.5, 1e-15);
}

namespace {
MultiPatchModel split_square(int e1u, int e1v, int e2u, int e2v) {
  MultiPatchModel m;
  m.add_patch(h_refine(make_rectangle(0, 0, 10, 10, 3), e1u, e1v), {});
  m.add_patch(h_refine(make_rectangle(10, 0, 20, 10, 2), e2u, e2v), {});
  m.interfaces.push_back({{0, Side::u_max}, {1, Side::u_min}});
  return m;
}
}  // namespace

TEST(Interface, LengthAndSegments) {
  const auto m = split_square(2, 2, 3, 3);
  m.validate();
  const auto pts = interface_quadrature(m, m.interfaces[0], 3);
  EXPECT_EQ(pts.size(), 4u * 3u);
  double len = 0;
  for (const auto& q : pts) {
    len += q.weight;
    EXPECT_NEAR(q.normal.x(), 1.0, 1e-14);
    const Eigen::Vector2d x2 = splines::eval_point(m.patches[1], q.uv2[0], q.uv2[1]);
    EXPECT_NEAR((x2 - q.x).norm(), 0.0, 1e-10);
  }
  EXPECT_NEAR(len, 10.0, 1e-10);
}

TEST(Interface, MergedRuleExactOnBothTraces) {
  // Piecewise polynomials on both sides: product of side-1 and side-2 basis traces.
  const auto m = split_square(2, 4, 3, 3);
  const auto pts = interface_quadrature(m, m.interfaces[0], 4);
  const auto fine = interface_quadrature(m, m.interfaces[0], 16);
  // A genuine polynomial check: product of two specific basis functions.
  auto basis_prod = [&](const std::vector<InterfacePoint>& q, int A, int B) {
    double s = 0;
    for (const auto& p : q) {
      const auto a = splines::eval_nurbs(m.patches[0], p.uv1[0], p.uv1[1]);
      const auto b = splines::eval_nurbs(m.patches[1], p.uv2[0], p.uv2[1]);
      double ra = 0, rb = 0;
      for (std::size_t k = 0; k < a.basis.size(); ++k)
        if (a.basis[k] == A) ra = a.R[k];
      for (std::size_t k = 0; k < b.basis.size(); ++k)
        if (b.basis[k] == B) rb = b.R[k];
      s += p.weight * ra * rb;
    }
    return s;
  };
  // Traces have degree 3 and 2 in the shared coordinate: product degree 5 <= 2*4-1.
  const int nu0 = m.patches[0].n_u();
  const int nu1 = m.patches[1].n_u();
  for (int j0 = 0; j0 < m.patches[0].n_v(); ++j0) {
    for (int j1 = 0; j1 < m.patches[1].n_v(); ++j1) {
      const int A = (nu0 - 1) + nu0 * j0, B = nu1 * j1;
      EXPECT_NEAR(basis_prod(pts, A, B), basis_prod(fine, A, B), 1e-12);
    }
  }
}

TEST(Interface, NonCoincidentRejected) {
  MultiPatchModel m;
  m.add_patch(make_rectangle(0, 0, 1, 1, 2), {});
  m.add_patch(make_rectangle(1.1, 0, 2, 1, 2), {});
  m.interfaces.push_back({{0, Side::u_max}, {1, Side::u_min}});
  EXPECT_THROW(m.validate(), InterfaceError);
}

TEST(Boundary, OverlappingTagsRejected) {
  MultiPatchModel m;
  m.add_patch(make_unit_square(1.0, 2), {});
  m.boundary.push_back({0, Side::v_min, 0.0, 0.6, {TagKind::neumann}});
  m.boundary.push_back({0, Side::v_min, 0.5, 1.0, {TagKind::dirichlet}});
  EXPECT_THROW(m.validate(), ConfigError);
  m.boundary[1].begin = 0.6;
  EXPECT_NO_THROW(m.validate());
}

TEST(Boundary, RuleMeasureAndNormals) {
  const auto disk = h_refine(splines::make_disk(10.0, 2), 2, 2);
  double len = 0;
  for (Side s : {Side::u_min, Side::u_max, Side::v_min, Side::v_max}) {
    for (const auto& bp : boundary_rule(disk, s, 0.0, 1.0, 6)) {
      len += bp.weight;
      EXPECT_NEAR(bp.normal.dot(bp.x.normalized()), 1.0, 1e-12);
    }
  }
  EXPECT_NEAR(len, 20.0 * M_PI, 1e-6);
}

TEST(Projection, ClosestPointOnSide) {
  const auto sq = h_refine(make_unit_square(2.0, 3), 3, 3);
  const auto pr = project_onto_side(sq, Side::v_min, Eigen::Vector2d(0.7, -0.3));
  EXPECT_NEAR(pr.t, 0.35, 1e-12);
  EXPECT_NEAR(pr.distance, 0.3, 1e-12);
}
