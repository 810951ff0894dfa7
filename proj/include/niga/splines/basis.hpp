#pragma once

#include <array>

#include "niga/splines/knot_vector.hpp"

namespace niga::splines {

/// The p+1 nonzero B-spline functions at a parameter, with first and second derivatives.
/// ders[k][j] is the k-th derivative of N_{span-p+j}.
struct BasisValues1D {
  int span = 0;
  int degree = 0;
  std::array<std::array<double, kMaxDegree + 2>, 3> ders{};

  int first_index() const noexcept { return span - degree; }
  int count() const noexcept { return degree + 1; }
};

/// Cox-de Boor recursion restricted to the span containing u (Piegl & Tiller A2.3).
inline BasisValues1D eval_basis_1d(const KnotVector& knots, double u) {
  const int p = knots.degree();
  const int span = knots.find_span(u);
  const auto& U = knots.values();

  std::array<std::array<double, kMaxDegree + 2>, kMaxDegree + 2> ndu{};
  std::array<double, kMaxDegree + 2> left{};
  std::array<double, kMaxDegree + 2> right{};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - U[span + 1 - j];
    right[j] = U[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  BasisValues1D out;
  out.span = span;
  out.degree = p;
  for (int j = 0; j <= p; ++j) out.ders[0][j] = ndu[j][p];

  const int nd = std::min(2, p);
  std::array<std::array<double, kMaxDegree + 2>, 2> a{};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      out.ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) out.ders[k][j] *= factor;
    factor *= (p - k);
  }
  return out;
}

}  // namespace niga::splines
