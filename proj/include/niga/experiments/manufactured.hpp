#pragma once

#include <array>
#include <vector>

#include "niga/assembly/norms.hpp"

namespace niga::experiments {

/// Bivariate polynomial sum c x^i y^j.
struct Monomial {
  double c;
  int i;
  int j;
};

struct Polynomial {
  std::vector<Monomial> terms;

  double value(const Eigen::Vector2d& x) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.c * std::pow(x.x(), t.i) * std::pow(x.y(), t.j);
    return s;
  }
  Eigen::Vector2d gradient(const Eigen::Vector2d& x) const {
    Eigen::Vector2d g = Eigen::Vector2d::Zero();
    for (const auto& t : terms) {
      if (t.i > 0) g.x() += t.c * t.i * std::pow(x.x(), t.i - 1) * std::pow(x.y(), t.j);
      if (t.j > 0) g.y() += t.c * t.j * std::pow(x.x(), t.i) * std::pow(x.y(), t.j - 1);
    }
    return g;
  }
  /// Terms of total degree <= order.
  Polynomial truncated(int order) const {
    Polynomial p;
    for (const auto& t : terms) {
      if (t.i + t.j <= order) p.terms.push_back(t);
    }
    return p;
  }
};

/// Equilibrated quartic displacement field (plane stress, nu = 1/4, zero body force);
/// every homogeneous part is equilibrated on its own, so truncations stay admissible.
inline std::array<Polynomial, 2> quartic_field(int order = 4) {
  Polynomial ux{{{0.25, 0, 0},     {1, 1, 0},          {3, 0, 1},   {-2, 2, 0},  {-4, 1, 1},
                 {2.5, 0, 2},      {-2, 3, 0},         {1, 2, 1},   {-4, 1, 2},  {-1.0 / 3, 0, 3},
                 {-7.0 / 32, 4, 0}, {-19.0 / 24, 3, 1}, {1, 2, 2},   {1, 1, 3},   {-11.0 / 96, 0, 4}}};
  Polynomial uy{{{1, 0, 0},          {0.5, 1, 0},       {2, 0, 1},    {-2.0 / 3, 2, 0},  {17.0 / 5, 1, 1},
                 {1.5, 0, 2},        {1.0 / 3, 3, 0},   {12, 2, 1},   {-1, 1, 2},        {-2.0 / 3, 0, 3},
                 {-11.0 / 96, 4, 0}, {1, 3, 1},         {1, 2, 2},    {-19.0 / 24, 1, 3}, {-7.0 / 32, 0, 4}}};
  return {ux.truncated(order), uy.truncated(order)};
}

/// Reference closures for the error norms.
inline assembly::ElasticReference elastic_reference(const std::array<Polynomial, 2>& u) {
  assembly::ElasticReference r;
  r.value = [u](const Eigen::Vector2d& x) { return Eigen::Vector2d(u[0].value(x), u[1].value(x)); };
  r.gradient = [u](const Eigen::Vector2d& x) {
    Eigen::Matrix2d g;
    g.row(0) = u[0].gradient(x).transpose();
    g.row(1) = u[1].gradient(x).transpose();
    return g;
  };
  return r;
}

}  // namespace niga::experiments
