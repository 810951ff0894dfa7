#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "niga/errors.hpp"

namespace niga::model {

struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int size() const noexcept { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule on [-1,1] (Newton iteration on the Legendre recurrence).
inline QuadratureRule gauss_rule(int n) {
  if (n < 1 || n > 16) throw DomainError("gauss_rule: point count must be in [1,16], got " + std::to_string(n));
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

/// Rule mapped to [a,b].
inline QuadratureRule gauss_rule(int n, double a, double b) {
  QuadratureRule r = gauss_rule(n);
  for (int i = 0; i < r.size(); ++i) {
    r.points[i] = 0.5 * (a + b) + 0.5 * (b - a) * r.points[i];
    r.weights[i] *= 0.5 * (b - a);
  }
  return r;
}

}  // namespace niga::model
