#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "niga/errors.hpp"

namespace niga::splines {

inline constexpr int kMaxDegree = 5;

/// Open (clamped) knot vector of a univariate B-spline basis of degree `degree`.
class KnotVector {
 public:
  KnotVector() = default;

  KnotVector(std::vector<double> values, int degree) : values_(std::move(values)), degree_(degree) {
    if (degree_ < 0 || degree_ > kMaxDegree) {
      throw DomainError("knot vector: unsupported degree " + std::to_string(degree_));
    }
    if (static_cast<int>(values_.size()) < 2 * (degree_ + 1)) {
      throw DomainError("knot vector: too few knots for degree " + std::to_string(degree_));
    }
    if (!std::is_sorted(values_.begin(), values_.end())) {
      throw DomainError("knot vector: knots must be non-decreasing");
    }
    for (int i = 1; i <= degree_; ++i) {
      if (values_[i] != values_.front() || values_[values_.size() - 1 - i] != values_.back()) {
        throw DomainError("knot vector: end knots must have multiplicity p+1");
      }
    }
    if (!(values_.back() > values_.front())) {
      throw DomainError("knot vector: empty parameter range");
    }
  }

  /// Clamped knot vector on [a,b] with `elements` equal spans.
  static KnotVector uniform(int degree, int elements, double a = 0.0, double b = 1.0) {
    std::vector<double> v(degree + 1, a);
    for (int e = 1; e < elements; ++e) v.push_back(a + (b - a) * e / elements);
    v.insert(v.end(), degree + 1, b);
    return KnotVector(std::move(v), degree);
  }

  const std::vector<double>& values() const noexcept { return values_; }
  int degree() const noexcept { return degree_; }
  int num_basis() const noexcept { return static_cast<int>(values_.size()) - degree_ - 1; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }
  double operator[](int i) const { return values_[i]; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  /// Index i of the span [U_i, U_{i+1}) containing u; the last nonzero span for u = back().
  int find_span(double u) const {
    const double tol = 1e-12 * (back() - front());
    if (u < front() - tol || u > back() + tol) {
      throw DomainError("parameter " + std::to_string(u) + " outside knot range [" +
                        std::to_string(front()) + "," + std::to_string(back()) + "]");
    }
    const int n = num_basis() - 1;
    if (u >= values_[n + 1]) return n;
    if (u <= values_[degree_]) return degree_;
    auto it = std::upper_bound(values_.begin() + degree_, values_.begin() + n + 1, u);
    return static_cast<int>(it - values_.begin()) - 1;
  }

  /// Distinct knot values (element boundaries), ascending.
  std::vector<double> breakpoints() const {
    std::vector<double> b;
    for (double k : values_) {
      if (b.empty() || k > b.back()) b.push_back(k);
    }
    return b;
  }

  int multiplicity(double u) const {
    return static_cast<int>(std::count(values_.begin(), values_.end(), u));
  }

  int num_elements() const { return static_cast<int>(breakpoints().size()) - 1; }

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  std::vector<double> values_;
  int degree_ = 0;
};

}  // namespace niga::splines
