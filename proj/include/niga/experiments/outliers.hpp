#pragma once

#include <algorithm>
#include <vector>

#include "niga/errors.hpp"

namespace niga::experiments {

struct OutlierResult {
  int count = 0;
  std::vector<int> indices;  // positions in the sorted spectrum
};

/// Outliers of an ascending frequency spectrum: the trailing suffix that starts at a jump
/// w[i+1] / w[i] > 1 + delta. The largest jump in the upper half seeds the suffix, which is then
/// extended down to the lowest such jump in the upper half, so stacked outlier branches count
/// together. Ratio based, hence invariant under uniform scaling.
inline OutlierResult detect_outliers(const std::vector<double>& w, double delta = 0.10) {
  if (!(delta > 0.0)) throw DomainError("detect_outliers: delta must be positive");
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!(w[i] > 0.0) || w[i + 1] < w[i]) throw DomainError("detect_outliers: spectrum must be positive and sorted");
  }
  OutlierResult out;
  const std::size_t n = w.size();
  if (n < 2) return out;
  std::size_t seed = n, first = n;
  double largest = 1.0 + delta;
  for (std::size_t i = n / 2; i + 1 < n; ++i) {
    const double r = w[i + 1] / w[i];
    if (r > largest) {
      largest = r;
      seed = i + 1;
    }
  }
  if (seed == n) return out;
  first = seed;
  for (std::size_t i = n / 2; i + 1 < seed; ++i) {
    if (w[i + 1] / w[i] > 1.0 + delta) {
      first = i + 1;
      break;
    }
  }
  for (std::size_t i = first; i < n; ++i) out.indices.push_back(static_cast<int>(i));
  out.count = static_cast<int>(out.indices.size());
  return out;
}

}  // namespace niga::experiments
