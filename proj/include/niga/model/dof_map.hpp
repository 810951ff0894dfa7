#pragma once

#include <vector>

#include "niga/model/model.hpp"

namespace niga::model {

/// Global numbering: patches occupy disjoint consecutive ranges; components are interleaved
/// per control point (index = offset + components * A + c).
class DofMap {
 public:
  DofMap() = default;
  DofMap(const MultiPatchModel& m, int components) : components_(components) {
    int off = 0;
    for (const auto& p : m.patches) {
      offsets_.push_back(off);
      off += p.size() * components;
    }
    total_ = off;
  }
  int operator()(int patch, int local, int component = 0) const {
    return offsets_[patch] + components_ * local + component;
  }
  int size() const noexcept { return total_; }
  int components() const noexcept { return components_; }
  int offset(int patch) const { return offsets_.at(patch); }
  int patch_size(int patch) const {
    return (patch + 1 < static_cast<int>(offsets_.size()) ? offsets_[patch + 1] : total_) - offsets_[patch];
  }

 private:
  std::vector<int> offsets_;
  int components_ = 1;
  int total_ = 0;
};

inline DofMap global_dof_map(const MultiPatchModel& m, int components) { return DofMap(m, components); }

}  // namespace niga::model
