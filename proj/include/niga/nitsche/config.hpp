#pragma once

#include <cmath>
#include <string>

#include "niga/errors.hpp"

namespace niga::nitsche {

enum class GammaKind { parameter_free, eigen_scaled, fixed };

/// How the global stabilization gamma_h = gamma0 is chosen.
struct GammaPolicy {
  GammaKind kind = GammaKind::eigen_scaled;
  double value = 2.0;  // multiplier m (gamma0 = m lambda_max) or the fixed gamma0

  static GammaPolicy parameter_free() { return {GammaKind::parameter_free, 0.0}; }
  static GammaPolicy eigen_scaled(double m = 2.0) { return {GammaKind::eigen_scaled, m}; }
  static GammaPolicy fixed(double g) { return {GammaKind::fixed, g}; }

  /// "free", "eigen", "eigen:<m>", "fixed:<v>" or "fixed:tiny" (= reference gamma0 / 1e4).
  static GammaPolicy parse(const std::string& s) {
    auto number = [&](const std::string& t) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(t, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != t.size() || !std::isfinite(v)) throw ConfigError("gamma policy: bad number '" + t + "'");
      return v;
    };
    if (s == "free") return parameter_free();
    if (s == "eigen") return eigen_scaled();
    if (s.rfind("eigen:", 0) == 0) return eigen_scaled(number(s.substr(6)));
    if (s == "fixed:tiny") return eigen_scaled(2.0e-4);
    if (s.rfind("fixed:", 0) == 0) return fixed(number(s.substr(6)));
    throw ConfigError("gamma policy: expected free|eigen:<m>|fixed:<v>, got '" + s + "'");
  }

  std::string str() const {
    switch (kind) {
      case GammaKind::parameter_free: return "free";
      case GammaKind::eigen_scaled: return "eigen:" + std::to_string(value);
      case GammaKind::fixed: return "fixed:" + std::to_string(value);
    }
    return "?";
  }
};

/// A member of the Nitsche family: theta = 1 standard (symmetric), theta = -1 skew-symmetric.
struct NitscheConfig {
  double theta = 1.0;
  GammaPolicy gamma = GammaPolicy::eigen_scaled();

  void validate() const {
    if (!std::isfinite(theta)) throw ConfigError("nitsche: theta must be finite");
    if (gamma.kind == GammaKind::parameter_free && theta != -1.0) {
      throw ConfigError("nitsche: the parameter-free variant requires theta = -1");
    }
    if (gamma.kind == GammaKind::eigen_scaled && !(gamma.value > 0.0)) {
      throw ConfigError("nitsche: eigen-scaled multiplier must be positive");
    }
    if (gamma.kind == GammaKind::fixed && !(gamma.value >= 0.0)) {
      throw ConfigError("nitsche: fixed gamma0 must be non-negative");
    }
    if (gamma.kind == GammaKind::fixed && gamma.value == 0.0 && theta != -1.0) {
      throw ConfigError("nitsche: gamma0 = 0 requires theta = -1");
    }
  }

  static NitscheConfig skew_free() { return {-1.0, GammaPolicy::parameter_free()}; }
  static NitscheConfig standard() { return {1.0, GammaPolicy::eigen_scaled()}; }
};

}  // namespace niga::nitsche
