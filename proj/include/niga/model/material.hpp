#pragma once

#include <Eigen/Dense>

#include "niga/errors.hpp"

namespace niga::model {

enum class MaterialMode { plane_stress, plane_strain, kirchhoff_plate, rod };

/// Linear isotropic material. For rods E is the axial stiffness per unit area and
/// density the mass per unit length.
struct Material {
  double E = 1.0;
  double nu = 0.0;
  MaterialMode mode = MaterialMode::plane_stress;
  double thickness = 1.0;
  double density = 1.0;

  void validate() const {
    if (!(E > 0.0)) throw ConfigError("material: E must be positive");
    if (!(nu >= 0.0 && nu < 0.5)) throw ConfigError("material: nu must lie in [0, 0.5)");
    if (mode == MaterialMode::kirchhoff_plate && !(thickness > 0.0)) {
      throw ConfigError("material: plate thickness must be positive");
    }
    if (!(density > 0.0)) throw ConfigError("material: density must be positive");
  }

  /// Voigt elasticity matrix for (e_xx, e_yy, 2 e_xy).
  Eigen::Matrix3d elasticity_matrix() const {
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    if (mode == MaterialMode::plane_stress) {
      const double c = E / (1.0 - nu * nu);
      C << c, c * nu, 0, c * nu, c, 0, 0, 0, c * (1.0 - nu) / 2.0;
    } else if (mode == MaterialMode::plane_strain) {
      const double c = E / ((1.0 + nu) * (1.0 - 2.0 * nu));
      C << c * (1.0 - nu), c * nu, 0, c * nu, c * (1.0 - nu), 0, 0, 0, c * (1.0 - 2.0 * nu) / 2.0;
    } else {
      throw ConfigError("material: elasticity matrix needs a plane mode");
    }
    return C;
  }

  double flexural_rigidity() const { return E * thickness * thickness * thickness / (12.0 * (1.0 - nu * nu)); }

  /// Bending matrix acting on curvatures (u_xx, u_yy, 2 u_xy).
  Eigen::Matrix3d bending_matrix() const {
    const double D = flexural_rigidity();
    Eigen::Matrix3d Db;
    Db << D, D * nu, 0, D * nu, D, 0, 0, 0, D * (1.0 - nu) / 2.0;
    return Db;
  }
};

}  // namespace niga::model
