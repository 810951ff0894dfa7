#pragma once

#include <stdexcept>
#include <string>

namespace niga {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of a function (e.g. outside a knot range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometry map; carries the parameter where it was detected.
class GeometryError : public Error {
 public:
  GeometryError(const std::string& what, double u, double v)
      : Error(what + " at (u,v)=(" + std::to_string(u) + "," + std::to_string(v) + ")"), u_(u), v_(v) {}
  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }

 private:
  double u_;
  double v_;
};

/// Invalid or inconsistent configuration (Nitsche policy, material, CLI config file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-matching or non-coincident interface, failed closest-point inversion.
class InterfaceError : public Error {
 public:
  using Error::Error;
};

/// Direct solver or eigensolver failure.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what, long rank_estimate = -1)
      : Error(what), rank_(rank_estimate) {}
  long rank_estimate() const noexcept { return rank_; }

 private:
  long rank_;
};

/// Requested operation exceeds what the dense fallback can handle.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace niga
