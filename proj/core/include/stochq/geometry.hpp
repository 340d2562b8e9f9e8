//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "stochq/philox.hpp"

namespace stochq {

/// Global tie rule for the whole library: sign(0) = +1.
inline int sign_pm(double x) noexcept { return x < 0.0 ? -1 : +1; }

inline constexpr double kUnitTolerance = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

/// A point on the unit sphere.  Construction validates the norm to 1e-9;
/// arithmetic that cannot leave the sphere (rotation) bypasses the check.
class UnitVec3 {
 public:
  /// Validating constructor: components must already be unit length.
  static UnitVec3 from_components(double x, double y, double z);

  /// Scale an arbitrary nonzero vector onto the sphere.
  static UnitVec3 normalized(double x, double y, double z);

  static UnitVec3 x_axis() noexcept { return UnitVec3{1.0, 0.0, 0.0}; }
  static UnitVec3 y_axis() noexcept { return UnitVec3{0.0, 1.0, 0.0}; }
  static UnitVec3 z_axis() noexcept { return UnitVec3{0.0, 0.0, 1.0}; }

  /// Spherical angles: polar theta from +z, azimuth phi from +x.
  static UnitVec3 from_spherical(double theta, double phi) noexcept {
    const double st = std::sin(theta);
    return UnitVec3{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
  }

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double z() const noexcept { return z_; }

  double dot(const UnitVec3& o) const noexcept {
    return x_ * o.x_ + y_ * o.y_ + z_ * o.z_;
  }

  UnitVec3 operator-() const noexcept { return UnitVec3{-x_, -y_, -z_}; }

  double norm() const noexcept { return std::sqrt(x_ * x_ + y_ * y_ + z_ * z_); }

  /// An arbitrary unit vector orthogonal to this one.
  UnitVec3 any_orthogonal() const;

 private:
  constexpr UnitVec3(double x, double y, double z) noexcept : x_(x), y_(y), z_(z) {}
  friend class Rotation;
  friend UnitVec3 sample_uniform_sphere(SeededRng&) noexcept;

  double x_, y_, z_;
};

struct AxisAngle {
  UnitVec3 axis;
  double angle;  // radians in [0, pi]
};

/// An SO(3) element stored as an explicit row-major 3x3 matrix.
/// from_matrix() enforces orthogonality and det = +1 to 1e-9.
class Rotation {
 public:
  using Matrix = std::array<double, 9>;  // row-major

  static Rotation identity() noexcept {
    return Rotation{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  }

  /// Validating constructor from a row-major matrix.
  static Rotation from_matrix(const Matrix& m);

  /// Rodrigues rotation about a unit axis.  angle 0 yields the identity.
  static Rotation axis_angle(const UnitVec3& axis, double angle) noexcept;

  UnitVec3 apply(const UnitVec3& v) const noexcept {
    return UnitVec3{m_[0] * v.x_ + m_[1] * v.y_ + m_[2] * v.z_,
                    m_[3] * v.x_ + m_[4] * v.y_ + m_[5] * v.z_,
                    m_[6] * v.x_ + m_[7] * v.y_ + m_[8] * v.z_};
  }

  /// Matrix product: (a * b).apply(x) == a.apply(b.apply(x)).
  friend Rotation operator*(const Rotation& a, const Rotation& b) noexcept;

  Rotation transposed() const noexcept {
    return Rotation{{m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]}};
  }

  /// Inverse equals transpose in SO(3).
  Rotation inverse() const noexcept { return transposed(); }

  /// Log map.  For angle ~ 0 the axis defaults to +z.
  AxisAngle to_axis_angle() const;

  /// Fractional rotation along this element's axis: R^alpha.
  Rotation fractional(double alpha) const;

  double at(int row, int col) const noexcept { return m_[3 * row + col]; }
  const Matrix& matrix() const noexcept { return m_; }

  double trace() const noexcept { return m_[0] + m_[4] + m_[8]; }

 private:
  explicit constexpr Rotation(const Matrix& m) noexcept : m_(m) {}
  Matrix m_;
};

Rotation compose(const Rotation& a, const Rotation& b) noexcept;

inline UnitVec3 rotate(const Rotation& r, const UnitVec3& v) noexcept {
  return r.apply(v);
}

/// Uniform point on the unit sphere: z uniform on [-1, 1], azimuth uniform
/// on [0, 2pi).  Consumes exactly two draws, so sample i of a stream lives
/// at a fixed counter offset.
UnitVec3 sample_uniform_sphere(SeededRng& rng) noexcept;

}  // namespace stochq
