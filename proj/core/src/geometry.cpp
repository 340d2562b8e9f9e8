//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stochq {

UnitVec3 UnitVec3::from_components(double x, double y, double z) {
  const double n2 = x * x + y * y + z * z;
  if (std::abs(std::sqrt(n2) - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("UnitVec3: norm " + std::to_string(std::sqrt(n2)) +
                                " deviates from 1 by more than 1e-9");
  }
  return UnitVec3{x, y, z};
}

UnitVec3 UnitVec3::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVec3: cannot normalize a zero or non-finite vector");
  }
  return UnitVec3{x / n, y / n, z / n};
}

UnitVec3 UnitVec3::any_orthogonal() const {
  // Pick the coordinate axis least aligned with *this, then project it out.
  const UnitVec3 h = std::abs(x_) < 0.9 ? x_axis() : y_axis();
  const double d = h.dot(*this);
  return normalized(h.x() - d * x_, h.y() - d * y_, h.z() - d * z_);
}

Rotation Rotation::from_matrix(const Matrix& m) {
  const Rotation r{m};
  const Rotation rt = r.transposed();
  const Rotation prod = r * rt;
  const Matrix id = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  for (int i = 0; i < 9; ++i) {
    if (std::abs(prod.m_[i] - id[i]) > kUnitTolerance) {
      throw std::invalid_argument("Rotation: matrix is not orthogonal to 1e-9");
    }
  }
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                     m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  if (std::abs(det - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("Rotation: determinant deviates from +1");
  }
  return r;
}

Rotation Rotation::axis_angle(const UnitVec3& axis, double angle) noexcept {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double ax = axis.x(), ay = axis.y(), az = axis.z();
  return Rotation{{c + t * ax * ax, t * ax * ay - s * az, t * ax * az + s * ay,
                   t * ax * ay + s * az, c + t * ay * ay, t * ay * az - s * ax,
                   t * ax * az - s * ay, t * ay * az + s * ax, c + t * az * az}};
}

Rotation operator*(const Rotation& a, const Rotation& b) noexcept {
  Rotation::Matrix out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) {
        acc += a.m_[3 * i + k] * b.m_[3 * k + j];
      }
      out[3 * i + j] = acc;
    }
  }
  return Rotation{out};
}

Rotation compose(const Rotation& a, const Rotation& b) noexcept { return a * b; }

AxisAngle Rotation::to_axis_angle() const {
  // Rotation angle from the trace, axis from the skew part; the angle ~ pi
  // branch recovers the axis from the symmetric part instead.
  const double c = std::clamp((trace() - 1.0) / 2.0, -1.0, 1.0);
  const double sx = (at(2, 1) - at(1, 2)) / 2.0;
  const double sy = (at(0, 2) - at(2, 0)) / 2.0;
  const double sz = (at(1, 0) - at(0, 1)) / 2.0;
  const double s = std::sqrt(sx * sx + sy * sy + sz * sz);
  const double angle = std::atan2(s, c);
  if (s > 1e-12) {
    return {UnitVec3::normalized(sx, sy, sz), angle};
  }
  if (c > 0.0) {
    return {UnitVec3::z_axis(), 0.0};  // identity
  }
  // angle == pi: R = 2 aa^T - I, so a_i^2 = (R_ii + 1)/2.
  const double ax = std::sqrt(std::max(0.0, (at(0, 0) + 1.0) / 2.0));
  const double ay = std::sqrt(std::max(0.0, (at(1, 1) + 1.0) / 2.0));
  const double az = std::sqrt(std::max(0.0, (at(2, 2) + 1.0) / 2.0));
  double x = ax, y = ay, z = az;
  // Off-diagonal entries 2*a_i*a_j fix the relative signs.
  if (ax >= ay && ax >= az) {
    y = (at(0, 1) + at(1, 0)) / (4.0 * ax);
    z = (at(0, 2) + at(2, 0)) / (4.0 * ax);
  } else if (ay >= az) {
    x = (at(0, 1) + at(1, 0)) / (4.0 * ay);
    z = (at(1, 2) + at(2, 1)) / (4.0 * ay);
  } else {
    x = (at(0, 2) + at(2, 0)) / (4.0 * az);
    y = (at(1, 2) + at(2, 1)) / (4.0 * az);
  }
  return {UnitVec3::normalized(x, y, z), kPi};
}

Rotation Rotation::fractional(double alpha) const {
  const AxisAngle aa = to_axis_angle();
  return axis_angle(aa.axis, alpha * aa.angle);
}

UnitVec3 sample_uniform_sphere(SeededRng& rng) noexcept {
  const double z = 2.0 * rng.next_unit() - 1.0;
  const double phi = 2.0 * kPi * rng.next_unit();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return UnitVec3{rho * std::cos(phi), rho * std::sin(phi), z};
}

}  // namespace stochq
