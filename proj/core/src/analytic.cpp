//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "stochq/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochq/quadrature.hpp"

namespace stochq::analytic {

namespace {

void require_pm(int s, const char* what) {
  if (s != +1 && s != -1) {
    throw std::invalid_argument(std::string(what) + " must be +1 or -1");
  }
}

double clamped_unit_dot(const UnitVec3& a, const UnitVec3& b) {
  return std::clamp(a.dot(b), -1.0, 1.0);
}

}  // namespace

double pq(int s0, int s1, const UnitVec3& n, const UnitVec3& v) {
  require_pm(s0, "s0");
  require_pm(s1, "s1");
  return 0.5 * (1.0 + s1 * s0 * clamped_unit_dot(n, v));
}

double rho_ks(const UnitVec3& x, const UnitVec3& w) {
  const double d = w.dot(x);
  return d > 0.0 ? d / kPi : 0.0;
}

double ks_transition_integral(int s0, int s1, const UnitVec3& n, const UnitVec3& v) {
  require_pm(s0, "s0");
  require_pm(s1, "s1");
  // With a = s0*n and w = s1*v, put w at the pole; at polar height c the
  // azimuthal set {a.x > 0} is an arc of exactly computable measure, so a
  // 1D integral over c remains:
  //   I = (1/pi) * integral_0^1 c * arc(c) dc,
  //   arc(c) = measure{psi : c*g + sqrt((1-c^2)(1-g^2)) cos(psi) > 0},
  // with g = a.w.  arc() has a kink at c = sqrt(1-g^2); integrate each side
  // with a composite Gauss-Legendre rule.
  const double g = s0 * s1 * clamped_unit_dot(n, v);
  const auto arc = [g](double c) {
    const double d = c * g;
    const double k = std::sqrt(std::max(0.0, (1.0 - c * c) * (1.0 - g * g)));
    if (d >= k) return 2.0 * kPi;
    if (d <= -k) return 0.0;
    return 2.0 * std::acos(std::clamp(-d / k, -1.0, 1.0));
  };
  const auto integrand = [&](double c) { return c * arc(c) / kPi; };
  static const quad::Rule rule = quad::gauss_legendre(16);
  const double kink = std::sqrt(std::max(0.0, 1.0 - g * g));
  double total = 0.0;
  if (kink > 1e-12) {
    total += quad::integrate(integrand, 0.0, kink, rule, 64);
  }
  if (1.0 - kink > 1e-12) {
    total += quad::integrate(integrand, kink, 1.0, rule, 64);
  }
  return total;
}

double pe(int s0, int s1, const UnitVec3& v0, const UnitVec3& v1) {
  require_pm(s0, "s0");
  require_pm(s1, "s1");
  return 0.25 * (1.0 + s0 * s1 * clamped_unit_dot(v0, v1));
}

}  // namespace stochq::analytic
