//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "stochq/geometry.hpp"

namespace stochq::analytic {

/// Quantum two-measurement transition probability for outcome s1 given s0,
/// measurement axis n and evolved axis v: (1 + s1*s0*n.v) / 2.
double pq(int s0, int s1, const UnitVec3& n, const UnitVec3& v);

/// Density on the sphere associated with state w: (w.x/pi) where w.x > 0,
/// else 0.
double rho_ks(const UnitVec3& x, const UnitVec3& w);

/// Numeric evaluation of the transition integral
///   integral d2x theta(s0 n.x) rho_ks(x; s1 v)
/// by deterministic quadrature (azimuth integrated exactly, polar direction
/// by composite Gauss-Legendre split at the integrand kink).  Agrees with
/// pq() well inside 1e-3; keeping the two routes separate is the point.
double ks_transition_integral(int s0, int s1, const UnitVec3& n, const UnitVec3& v);

/// Joint outcome distribution for a maximally entangled pair measured along
/// v0 and v1: (1 + s0*s1*v0.v1) / 4.
double pe(int s0, int s1, const UnitVec3& v0, const UnitVec3& v1);

}  // namespace stochq::analytic
