//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <vector>

namespace stochq::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule computed by Newton iteration on the Legendre recurrence.
Rule gauss_legendre(int n);

/// Integrate f over [a, b] with a composite rule: `panels` equal panels,
/// `rule` points each.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Rule& rule, int panels = 1);

}  // namespace stochq::quad
