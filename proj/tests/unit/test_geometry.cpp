//---------------------------------------------------------------------------//
// Copyright 2026 the stochq authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stochq/geometry.hpp"
#include "stochq/mc.hpp"
#include "stochq/quadrature.hpp"
#include "stochq/stats.hpp"

using namespace stochq;

namespace {

UnitVec3 random_unit(SeededRng& rng) { return sample_uniform_sphere(rng); }

Rotation random_rotation(SeededRng& rng) {
  const UnitVec3 axis = sample_uniform_sphere(rng);
  return Rotation::axis_angle(axis, 2.0 * kPi * rng.next_unit());
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("unit vector construction validates the norm") {
  CHECK_NOTHROW(UnitVec3::from_components(1.0, 0.0, 0.0));
  CHECK_NOTHROW(UnitVec3::from_components(0.0, 1.0 + 0.9e-9, 0.0));
  CHECK_THROWS_AS(UnitVec3::from_components(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(UnitVec3::from_components(0.0, 0.0, 1.0 + 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(UnitVec3::normalized(0.0, 0.0, 0.0), std::invalid_argument);

  const UnitVec3 v = UnitVec3::normalized(3.0, -4.0, 12.0);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign convention: sign(0) = +1") {
  CHECK(sign_pm(0.0) == +1);
  CHECK(sign_pm(-0.0) == +1);
  CHECK(sign_pm(1e-300) == +1);
  CHECK(sign_pm(-1e-300) == -1);
}

TEST_CASE("rotation constructor rejects non-orthogonal matrices") {
  CHECK_THROWS_AS(Rotation::from_matrix({1, 0, 0, 0, 1, 1e-6, 0, 0, 1}),
                  std::invalid_argument);
  // Orthogonal with det = -1 (a reflection) is not a rotation.
  CHECK_THROWS_AS(Rotation::from_matrix({1, 0, 0, 0, 1, 0, 0, 0, -1}),
                  std::invalid_argument);
  CHECK_NOTHROW(Rotation::from_matrix({0, -1, 0, 1, 0, 0, 0, 0, 1}));
}

TEST_CASE("identity and axis-angle basics") {
  const UnitVec3 x = UnitVec3::x_axis();
  const UnitVec3 rx = Rotation::identity().apply(x);
  CHECK(rx.x() == doctest::Approx(1.0));

  // angle 0 is the identity for any axis
  SeededRng rng(11, 0);
  for (int i = 0; i < 10; ++i) {
    const Rotation r = Rotation::axis_angle(random_unit(rng), 0.0);
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < 3; ++j) {
        CHECK(r.at(k, j) == (k == j ? 1.0 : 0.0));
      }
    }
  }

  // quarter turn about z maps x to y
  const UnitVec3 y = Rotation::axis_angle(UnitVec3::z_axis(), kPi / 2).apply(x);
  CHECK(y.x() == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  CHECK(y.y() == doctest::Approx(1.0).epsilon(1e-9));

  // half turn about z maps x to -x
  const UnitVec3 mx = Rotation::axis_angle(UnitVec3::z_axis(), kPi).apply(x);
  CHECK(mx.x() == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("rotation by theta then -theta is the identity") {
  SeededRng rng(12, 0);
  for (int i = 0; i < 20; ++i) {
    const UnitVec3 axis = random_unit(rng);
    const double theta = 2.0 * kPi * rng.next_unit();
    const Rotation r = Rotation::axis_angle(axis, theta) * Rotation::axis_angle(axis, -theta);
    const UnitVec3 v = random_unit(rng);
    const UnitVec3 rv = r.apply(v);
    CHECK(rv.dot(v) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("composition matches sequential application") {
  SeededRng rng(13, 0);
  for (int i = 0; i < 50; ++i) {
    const Rotation a = random_rotation(rng);
    const Rotation b = random_rotation(rng);
    const UnitVec3 v = random_unit(rng);
    const UnitVec3 lhs = rotate(a, rotate(b, v));
    const UnitVec3 rhs = rotate(compose(a, b), v);
    CHECK(std::abs(lhs.x() - rhs.x()) < 1e-9);
    CHECK(std::abs(lhs.y() - rhs.y()) < 1e-9);
    CHECK(std::abs(lhs.z() - rhs.z()) < 1e-9);
  }
}

TEST_CASE("rotation preserves the norm to 1e-9") {
  SeededRng rng(14, 0);
  for (int i = 0; i < 200; ++i) {
    const UnitVec3 v = rotate(random_rotation(rng), random_unit(rng));
    CHECK(std::abs(v.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("axis-angle extraction round trips") {
  SeededRng rng(15, 0);
  auto check_roundtrip = [](const UnitVec3& axis, double angle) {
    const Rotation r = Rotation::axis_angle(axis, angle);
    const AxisAngle aa = r.to_axis_angle();
    const Rotation back = Rotation::axis_angle(aa.axis, aa.angle);
    for (int k = 0; k < 9; ++k) {
      CHECK(std::abs(back.matrix()[k] - r.matrix()[k]) < 1e-8);
    }
  };
  for (int i = 0; i < 30; ++i) {
    check_roundtrip(random_unit(rng), kPi * rng.next_unit());
  }
  check_roundtrip(UnitVec3::normalized(1, 2, 3), 1e-7);   // near identity
  check_roundtrip(UnitVec3::normalized(-2, 1, 5), kPi);   // half turn
  check_roundtrip(UnitVec3::x_axis(), kPi);
  check_roundtrip(UnitVec3::z_axis(), kPi - 1e-9);
}

TEST_CASE("fractional rotation halves compose back") {
  SeededRng rng(16, 0);
  for (int i = 0; i < 20; ++i) {
    const Rotation r = random_rotation(rng);
    const Rotation h = r.fractional(0.5);
    const Rotation hh = h * h;
    for (int k = 0; k < 9; ++k) {
      CHECK(std::abs(hh.matrix()[k] - r.matrix()[k]) < 1e-8);
    }
  }
}

TEST_CASE("sphere sampling: unit norm and two draws per sample") {
  SeededRng rng(17, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto before = rng.position();
    const UnitVec3 v = sample_uniform_sphere(rng);
    CHECK(rng.position() - before == 2);
    CHECK(std::abs(v.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("sphere sampling: component means vanish at 4 sigma" *
          doctest::skip(false)) {
  constexpr std::uint64_t n = 1'000'000;
  double sx = 0, sy = 0, sz = 0;
  SeededRng rng(18, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const UnitVec3 v = sample_uniform_sphere(rng);
    sx += v.x();
    sy += v.y();
    sz += v.z();
  }
  const double sigma = 1.0 / std::sqrt(3.0 * static_cast<double>(n));
  CHECK(std::abs(sx / n) < 4 * sigma);
  CHECK(std::abs(sy / n) < 4 * sigma);
  CHECK(std::abs(sz / n) < 4 * sigma);
}

// The projection of a uniform sphere point onto any axis is uniform on
// [-1, 1].  First check the claim itself by integrating the cap area
// numerically, then test the sampler against it with Kolmogorov-Smirnov.
TEST_CASE("sphere sampling: projection onto any axis is uniform") {
  const quad::Rule rule = quad::gauss_legendre(32);
  for (const double u : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
    const double cap = quad::integrate([](double t) { return std::sin(t); },
                                       std::acos(u), kPi, rule, 8) /
                       2.0;
    CHECK(cap == doctest::Approx((u + 1.0) / 2.0).epsilon(1e-10));
  }

  constexpr std::uint64_t n = 1'000'000;
  const UnitVec3 axis = UnitVec3::normalized(1.0, -2.0, 0.5);
  std::vector<double> projections(n);
  SeededRng rng(19, 0);
  for (auto& p : projections) {
    p = axis.dot(sample_uniform_sphere(rng));
  }
  const auto ks = stats::ks_uniformity(projections, -1.0, 1.0);
  CHECK(ks.pass);
}

TEST_CASE("sphere sampling: rotation invariance via octant chi-square") {
  constexpr std::uint64_t n = 1'000'000;
  const Rotation q = Rotation::axis_angle(UnitVec3::normalized(1, 1, 0), 1.234);
  std::array<std::uint64_t, 8> raw{};
  std::array<std::uint64_t, 8> rotated{};
  SeededRng rng(20, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const UnitVec3 v = sample_uniform_sphere(rng);
    const UnitVec3 w = q.apply(v);
    raw[(v.x() > 0) * 4 + (v.y() > 0) * 2 + (v.z() > 0)]++;
    rotated[(w.x() > 0) * 4 + (w.y() > 0) * 2 + (w.z() > 0)]++;
  }
  const double expected = static_cast<double>(n) / 8.0;
  auto chi2 = [&](const std::array<std::uint64_t, 8>& counts) {
    double stat = 0.0;
    for (const auto c : counts) {
      const double d = static_cast<double>(c) - expected;
      stat += d * d / expected;
    }
    return stat;
  };
  // 1% critical value of chi-square with 7 degrees of freedom.
  CHECK(chi2(raw) < 18.475);
  CHECK(chi2(rotated) < 18.475);
}

TEST_CASE("tally_parallel is independent of the thread count") {
  constexpr std::uint64_t n = 200'000;
  auto run = [&](unsigned threads) {
    return mc::tally_parallel<4>(
        n, 77, 0,
        [](std::uint64_t, SeededRng& rng) -> std::size_t {
          return rng.next_u64() & 3u;
        },
        threads);
  };
  const auto serial = run(1);
  const auto dual = run(2);
  const auto many = run(5);
  CHECK(serial == dual);
  CHECK(serial == many);
}

}  // TEST_SUITE
