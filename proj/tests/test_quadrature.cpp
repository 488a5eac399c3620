#include "doctest.h"

#include <cmath>
#include <numbers>

#include "functionals.hpp"
#include "quadrature.hpp"

using namespace lps;

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

} // namespace

TEST_CASE("sphere measure") {
  CHECK(build_quadrature(2, 1).weights.sum() ==
        doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
  CHECK(build_quadrature(3, 1).weights.sum() ==
        doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));
  CHECK(build_quadrature(4, 1).weights.sum() ==
        doctest::Approx(sphere_surface_area(4)).epsilon(1e-7));
  CHECK(build_quadrature(5, 1).weights.sum() ==
        doctest::Approx(sphere_surface_area(5)).epsilon(1e-7));
  CHECK_THROWS_AS(build_quadrature(6, 1), Error);
  CHECK_THROWS_AS(build_quadrature(3, 0), Error);

  const auto q = build_quadrature(3, 2);
  CHECK(q.weights.minCoeff() > 0.0);
  // node count doubles geometrically with the level
  CHECK(build_quadrature(3, 2).size() == 4 * build_quadrature(3, 1).size());
}

TEST_CASE("known moments") {
  const auto q3 = build_quadrature(3, 3);
  const double mz = integrate(q3, std::function<double(const Vec&)>(
                                      [](const Vec& u) { return u(2) * u(2); }));
  CHECK(mz == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-9));

  const auto q2 = build_quadrature(2, 2);
  const double r = 1.7;
  CHECK(integrate(q2, std::function<double(const Vec&)>([&](const Vec&) { return r; })) ==
        doctest::Approx(2 * std::numbers::pi * r).epsilon(1e-12));

  // surface area of a ball boundary through the curvature function
  const auto ball = SmoothBody::make_ball(3, 1.5);
  SampledBody sb(ball, q3);
  const double area = integrate(
      q3, std::function<double(std::size_t)>([&](std::size_t i) { return sb.f(i); }));
  CHECK(area == doctest::Approx(4 * std::numbers::pi * 1.5 * 1.5).epsilon(1e-10));
}

TEST_CASE("Minkowskian integral formulae") {
  for (int level : {4, 5}) {
    const auto q = build_quadrature(3, level);
    for (const auto& body :
         {SmoothBody::make_ball(3, 1.3), SmoothBody::make_ellipsoid((Vec(3) << 1.0, 1.2, 1.5).finished())}) {
      SampledBody sb(body, q);
      for (int j = 1; j <= 2; ++j) {
        const double lhs = integrate(q, std::function<double(std::size_t)>([&](std::size_t i) {
          double e[3] = {1.0, 0.0, 0.0};
          // s_j from the cached radii
          const double r0 = sb.radius(i, 0), r1 = sb.radius(i, 1);
          e[1] = (r0 + r1) / 2.0;
          e[2] = r0 * r1;
          return e[j];
        }));
        const double rhs = integrate(q, std::function<double(std::size_t)>([&](std::size_t i) {
          const double r0 = sb.radius(i, 0), r1 = sb.radius(i, 1);
          const double sjm1 = (j - 1 == 0) ? 1.0 : (r0 + r1) / 2.0;
          return sb.h(i) * sjm1;
        }));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
      }
    }
  }
  // n = 2: \int s_1 = \int h
  const auto q2 = build_quadrature(2, 4);
  const auto ell = SmoothBody::make_ellipsoid(vec2(1.0, 2.0));
  SampledBody sb(ell, q2);
  const double l = integrate(q2, std::function<double(std::size_t)>(
                                     [&](std::size_t i) { return sb.radius(i, 0); }));
  const double r = integrate(q2, std::function<double(std::size_t)>(
                                     [&](std::size_t i) { return sb.h(i); }));
  CHECK(l == doctest::Approx(r).epsilon(1e-10));
}

TEST_CASE("refinement convergence") {
  // anisotropic body and a stiff integrand keep levels 1..4 above the
  // roundoff floor, where the error must drop by at least 4x per level
  const auto body = SmoothBody::make_ellipsoid(vec3(0.2, 0.9, 3.0));
  auto value_at = [&](int level) {
    const auto q = build_quadrature(3, level);
    SampledBody sb(body, q);
    return integrate(q, std::function<double(std::size_t)>([&](std::size_t i) {
      return std::pow(sb.f(i), 2.5) * std::pow(sb.h(i), -3.0);
    }));
  };
  const double ref = value_at(6);
  double prev_err = std::abs(value_at(1) - ref);
  for (int level = 2; level <= 4; ++level) {
    const double err = std::abs(value_at(level) - ref);
    CHECK(err <= prev_err);
    if (prev_err > 1e-8 * std::abs(ref)) CHECK(err <= prev_err / 4.0);
    prev_err = err;
  }
}

TEST_CASE("regions") {
  const auto q = build_quadrature(3, 3);
  const SphereRegion cap = SphereRegion::cap(vec3(0, 0, 1), 0.7);
  const SphereRegion comp = cap.complement();
  const auto one = std::function<double(const Vec&)>([](const Vec&) { return 1.0; });
  const double a = integrate(q, one, &cap);
  const double b = integrate(q, one, &comp);
  const double whole = integrate(q, one);
  CHECK(a + b == doctest::Approx(whole).epsilon(1e-15)); // same nodes, disjoint masks
  // node-wise masks carry an O(cell) boundary band; the area converges under
  // refinement
  const double exact_cap = 2 * std::numbers::pi * (1 - std::cos(0.7));
  CHECK(a == doctest::Approx(exact_cap).epsilon(0.05));
  const auto q5 = build_quadrature(3, 5);
  const double a5 = integrate(q5, one, &cap);
  CHECK(std::abs(a5 - exact_cap) < std::abs(a - exact_cap));

  // hemisphere cap splits the ball integral exactly in half
  const SphereRegion hemi = SphereRegion::cap(vec3(1, 0, 0), std::numbers::pi / 2);
  const double half = integrate(q, one, &hemi);
  CHECK(half == doctest::Approx(whole / 2).epsilon(1e-12));

  const auto q2 = build_quadrature(2, 3);
  const SphereRegion sect = SphereRegion::sector(0.0, std::numbers::pi / 2);
  const double quarter = integrate(q2, std::function<double(const Vec&)>([](const Vec&) {
                                     return 1.0;
                                   }),
                                   &sect);
  CHECK(quarter == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("boundary region pullback") {
  const auto q = build_quadrature(3, 3);
  const auto ball = SmoothBody::make_ball(3, 1.0);
  // upper half-space pulls back to the upper hemisphere
  const SphereRegion upper =
      boundary_region_pullback(ball, SpatialRegion::halfspace(vec3(0, 0, 1), 0.0));
  const double area = integrate(
      q, std::function<double(const Vec&)>([](const Vec&) { return 1.0; }), &upper);
  CHECK(area == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));

  const SphereRegion all = boundary_region_pullback(ball, SpatialRegion::all_space());
  CHECK(integrate(q, std::function<double(const Vec&)>([](const Vec&) { return 1.0; }), &all) ==
        doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));

  // ellipsoid: sign of the second component of the boundary point matches u_2
  const auto ell = SmoothBody::make_ellipsoid(vec2(1.0, 2.0));
  const auto q2 = build_quadrature(2, 2);
  const SphereRegion up2 = boundary_region_pullback(ell, SpatialRegion::halfspace(vec2(0, 1), 0.0));
  for (std::size_t i = 0; i < q2.size(); ++i) {
    const Vec u = q2.node(i);
    CHECK(up2.contains(u) == (u(1) >= 0.0));
  }

  // spatial ball region: points within 1.05 of the north pole of the unit ball
  const SphereRegion nearpole =
      boundary_region_pullback(ball, SpatialRegion::ball(vec3(0, 0, 1), 1.05));
  CHECK(integrate(q, std::function<double(const Vec&)>([](const Vec&) { return 1.0; }),
                  &nearpole) > 0.0);
}

TEST_CASE("non-finite integrand is reported with its node") {
  const auto q = build_quadrature(2, 1);
  try {
    integrate(q, std::function<double(std::size_t)>([](std::size_t i) {
                return i == 3 ? std::numeric_limits<double>::infinity() : 1.0;
              }));
    FAIL("expected NonFiniteIntegrand");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::nonfinite_integrand);
    CHECK(std::string(e.what()).find("node 3") != std::string::npos);
  }
}

TEST_CASE("thread count does not change results") {
  const auto q = build_quadrature(3, 4);
  const auto body = SmoothBody::make_ellipsoid(vec3(1.0, 1.2, 1.5));
  SampledBody sb(body, q);
  const auto g = std::function<double(std::size_t)>(
      [&](std::size_t i) { return std::pow(sb.f(i), 0.6) * std::pow(sb.h(i), -0.3); });
  set_thread_cap(1);
  const double serial = integrate(q, g);
  set_thread_cap(8);
  const double parallel = integrate(q, g);
  set_thread_cap(3);
  const double odd = integrate(q, g);
  set_thread_cap(0);
  CHECK(serial == parallel); // bit identical
  CHECK(serial == odd);
}

TEST_CASE("gauss legendre rule") {
  std::vector<double> x, w;
  gauss_legendre(12, x, w);
  double sum = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += w[i];
    m2 += w[i] * x[i] * x[i];
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}
