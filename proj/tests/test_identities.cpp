#include "lpsub/identities.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace lpsub;

namespace {

IdentityCase<2> boundary_case(const InteriorSolution<2>& sol, const Curve2D& curve, double t) {
  return {sol, Region::boundary, curve.sample(t).point, t};
}

// Largest residual over 10 interior and 10 exterior points at distance >= 0.3.
double max_residual_2d(const InteriorSolution<2>& sol, const Curve2D& curve, int n) {
  double worst = 0.0;
  for (Region region : {Region::interior, Region::exterior}) {
    for (const Vec2& x : identity_points(curve, region, 10, 0.3, 31)) {
      worst = std::max(worst, identity_residual(IdentityCase<2>{sol, region, x}, curve, n));
    }
  }
  return worst;
}

double max_residual_3d(const InteriorSolution<3>& sol, const Surface3D& surface, int n) {
  double worst = 0.0;
  for (Region region : {Region::interior, Region::exterior}) {
    for (const Vec3& x : identity_points(surface, region, 10, 0.3, 31)) {
      worst = std::max(worst, identity_residual(IdentityCase<3>{sol, region, x}, surface, n));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("Gauss law on the unit circle") {
  const auto circle = Curve2D::circle(1.0);
  const auto one = constant_solution<2>();
  CHECK(std::abs(identity_lhs(IdentityCase<2>{one, Region::interior, Vec2(0, 0)}, circle, 128) + 1.0) < 1e-12);
  CHECK(std::abs(identity_lhs(IdentityCase<2>{one, Region::exterior, Vec2(3, 0)}, circle, 128)) < 1e-12);
}

TEST_CASE("plane wave identity inside the unit circle") {
  const double k = 5.0;
  const auto pw = plane_wave_solution<2>(k, Vec2(1, 0));
  const Vec2 x(0.2, 0.1);
  const cplx lhs = identity_lhs(IdentityCase<2>{pw, Region::interior, x}, Curve2D::circle(1.0), 256);
  CHECK(std::abs(lhs + std::exp(cplx(0.0, k * x.x()))) < 1e-10);
}

TEST_CASE("boundary identity for a constant on the circle") {
  const auto circle = Curve2D::circle(1.0);
  for (double t : {0.0, 0.7, 3.0}) {
    const cplx lhs = identity_lhs(boundary_case(constant_solution<2>(), circle, t), circle, 128);
    CHECK(std::abs(lhs + 0.5) <= 1e-10);
  }
}

TEST_CASE("Laplace Green function identity on the kite") {
  const auto kite = Curve2D::kite();
  const auto g = green_laplace_solution<2>(Vec2(3, 3));
  for (const Vec2& x : identity_points(kite, Region::interior, 5, 0.3, 4)) {
    CHECK(identity_residual(IdentityCase<2>{g, Region::interior, x}, kite, 256) <= 1e-10);
  }
}

TEST_CASE("Helmholtz Green function identity outside") {
  const auto kite = Curve2D::kite();
  const auto g = builtin_solutions(kite, 5.0)[4];
  REQUIRE(g.label == "green-helmholtz");
  for (const Vec2& x : identity_points(kite, Region::exterior, 5, 0.3, 8)) {
    CHECK(identity_residual(IdentityCase<2>{g, Region::exterior, x}, kite, 256) <= 1e-9);
  }
}

TEST_CASE("2D identities hold for every built-in solution") {
  for (const auto& curve : {Curve2D::circle(1.0), Curve2D::kite(), Curve2D::star()}) {
    for (const auto& sol : builtin_solutions(curve, 5.0)) {
      CAPTURE(curve.name());
      CAPTURE(sol.label);
      double prev = max_residual_2d(sol, curve, 32);
      for (int n : {64, 128, 256}) {
        const double r = max_residual_2d(sol, curve, n);
        CHECK(r <= 2.0 * prev + 1e-14);
        prev = r;
      }
      CHECK(prev <= 1e-9);
    }
  }
}

TEST_CASE("boundary identity selects the factor -1/2") {
  for (const auto& curve : {Curve2D::circle(1.0), Curve2D::kite()}) {
    for (const auto& sol : builtin_solutions(curve, 5.0)) {
      CAPTURE(sol.label);
      double prev = 1e300;
      for (int n : {32, 64, 128, 256}) {
        double worst = 0.0;
        for (double t : {0.4, 2.1, 4.4}) {
          const auto c = boundary_case(sol, curve, t);
          const cplx lhs = identity_lhs(c, curve, n);
          const cplx u = sol.value(c.point);
          const double half = std::abs(lhs + 0.5 * u);
          if (n == 256) {
            CHECK(half < std::abs(lhs));
            CHECK(half < std::abs(lhs + u));
          }
          worst = std::max(worst, half);
        }
        CHECK(worst <= 2.0 * prev + 1e-14);
        prev = worst;
      }
      CHECK(prev <= 1e-9);
    }
  }
}

TEST_CASE("3D boundary identity on the sphere") {
  const auto sphere = Surface3D::sphere(1.0);
  const Vec3 x = Vec3(0.3, -0.4, 0.5).normalized();
  const cplx lhs = identity_lhs(IdentityCase<3>{constant_solution<3>(), Region::boundary, x}, sphere, 16);
  CHECK(std::abs(lhs + 0.5) < std::abs(lhs));
  CHECK(std::abs(lhs + 0.5) < std::abs(lhs + 1.0));
}

TEST_CASE("3D interior Gauss law at the center") {
  const auto sphere = Surface3D::sphere(2.0);
  const cplx lhs = identity_lhs(IdentityCase<3>{constant_solution<3>(), Region::interior, Vec3::Zero()}, sphere, 16);
  CHECK(std::abs(lhs + 1.0) < 1e-12);
}

// The three-step rule with 16 Gauss nodes on (0, pi) cannot resolve kernel
// peaks of width 0.3 / R; the residuals stay near 1e-4.
TEST_CASE("3D identities reach 1e-5 at N = 16" * doctest::may_fail()) {
  const auto sphere = Surface3D::sphere(1.0);
  for (const auto& sol : builtin_solutions(sphere, 5.0)) {
    CAPTURE(sol.label);
    CHECK(max_residual_3d(sol, sphere, 16) <= 1e-5);
  }
}
