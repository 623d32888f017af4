#pragma once

// Numerical check of the layer potential identity: for u solving the Laplace or
// Helmholtz equation in D,
//
//   int_{dD} dG/dn_y(x,y) u(y) - G(x,y) du/dn(y) dsigma_y = -u(x)    x in D
//                                                          = -u(x)/2  x on dD
//                                                          = 0        x outside

#include "lpsub/potentials.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lpsub {

enum class Region { interior, boundary, exterior };

std::string_view to_string(Region region);

template <int D>
struct IdentityCase {
  InteriorSolution<D> solution;  // family and k come from the solution
  Region region = Region::interior;
  Vec<D> point = Vec<D>::Zero();
  /// Boundary parameter of `point` for 2D boundary cases (point = y(t)).
  double t = 0.0;
};

/// Off the boundary: trapezoid (2D) or three-step rule (3D).
/// On the boundary: Kress splitting for both terms (2D); rotated three-step rule (3D).
cplx identity_lhs(const IdentityCase<2>& c, const Curve2D& curve, int n);
cplx identity_lhs(const IdentityCase<3>& c, const Surface3D& surface, int n);

/// -u(x), -u(x)/2 or 0 according to the region.
template <int D>
cplx identity_expected(const IdentityCase<D>& c);

double identity_residual(const IdentityCase<2>& c, const Curve2D& curve, int n);
double identity_residual(const IdentityCase<3>& c, const Surface3D& surface, int n);

/// The five built-in interior solutions for a boundary: constant, linear,
/// Laplace Green function, plane wave and Helmholtz Green function, with poles
/// placed well outside the boundary.
std::vector<InteriorSolution<2>> builtin_solutions(const Curve2D& curve, double k);
std::vector<InteriorSolution<3>> builtin_solutions(const Surface3D& surface, double k);

/// Seeded random points at distance >= min_distance from the boundary.
std::vector<Vec2> identity_points(const Curve2D& curve, Region region, int count, double min_distance,
                                  std::uint64_t seed);
std::vector<Vec3> identity_points(const Surface3D& surface, Region region, int count, double min_distance,
                                  std::uint64_t seed);

}  // namespace lpsub
