#pragma once

// Quadrature on closed curves and on the sphere: the periodic trapezoid rule,
// Kress product quadrature for logarithmically singular periodic kernels, the
// product Gauss rules on the sphere and the three-step close-evaluation rule
// (rotate the target to the north pole, trapezoid in azimuth, Gauss-Legendre
// mapped to (0,pi) in the polar angle).

#include "lpsub/geometry.hpp"

#include <functional>
#include <span>
#include <vector>

namespace lpsub {

/// Quadrature node on a boundary; `w` includes the surface element.
template <int D>
struct QuadNode {
  Vec<D> y;
  Vec<D> n;
  double w = 0.0;
};

struct PtrGrid {
  int n = 0;

  double node(int j) const { return kTwoPi * j / n; }
  double weight() const { return kTwoPi / n; }
};

/// Requires n >= 2.
PtrGrid ptr_grid(int n);

/// (2 pi / N) sum of the values at t_j = 2 pi j / N.
cplx ptr_integrate(std::span<const cplx> values);

/// Trapezoid nodes on the curve with weights (2 pi / N) |y'(t_j)|.
std::vector<QuadNode<2>> ptr_nodes(const Curve2D& curve, int n);

/// Kress weights R_k(t*) for the nodes t_k = 2 pi k / N, k = 0..N-1:
///   R_k = -(4 pi / N) sum_{j=1}^{N/2-1} cos(j (t* - t_k)) / j
///         -(4 pi / N^2) cos(N/2 (t* - t_k)),
/// so that sum_k R_k f(t_k) integrates log(4 sin^2((t*-t)/2)) f(t) exactly for
/// trigonometric polynomials f of degree N/2. N must be even and >= 4.
std::vector<double> kress_weights(int n, double tstar);

/// Kernels (times |y'(t)|) that can be split as
///   K(t*, t) = K1(t*, t) log(4 sin^2((t*-t)/2)) + K2(t*, t)
/// with K1, K2 smooth.
enum class SplitKernel {
  laplace_single,      // G^L
  laplace_dlp,         // d/dn_y G^L (K1 = 0)
  helmholtz_single,    // G^H
  helmholtz_dlp,       // d/dn_y G^H
  helmholtz_combined,  // d/dn_y G^H - ik G^H
};

struct KressSplit {
  cplx log_part;     // K1
  cplx smooth_part;  // K2
};

/// Split of the kernel between target x* = y(t*) and source y(t).
/// At t = t* the diagonal limits are used.
KressSplit kress_split(SplitKernel kind, double k, const CurveSample& target,
                       const CurveSample& source);

/// Split of the combined-field kernel (d/dn_y G^H - ik G^H) |y'(t)|.
KressSplit kress_split_helmholtz(const Curve2D& curve, double k, double t, double tstar);

/// Kress product rule for the split kernel applied to `density` at the PTR
/// nodes: sum_k (R_k(t*) K1(t*, t_k) + (2 pi / N) K2(t*, t_k)) density_k.
cplx kress_integrate(SplitKernel kind, double k, const Curve2D& curve, double tstar,
                     std::span<const cplx> density);

/// Polar nodes s_i = pi (z_i + 1)/2 from the N-point Gauss-Legendre rule and
/// 2N azimuthal nodes t_j = -pi + pi j / N.
struct SphereGrid {
  int n = 0;
  std::vector<double> polar;
  std::vector<double> azimuth;
  std::vector<double> polar_weight;  // pi^2/(2N) w_i sin(s_i)

  std::size_t size() const { return polar.size() * azimuth.size(); }
};

/// Requires n >= 2.
SphereGrid sphere_grid(int n);

/// sum_ij pi^2/(2N) w_i sin(s_i) J(s_i,t_j) f(s_i,t_j); values indexed i * 2N + j.
cplx sphere_integrate(const SphereGrid& grid, const Surface3D& surface, std::span<const cplx> values);

/// Nodes of the sphere grid in the frame where `xstar` sits at the north pole.
std::vector<QuadNode<3>> three_step_nodes(const SphereGrid& grid, const Surface3D& surface,
                                          const Vec3& xstar);

/// Three-step rule: integrand evaluated at the rotated nodes and summed.
cplx three_step_eval(const SphereGrid& grid, const Surface3D& surface, const Vec3& xstar,
                     const std::function<cplx(const QuadNode<3>&)>& integrand);

/// Product Gauss rule on the unit sphere: Gauss-Legendre in cos(theta) and a
/// 2N-point trapezoid rule in phi. Exact for spherical polynomials of degree <= 2N-1.
struct SphereProductRule {
  int n = 0;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> weight;  // per (i, j), indexed i * 2N + j

  std::size_t size() const { return weight.size(); }
};

SphereProductRule sphere_product_rule(int n);

}  // namespace lpsub
