#pragma once

// Off-boundary evaluation of layer potentials, in standard form and in the
// density-subtracted forms built from an interior solution u_sol anchored at
// the nearest boundary point x*.
//
// With I(x) = int d/dn_y G u_sol - G d/dn u_sol = sigma u_sol(x), where sigma is
// -1 inside and 0 outside, the modified forms are exact rewrites:
//
//   DLP  int dG mu = int dG mu (1 - u) + int dG (mu - mu*) u
//                    + mu* int G [du - du(x*)] + mu* du(x*) int G + sigma mu* u(x)
//   SLP  int G mu  = int G mu (1 - a) + int G (mu - mu*) a
//                    + mu* int dG [u - u(x*)] + sigma mu* (u(x*) - u(x))
//   HLM  int (dG - ikG) mu = int (dG - aG)(mu - mu*) + int G (a - ik) mu
//                    + mu* int dG (1 - u) + sigma mu* u(x)
//
// where a = d/dn u_sol. Under the anchor constraints every integrand vanishes
// at y = x*.

#include "lpsub/bie.hpp"
#include "lpsub/kernels.hpp"
#include "lpsub/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace lpsub {

template <int D>
using CVec = Eigen::Matrix<cplx, D, 1>;

/// A solution of the Laplace (k = 0) or Helmholtz equation inside the domain.
template <int D>
struct InteriorSolution {
  std::string label;
  Family family = Family::laplace;
  double k = 0.0;
  std::function<cplx(const Vec<D>&)> value;
  std::function<CVec<D>(const Vec<D>&)> gradient;

  cplx normal_derivative(const Vec<D>& y, const Vec<D>& n) const {
    const CVec<D> g = gradient(y);
    cplx s = 0.0;
    for (int i = 0; i < D; ++i) s += g(i) * n(i);
    return s;
  }
};

template <int D>
InteriorSolution<D> constant_solution();
/// u(y) = a . y
template <int D>
InteriorSolution<D> linear_solution(const Vec<D>& a);
/// u(y) = scale * G^L(y, pole)
template <int D>
InteriorSolution<D> green_laplace_solution(const Vec<D>& pole, double scale = 1.0);
/// u(y) = exp(ik s . (y - origin)), |s| = 1
template <int D>
InteriorSolution<D> plane_wave_solution(double k, const Vec<D>& direction, const Vec<D>& origin = Vec<D>::Zero());
/// u(y) = scale * G^H(y, pole)
template <int D>
InteriorSolution<D> green_helmholtz_solution(double k, const Vec<D>& pole, cplx scale = 1.0);

/// Anchor constraints at x*:
///   dlp        u(x*) = 1, du(x*) = 0
///   slp        du(x*) = 1
///   helmholtz  u(x*) = 1, du(x*) = ik
enum class Constraint { dlp, slp, helmholtz };

enum class SolutionLabel { constant, linear, green_laplace, plane_wave, green_helmholtz };

std::string_view to_string(SolutionLabel label);
SolutionLabel parse_solution_label(std::string_view text);

/// Interior solution tied to an anchor; constraints are verified on construction.
template <int D>
class SubtractionSolution {
 public:
  /// Throws InvalidSolution when a constraint fails by more than 1e-12.
  SubtractionSolution(InteriorSolution<D> solution, Anchor<D> anchor, Constraint constraint);

  const std::string& label() const { return sol_.label; }
  const Anchor<D>& anchor() const { return anchor_; }
  Constraint constraint() const { return constraint_; }
  double k() const { return sol_.k; }
  const InteriorSolution<D>& solution() const { return sol_; }

  cplx value(const Vec<D>& y) const { return sol_.value(y); }
  cplx normal_derivative(const Vec<D>& y, const Vec<D>& n) const { return sol_.normal_derivative(y, n); }

  /// Largest scaled residual |Lap_h u + k^2 u| / (1 + k^2 |u|) of the (2D+1)-point
  /// Laplacian (h = 1e-3) over 20 seeded points near x* - n*/4.
  double pde_residual(std::uint64_t seed = 20240917) const;

 private:
  InteriorSolution<D> sol_;
  Anchor<D> anchor_;
  Constraint constraint_;
};

/// Built-in subtraction solutions:
///   constant         u = 1                                   (dlp)
///   linear           u = n* . y                              (slp)
///   green-laplace    u = 2^(d-1) pi G^L(y, x* + n*)          (slp)
///   plane-wave       u = exp(ik n* . (y - x*))               (helmholtz)
///   green-helmholtz  u = G^H(y, x* + n*) / G^H(x*, x* + n*)  (helmholtz)
/// The last one cannot meet du(x*) = ik and always throws InvalidSolution.
template <int D>
SubtractionSolution<D> make_subtraction_solution(SolutionLabel label, const Anchor<D>& xstar, double k = 0.0);

enum class PotentialFamily { laplace_dlp, laplace_slp, helmholtz_combined };
enum class Mode { standard, gauss_sub, dsl, dsg, pws, general };

std::string_view to_string(PotentialFamily family);
std::string_view to_string(Mode mode);
/// Accepts standard (aliases ptr, method), gauss-sub, dsl, dsg, pws.
Mode parse_mode(std::string_view text);

template <int D>
struct Representation {
  PotentialFamily family = PotentialFamily::laplace_dlp;
  Mode mode = Mode::standard;
  /// Only for Mode::general: builds u_sol for a given anchor and wavenumber.
  std::function<SubtractionSolution<D>(const Anchor<D>&, double)> solution;

  /// Throws UsageError for incompatible family/mode pairs.
  void validate() const;
};

/// Evaluation point with its nearest boundary point.
template <int D>
struct Target {
  Vec<D> x;
  Anchor<D> xstar;
  Side side = Side::interior;
  double ell = 0.0;
};

/// Evaluates a representation from quadrature nodes carrying density values.
/// `mu_star` is the density at x*.
template <int D>
cplx eval_on_nodes(const Representation<D>& repr, double k, std::span<const QuadNode<D>> nodes,
                   std::span<const cplx> mu, const Target<D>& target, cplx mu_star);

/// Evaluator for a solved 2D density; trapezoid nodes are cached.
class Evaluator2D {
 public:
  explicit Evaluator2D(Density2D density, double k = 0.0);

  struct Located {
    double t = 0.0;
    Target<2> target;
  };

  /// Nearest boundary point; throws OnBoundaryError on the curve.
  Located locate(const Vec2& x) const;
  /// Target with a caller-chosen x* = y(t); side from the normal.
  Located at_parameter(double t, const Vec2& x) const;

  cplx eval(const Representation<2>& repr, const Vec2& x) const { return eval(repr, locate(x)); }
  cplx eval(const Representation<2>& repr, const Located& where) const;

  const Density2D& density() const { return density_; }
  double k() const { return k_; }

 private:
  Density2D density_;
  double k_;
  std::vector<QuadNode<2>> nodes_;
};

/// Evaluator for a spherical-harmonic density using the three-step rule
/// (same N as the Galerkin solve).
class Evaluator3D {
 public:
  explicit Evaluator3D(DensitySH density, double k = 0.0);

  Target<3> locate(const Vec3& x) const;
  cplx eval(const Representation<3>& repr, const Vec3& x) const { return eval(repr, locate(x)); }
  cplx eval(const Representation<3>& repr, const Target<3>& target) const;

  const DensitySH& density() const { return density_; }
  double k() const { return k_; }

 private:
  DensitySH density_;
  double k_;
  SphereGrid grid_;
};

cplx eval_potential(const Representation<2>& repr, const Density2D& density, const Vec2& x, double k = 0.0);
cplx eval_potential(const Representation<3>& repr, const DensitySH& density, const Vec3& x, double k = 0.0);

}  // namespace lpsub
