#pragma once

// Boundary integral equation solvers.
//
// 2D, Nystrom on the trapezoid nodes t_j = 2 pi j / N:
//   interior Dirichlet Laplace   -mu/2 + K mu      = f   (double layer)
//   exterior Neumann Laplace     -rho/2 + K' rho   = g   (single layer)
//   sound-soft scattering         mu/2 + (K - ik S) mu = f   (Kress quadrature)
//   sound-soft scattering, plane-wave-subtracted form, plain trapezoid rule
//
// 3D, Galerkin in orthonormal spherical harmonics of degree < N on a sphere.

#include "lpsub/geometry.hpp"
#include "lpsub/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpsub {

struct SolveReport {
  double relative_residual = 0.0;  // |Ax - b| / |b|
  double rcond = 0.0;              // LU reciprocal condition estimate
  std::optional<std::string> warning;
};

struct DenseSolution {
  Eigen::VectorXcd x;
  SolveReport report;
};

/// LU with partial pivoting. Throws SolverError when the matrix is numerically singular.
DenseSolution solve_dense(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b);

/// Density sampled at the trapezoid nodes of a curve, with trigonometric interpolation.
class Density2D {
 public:
  Density2D(Curve2D curve, std::vector<cplx> values, SolveReport report = {});

  int size() const { return static_cast<int>(values_.size()); }
  const Curve2D& curve() const { return curve_; }
  std::span<const cplx> values() const { return values_; }
  const SolveReport& report() const { return report_; }

  /// Trigonometric interpolant; reproduces nodal values and band-limited data exactly.
  cplx at(double t) const;

 private:
  Curve2D curve_;
  std::vector<cplx> values_;
  std::vector<cplx> coeffs_;  // c_m for m = -N/2 .. N/2, Nyquist term split evenly
  SolveReport report_;
};

/// Density expanded in orthonormal spherical harmonics Y_nm, n < order.
class DensitySH {
 public:
  DensitySH(Surface3D surface, int order, std::vector<cplx> coeffs, SolveReport report = {});

  int order() const { return order_; }
  const Surface3D& surface() const { return surface_; }
  std::span<const cplx> coefficients() const { return coeffs_; }
  const SolveReport& report() const { return report_; }

  cplx at_angles(double theta, double phi) const;
  /// Value at the boundary point nearest `point` (radial projection).
  cplx at(const Vec3& point) const;

 private:
  Surface3D surface_;
  int order_;
  std::vector<cplx> coeffs_;
  SolveReport report_;
};

using BoundaryData2D = std::function<cplx(const CurveSample&)>;
using BoundaryData3D = std::function<cplx(const SurfaceSample&)>;

Eigen::MatrixXcd laplace_dirichlet_matrix_2d(const Curve2D& curve, int n);
Eigen::MatrixXcd laplace_neumann_matrix_2d(const Curve2D& curve, int n);
Eigen::MatrixXcd helmholtz_kress_matrix_2d(const Curve2D& curve, double k, int n);
Eigen::MatrixXcd helmholtz_pws_matrix_2d(const Curve2D& curve, double k, int n);

Density2D solve_laplace_dirichlet_2d(const Curve2D& curve, const BoundaryData2D& f, int n);
Density2D solve_laplace_neumann_2d(const Curve2D& curve, const BoundaryData2D& g, int n);
Density2D solve_helmholtz_kress_2d(const Curve2D& curve, double k, const BoundaryData2D& f, int n);
Density2D solve_helmholtz_pws_2d(const Curve2D& curve, double k, const BoundaryData2D& f, int n);

enum class Problem3D { laplace_dirichlet, laplace_neumann, helmholtz, helmholtz_pws };

std::string_view to_string(Problem3D problem);

/// Galerkin matrix <Y_n'm', K[Y_nm]> (rows n'm', columns nm, see sh_index).
/// Inner products use the product Gauss rule; the singular inner integrals use
/// the three-step rule with the target rotated to the north pole.
Eigen::MatrixXcd galerkin_matrix_3d(const Surface3D& surface, Problem3D problem, double k, int n);

DensitySH solve_galerkin_3d(const Surface3D& surface, Problem3D problem, const BoundaryData3D& data,
                            double k, int n);

cplx density_interp(const Density2D& density, double t);
cplx density_interp(const DensitySH& density, double theta, double phi);

}  // namespace lpsub
