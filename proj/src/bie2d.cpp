#include "lpsub/bie.hpp"

#include "lpsub/errors.hpp"
#include "lpsub/kernels.hpp"

#include <cmath>
#include <sstream>

namespace lpsub {

namespace {

constexpr cplx kI{0.0, 1.0};

std::vector<CurveSample> node_samples(const Curve2D& curve, int n) {
  const auto grid = ptr_grid(n);
  std::vector<CurveSample> out(n);
  for (int j = 0; j < n; ++j) out[j] = curve.sample(grid.node(j));
  return out;
}

void require_even(int n) {
  if (n < 4 || n % 2 != 0) throw UsageError("2D solvers need an even N >= 4");
}

Eigen::VectorXcd sample_data(const std::vector<CurveSample>& nodes, const BoundaryData2D& f) {
  Eigen::VectorXcd b(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t j = 0; j < nodes.size(); ++j) b(static_cast<Eigen::Index>(j)) = f(nodes[j]);
  return b;
}

Density2D to_density(const Curve2D& curve, const DenseSolution& sol) {
  return Density2D(curve, std::vector<cplx>(sol.x.data(), sol.x.data() + sol.x.size()), sol.report);
}

}  // namespace

DenseSolution solve_dense(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw UsageError("solve_dense: shape mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-15)) {
    std::ostringstream msg;
    msg << "matrix is numerically singular (rcond " << rcond << ")";
    throw SolverError(msg.str(), rcond);
  }
  DenseSolution out;
  out.x = lu.solve(b);
  const double bnorm = b.norm();
  out.report.rcond = rcond;
  out.report.relative_residual = (a * out.x - b).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  if (rcond < 1e-12) out.report.warning = "condition number exceeds 1e12";
  return out;
}

Density2D::Density2D(Curve2D curve, std::vector<cplx> values, SolveReport report)
    : curve_(std::move(curve)), values_(std::move(values)), report_(std::move(report)) {
  const int n = size();
  if (n < 1) throw UsageError("density needs at least one node");
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw SolverError("non-finite density", 0.0);
  }
  // coeffs_[m + n/2] holds c_m for m in [-n/2, (n-1)/2]; for even n the m = -n/2
  // slot is the Nyquist coefficient, interpolated with cos(n t / 2).
  coeffs_.assign(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    const int m = idx - n / 2;
    cplx sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double arg = -kTwoPi * static_cast<double>((static_cast<long>(m) * j) % n) / n;
      sum += values_[j] * cplx(std::cos(arg), std::sin(arg));
    }
    coeffs_[idx] = sum / static_cast<double>(n);
  }
}

cplx Density2D::at(double t) const {
  const int n = size();
  // Exact nodal values keep subtracted brackets at exactly zero on the grid.
  const double pos = std::remainder(t, kTwoPi) / kTwoPi * n;
  const double node = std::round(pos);
  if (std::abs(pos - node) < 1e-12) return values_[((static_cast<int>(node) % n) + n) % n];
  const int lo = -(n / 2);
  const cplx step(std::cos(t), std::sin(t));
  cplx e(std::cos(lo * t), std::sin(lo * t));
  cplx sum = 0.0;
  for (int idx = 0; idx < n; ++idx, e *= step) {
    if (n % 2 == 0 && idx == 0) {
      sum += coeffs_[0] * std::cos(0.5 * n * t);
    } else {
      sum += coeffs_[idx] * e;
    }
  }
  return sum;
}

cplx density_interp(const Density2D& density, double t) { return density.at(t); }

Eigen::MatrixXcd laplace_dirichlet_matrix_2d(const Curve2D& curve, int n) {
  require_even(n);
  const auto nodes = node_samples(curve, n);
  const double w = kTwoPi / n;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = w * kress_split(SplitKernel::laplace_dlp, 0.0, nodes[i], nodes[j]).smooth_part;
    }
    a(i, i) -= 0.5;
  }
  return a;
}

Eigen::MatrixXcd laplace_neumann_matrix_2d(const Curve2D& curve, int n) {
  require_even(n);
  const auto nodes = node_samples(curve, n);
  const Kernel<2> kern{Family::laplace, 0.0};
  const double w = kTwoPi / n;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        // Same limit as the double layer: -kappa / (4 pi) per unit length.
        a(i, j) = -0.5 - w * nodes[i].curvature * nodes[i].jacobian / (4.0 * kPi);
      } else {
        a(i, j) = w * nodes[j].jacobian * kern.adjoint_dlp(nodes[i].point, nodes[j].point, nodes[i].normal);
      }
    }
  }
  return a;
}

Eigen::MatrixXcd helmholtz_kress_matrix_2d(const Curve2D& curve, double k, int n) {
  require_even(n);
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  const auto nodes = node_samples(curve, n);
  const double w = kTwoPi / n;
  // R_k(t_i) depends only on (i - k) mod n.
  const auto r = kress_weights(n, 0.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto split = kress_split(SplitKernel::helmholtz_combined, k, nodes[i], nodes[j]);
      a(i, j) = r[((j - i) % n + n) % n] * split.log_part + w * split.smooth_part;
    }
    a(i, i) += 0.5;
  }
  return a;
}

Eigen::MatrixXcd helmholtz_pws_matrix_2d(const Curve2D& curve, double k, int n) {
  require_even(n);
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  const auto nodes = node_samples(curve, n);
  const Kernel<2> kern{Family::helmholtz, k};
  const double h = kTwoPi / n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& xs = nodes[i];
    cplx diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;  // every bracket vanishes at y = x*
      const auto& y = nodes[j];
      const double w = h * y.jacobian;
      const auto kv = kern.both(xs.point, y.point, y.normal);
      const cplx e = std::exp(kI * k * xs.normal.dot(y.point - xs.point));
      const cplx a_sol = kI * k * y.normal.dot(xs.normal) * e;  // d/dn_y of the plane wave
      const cplx bracket = kv.dlp - a_sol * kv.single;
      a(i, j) += w * (bracket + kv.single * (a_sol - kI * k));
      diag += w * (-bracket + kv.dlp * (1.0 - e));
    }
    a(i, i) += diag;
  }
  return a;
}

Density2D solve_laplace_dirichlet_2d(const Curve2D& curve, const BoundaryData2D& f, int n) {
  const auto b = sample_data(node_samples(curve, n), f);
  return to_density(curve, solve_dense(laplace_dirichlet_matrix_2d(curve, n), b));
}

Density2D solve_laplace_neumann_2d(const Curve2D& curve, const BoundaryData2D& g, int n) {
  const auto b = sample_data(node_samples(curve, n), g);
  return to_density(curve, solve_dense(laplace_neumann_matrix_2d(curve, n), b));
}

Density2D solve_helmholtz_kress_2d(const Curve2D& curve, double k, const BoundaryData2D& f, int n) {
  const auto b = sample_data(node_samples(curve, n), f);
  return to_density(curve, solve_dense(helmholtz_kress_matrix_2d(curve, k, n), b));
}

Density2D solve_helmholtz_pws_2d(const Curve2D& curve, double k, const BoundaryData2D& f, int n) {
  const auto b = sample_data(node_samples(curve, n), f);
  return to_density(curve, solve_dense(helmholtz_pws_matrix_2d(curve, k, n), b));
}

}  // namespace lpsub
