#include "lpsub/bie.hpp"

#include "lpsub/errors.hpp"
#include "lpsub/kernels.hpp"
#include "lpsub/specfun.hpp"

#include <cmath>

namespace lpsub {

namespace {

constexpr cplx kI{0.0, 1.0};

// Jump coefficient of the exterior Neumann equation -rho/2 + K' rho = g.
constexpr double kNeumannJump = -0.5;

void require_sphere(const Surface3D& surface, int n) {
  if (!surface.is_sphere()) throw UnsupportedSurface("Galerkin solver is implemented for spheres");
  if (n < 2 || n > 24) throw UsageError("Galerkin order must lie in [2, 24]");
}

/// Row of all Y_nm (n < order) at the direction of `point` from the center.
void harmonics_at(const Surface3D& surface, int order, const Vec3& point, std::span<cplx> out) {
  const auto [theta, phi] = spherical_angles(point - surface.center());
  sph_harm_all(order, theta, phi, out);
}

struct OuterRule {
  std::vector<SurfaceSample> samples;
  std::vector<double> weights;  // include the surface element
  Eigen::MatrixXcd harmonics;   // (q, sh_index)
};

OuterRule outer_rule(const Surface3D& surface, int n) {
  const auto rule = sphere_product_rule(n);
  const int nb = n * n;
  OuterRule out;
  out.samples.reserve(rule.size());
  out.weights.reserve(rule.size());
  out.harmonics.resize(static_cast<Eigen::Index>(rule.size()), nb);
  std::vector<cplx> row(nb);
  for (int i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rule.phi.size(); ++j) {
      const auto q = static_cast<Eigen::Index>(out.samples.size());
      const auto smp = surface.sample(rule.theta[i], rule.phi[j]);
      sph_harm_all(n, rule.theta[i], rule.phi[j], row);
      for (int b = 0; b < nb; ++b) out.harmonics(q, b) = row[b];
      out.weights.push_back(rule.weight[i * rule.phi.size() + j] * smp.jacobian);
      out.samples.push_back(smp);
    }
  }
  return out;
}

/// Y_nm at every rotated inner node; rows follow `nodes`.
Eigen::MatrixXcd inner_harmonics(const Surface3D& surface, int n, const std::vector<QuadNode<3>>& nodes) {
  const int nb = n * n;
  Eigen::MatrixXcd y(static_cast<Eigen::Index>(nodes.size()), nb);
  std::vector<cplx> row(nb);
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    harmonics_at(surface, n, nodes[p].y, row);
    for (int b = 0; b < nb; ++b) y(static_cast<Eigen::Index>(p), b) = row[b];
  }
  return y;
}

}  // namespace

std::string_view to_string(Problem3D problem) {
  switch (problem) {
    case Problem3D::laplace_dirichlet: return "laplace-dirichlet";
    case Problem3D::laplace_neumann: return "laplace-neumann";
    case Problem3D::helmholtz: return "helmholtz";
    case Problem3D::helmholtz_pws: return "helmholtz-pws";
  }
  return "unknown";
}

DensitySH::DensitySH(Surface3D surface, int order, std::vector<cplx> coeffs, SolveReport report)
    : surface_(std::move(surface)), order_(order), coeffs_(std::move(coeffs)), report_(std::move(report)) {
  if (order_ < 1 || coeffs_.size() != static_cast<std::size_t>(order_) * order_) {
    throw UsageError("DensitySH needs order^2 coefficients");
  }
}

cplx DensitySH::at_angles(double theta, double phi) const {
  std::vector<cplx> y(coeffs_.size());
  sph_harm_all(order_, theta, phi, y);
  cplx sum = 0.0;
  for (std::size_t b = 0; b < y.size(); ++b) sum += coeffs_[b] * y[b];
  return sum;
}

cplx DensitySH::at(const Vec3& point) const {
  const auto [theta, phi] = spherical_angles(point - surface_.center());
  return at_angles(theta, phi);
}

cplx density_interp(const DensitySH& density, double theta, double phi) {
  return density.at_angles(theta, phi);
}

Eigen::MatrixXcd galerkin_matrix_3d(const Surface3D& surface, Problem3D problem, double k, int n) {
  require_sphere(surface, n);
  const bool wave = problem == Problem3D::helmholtz || problem == Problem3D::helmholtz_pws;
  if (wave && !(k > 0.0)) throw DomainError("wavenumber must be positive");
  const Kernel<3> kern{wave ? Family::helmholtz : Family::laplace, wave ? k : 0.0};
  const auto outer = outer_rule(surface, n);
  const auto grid = sphere_grid(n);
  const auto nq = static_cast<Eigen::Index>(outer.samples.size());
  const int nb = n * n;

  // image(q, b) = K[Y_b] at outer node q (or the adjoint applied to Y_b for Neumann).
  Eigen::MatrixXcd image(nq, nb);
  Eigen::VectorXcd coef;
  for (Eigen::Index q = 0; q < nq; ++q) {
    const auto& xs = outer.samples[q];
    const auto nodes = three_step_nodes(grid, surface, xs.point);
    const auto yin = inner_harmonics(surface, n, nodes);
    coef.resize(static_cast<Eigen::Index>(nodes.size()));
    cplx self = 0.0;  // coefficient of Y(x*)
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      const auto& nd = nodes[p];
      cplx c = 0.0;
      switch (problem) {
        case Problem3D::laplace_dirichlet:
          c = nd.w * kern.dlp(xs.point, nd.y, nd.n);
          break;
        case Problem3D::helmholtz: {
          const auto kv = kern.both(xs.point, nd.y, nd.n);
          c = nd.w * (kv.dlp - kI * k * kv.single);
          break;
        }
        case Problem3D::helmholtz_pws: {
          const auto kv = kern.both(xs.point, nd.y, nd.n);
          const cplx e = std::exp(kI * k * xs.normal.dot(nd.y - xs.point));
          const cplx a_sol = kI * k * nd.n.dot(xs.normal) * e;
          const cplx bracket = kv.dlp - a_sol * kv.single;
          c = nd.w * (bracket + kv.single * (a_sol - kI * k));
          self += nd.w * (-bracket + kv.dlp * (1.0 - e));
          break;
        }
        case Problem3D::laplace_neumann: {
          // Target x_p, source y = x*: d/dn_x G(x_p, x*) with n_x at x_p.
          c = nd.w * kern.adjoint_dlp(nd.y, xs.point, nd.n);
          self -= c;
          break;
        }
      }
      coef(static_cast<Eigen::Index>(p)) = c;
    }
    if (problem == Problem3D::laplace_dirichlet) self = -0.5;
    if (problem == Problem3D::helmholtz) self = 0.5;
    if (problem == Problem3D::laplace_neumann) self += kNeumannJump - 0.5;
    image.row(q) = coef.transpose() * yin + self * outer.harmonics.row(q);
  }

  Eigen::VectorXd w(nq);
  for (Eigen::Index q = 0; q < nq; ++q) w(q) = outer.weights[q];
  if (problem == Problem3D::laplace_neumann) {
    // <K'* Y_n'm', Y_nm>: the adjoint acts on the test function.
    return image.conjugate().transpose() * w.asDiagonal() * outer.harmonics;
  }
  return outer.harmonics.conjugate().transpose() * w.asDiagonal() * image;
}

DensitySH solve_galerkin_3d(const Surface3D& surface, Problem3D problem, const BoundaryData3D& data,
                            double k, int n) {
  const auto a = galerkin_matrix_3d(surface, problem, k, n);
  const auto outer = outer_rule(surface, n);
  Eigen::VectorXcd f(static_cast<Eigen::Index>(outer.samples.size()));
  for (std::size_t q = 0; q < outer.samples.size(); ++q) {
    f(static_cast<Eigen::Index>(q)) = outer.weights[q] * data(outer.samples[q]);
  }
  const Eigen::VectorXcd b = outer.harmonics.conjugate().transpose() * f;
  const auto sol = solve_dense(a, b);
  return DensitySH(surface, n, std::vector<cplx>(sol.x.data(), sol.x.data() + sol.x.size()), sol.report);
}

}  // namespace lpsub
