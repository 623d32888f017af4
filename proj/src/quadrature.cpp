#include "lpsub/quadrature.hpp"

#include "lpsub/errors.hpp"
#include "lpsub/specfun.hpp"

#include <cmath>

namespace lpsub {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr cplx kI{0.0, 1.0};

double wrapped_gap(double a, double b) {
  double h = std::remainder(a - b, kTwoPi);
  return std::abs(h);
}

}  // namespace

PtrGrid ptr_grid(int n) {
  if (n < 2) throw DomainError("trapezoid rule needs at least 2 nodes");
  return PtrGrid{n};
}

cplx ptr_integrate(std::span<const cplx> values) {
  if (values.empty()) throw UsageError("ptr_integrate: no values");
  cplx sum = 0.0;
  for (const auto& v : values) sum += v;
  return sum * (kTwoPi / static_cast<double>(values.size()));
}

std::vector<QuadNode<2>> ptr_nodes(const Curve2D& curve, int n) {
  const auto grid = ptr_grid(n);
  std::vector<QuadNode<2>> nodes(n);
  for (int j = 0; j < n; ++j) {
    const auto smp = curve.sample(grid.node(j));
    nodes[j] = {smp.point, smp.normal, grid.weight() * smp.jacobian};
  }
  return nodes;
}

std::vector<double> kress_weights(int n, double tstar) {
  if (n < 4 || n % 2 != 0) throw UsageError("Kress weights need an even N >= 4");
  const int half = n / 2;
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k) {
    const double d = tstar - kTwoPi * k / n;
    double sum = 0.0;
    for (int j = 1; j < half; ++j) sum += std::cos(j * d) / j;
    r[k] = -(4.0 * kPi / n) * sum - (4.0 * kPi / (static_cast<double>(n) * n)) * std::cos(half * d);
  }
  return r;
}

KressSplit kress_split(SplitKernel kind, double k, const CurveSample& target,
                       const CurveSample& source) {
  const bool diagonal = wrapped_gap(target.t, source.t) < 1e-15;
  const double speed = source.jacobian;

  if (kind == SplitKernel::helmholtz_combined) {
    const auto d = kress_split(SplitKernel::helmholtz_dlp, k, target, source);
    const auto s = kress_split(SplitKernel::helmholtz_single, k, target, source);
    return {d.log_part - kI * k * s.log_part, d.smooth_part - kI * k * s.smooth_part};
  }

  if (diagonal) {
    switch (kind) {
      case SplitKernel::laplace_single:
        return {-speed / (4.0 * kPi), -speed * std::log(speed) / kTwoPi};
      case SplitKernel::laplace_dlp:
      case SplitKernel::helmholtz_dlp:
        return {0.0, -source.curvature * speed / (4.0 * kPi)};
      case SplitKernel::helmholtz_single:
        return {-speed / (4.0 * kPi),
                speed * (0.25 * kI - (std::log(0.5 * k * speed) + kEulerGamma) / kTwoPi)};
      default:
        break;
    }
  }

  const Vec2 diff = target.point - source.point;
  const double r = diff.norm();
  const double h = target.t - source.t;
  const double s = std::sin(0.5 * h);
  const double log_term = std::log(4.0 * s * s);
  const double nu_dot = speed * source.normal.dot(diff);  // nu(t) . (x* - y)

  KressSplit out;
  switch (kind) {
    case SplitKernel::laplace_single:
      out.log_part = -speed / (4.0 * kPi);
      out.smooth_part = -std::log(r) / kTwoPi * speed - out.log_part * log_term;
      break;
    case SplitKernel::laplace_dlp:
      out.log_part = 0.0;
      out.smooth_part = nu_dot / (kTwoPi * r * r);
      break;
    case SplitKernel::helmholtz_single: {
      const double j0 = bessel_j(0, k * r);
      out.log_part = -j0 * speed / (4.0 * kPi);
      out.smooth_part = 0.25 * kI * hankel1(0, k * r) * speed - out.log_part * log_term;
      break;
    }
    case SplitKernel::helmholtz_dlp: {
      const auto h1 = hankel1(1, k * r);
      out.log_part = -(k / (4.0 * kPi)) * nu_dot * h1.real() / r;
      out.smooth_part = 0.25 * kI * k * h1 * nu_dot / r - out.log_part * log_term;
      break;
    }
    default:
      break;
  }
  return out;
}

KressSplit kress_split_helmholtz(const Curve2D& curve, double k, double t, double tstar) {
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  return kress_split(SplitKernel::helmholtz_combined, k, curve.sample(tstar), curve.sample(t));
}

cplx kress_integrate(SplitKernel kind, double k, const Curve2D& curve, double tstar,
                     std::span<const cplx> density) {
  const int n = static_cast<int>(density.size());
  const auto weights = kress_weights(n, tstar);
  const auto target = curve.sample(tstar);
  cplx sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto source = curve.sample(kTwoPi * j / n);
    const auto split = kress_split(kind, k, target, source);
    sum += (weights[j] * split.log_part + (kTwoPi / n) * split.smooth_part) * density[j];
  }
  return sum;
}

SphereGrid sphere_grid(int n) {
  if (n < 2) throw DomainError("sphere grid needs N >= 2");
  const auto gl = gauss_legendre(n);
  SphereGrid grid;
  grid.n = n;
  grid.polar.resize(n);
  grid.polar_weight.resize(n);
  for (int i = 0; i < n; ++i) {
    grid.polar[i] = kPi * (gl.nodes[i] + 1.0) / 2.0;
    grid.polar_weight[i] = kPi * kPi / (2.0 * n) * gl.weights[i] * std::sin(grid.polar[i]);
  }
  grid.azimuth.resize(2 * n);
  for (int j = 0; j < 2 * n; ++j) grid.azimuth[j] = -kPi + kPi * j / n;
  return grid;
}

cplx sphere_integrate(const SphereGrid& grid, const Surface3D& surface, std::span<const cplx> values) {
  if (values.size() != grid.size()) throw UsageError("sphere_integrate: value grid shape mismatch");
  const int na = static_cast<int>(grid.azimuth.size());
  cplx sum = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    for (int j = 0; j < na; ++j) {
      const double jac = surface.sample(grid.polar[i], grid.azimuth[j]).jacobian;
      sum += grid.polar_weight[i] * jac * values[i * na + j];
    }
  }
  return sum;
}

std::vector<QuadNode<3>> three_step_nodes(const SphereGrid& grid, const Surface3D& surface,
                                          const Vec3& xstar) {
  if (!surface.is_sphere()) throw UnsupportedSurface("three-step rule is implemented for spheres");
  const auto rot = rotate_to_pole(surface, xstar);
  std::vector<QuadNode<3>> nodes;
  nodes.reserve(grid.size());
  for (int i = 0; i < grid.n; ++i) {
    for (double t : grid.azimuth) {
      const auto smp = surface.sample_rotated(rot, grid.polar[i], t);
      nodes.push_back({smp.point, smp.normal, grid.polar_weight[i] * smp.jacobian});
    }
  }
  return nodes;
}

cplx three_step_eval(const SphereGrid& grid, const Surface3D& surface, const Vec3& xstar,
                     const std::function<cplx(const QuadNode<3>&)>& integrand) {
  cplx sum = 0.0;
  for (const auto& node : three_step_nodes(grid, surface, xstar)) sum += node.w * integrand(node);
  return sum;
}

SphereProductRule sphere_product_rule(int n) {
  if (n < 1) throw DomainError("product rule needs N >= 1");
  const auto gl = gauss_legendre(n);
  SphereProductRule rule;
  rule.n = n;
  rule.theta.resize(n);
  for (int i = 0; i < n; ++i) rule.theta[i] = std::acos(gl.nodes[i]);
  rule.phi.resize(2 * n);
  for (int j = 0; j < 2 * n; ++j) rule.phi[j] = -kPi + kPi * j / n;
  rule.weight.resize(static_cast<std::size_t>(2 * n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 2 * n; ++j) rule.weight[i * 2 * n + j] = gl.weights[i] * kPi / n;
  }
  return rule;
}

}  // namespace lpsub
