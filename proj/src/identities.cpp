#include "lpsub/identities.hpp"

#include "lpsub/errors.hpp"

#include <cmath>
#include <random>

namespace lpsub {

namespace {

template <int D>
Kernel<D> kernel_for(const InteriorSolution<D>& s) {
  return {s.family, s.family == Family::helmholtz ? s.k : 0.0};
}

template <int D>
cplx offboundary_sum(const InteriorSolution<D>& s, std::span<const QuadNode<D>> nodes, const Vec<D>& x) {
  const auto kern = kernel_for(s);
  cplx sum = 0.0;
  for (const auto& nd : nodes) {
    const auto kv = kern.both(x, nd.y, nd.n);
    sum += nd.w * (kv.dlp * s.value(nd.y) - kv.single * s.normal_derivative(nd.y, nd.n));
  }
  return sum;
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::interior: return "interior";
    case Region::boundary: return "boundary";
    case Region::exterior: return "exterior";
  }
  return "unknown";
}

cplx identity_lhs(const IdentityCase<2>& c, const Curve2D& curve, int n) {
  const auto& s = c.solution;
  if (c.region != Region::boundary) {
    const auto nodes = ptr_nodes(curve, n);
    return offboundary_sum<2>(s, nodes, c.point);
  }
  const auto grid = ptr_grid(n);
  std::vector<cplx> u(n), du(n);
  for (int j = 0; j < n; ++j) {
    const auto smp = curve.sample(grid.node(j));
    u[j] = s.value(smp.point);
    du[j] = s.normal_derivative(smp.point, smp.normal);
  }
  const bool wave = s.family == Family::helmholtz;
  const auto dlp = wave ? SplitKernel::helmholtz_dlp : SplitKernel::laplace_dlp;
  const auto single = wave ? SplitKernel::helmholtz_single : SplitKernel::laplace_single;
  return kress_integrate(dlp, s.k, curve, c.t, u) - kress_integrate(single, s.k, curve, c.t, du);
}

cplx identity_lhs(const IdentityCase<3>& c, const Surface3D& surface, int n) {
  const auto& s = c.solution;
  const auto grid = sphere_grid(n);
  if (c.region != Region::boundary) {
    // Rotate about the nearest boundary point so the peak of the kernel sits at the pole.
    const auto np = nearest_boundary_point(surface, c.point);
    const auto nodes = three_step_nodes(grid, surface, surface.sample(np.s, np.t).point);
    return offboundary_sum<3>(s, nodes, c.point);
  }
  const auto nodes = three_step_nodes(grid, surface, c.point);
  return offboundary_sum<3>(s, nodes, c.point);
}

template <int D>
cplx identity_expected(const IdentityCase<D>& c) {
  switch (c.region) {
    case Region::interior: return -c.solution.value(c.point);
    case Region::boundary: return -0.5 * c.solution.value(c.point);
    case Region::exterior: return 0.0;
  }
  return 0.0;
}

template cplx identity_expected<2>(const IdentityCase<2>&);
template cplx identity_expected<3>(const IdentityCase<3>&);

double identity_residual(const IdentityCase<2>& c, const Curve2D& curve, int n) {
  return std::abs(identity_lhs(c, curve, n) - identity_expected(c));
}

double identity_residual(const IdentityCase<3>& c, const Surface3D& surface, int n) {
  return std::abs(identity_lhs(c, surface, n) - identity_expected(c));
}

std::vector<InteriorSolution<2>> builtin_solutions(const Curve2D& curve, double k) {
  const auto [lo, hi] = curve.bounding_box();
  const Vec2 lap_pole = hi + Vec2(0.5, 0.5);
  const Vec2 helm_pole(lo.x() - 0.5, hi.y() + 0.5);
  return {constant_solution<2>(), linear_solution<2>(Vec2(0.6, -0.8)), green_laplace_solution<2>(lap_pole),
          plane_wave_solution<2>(k, Vec2(0.6, 0.8)), green_helmholtz_solution<2>(k, helm_pole)};
}

std::vector<InteriorSolution<3>> builtin_solutions(const Surface3D& surface, double k) {
  const Vec3 c = surface.center();
  const double r = surface.radius();
  const Vec3 lap_pole = c + 1.5 * r * Vec3(1.0, 1.0, 1.0).normalized();
  const Vec3 helm_pole = c + 1.5 * r * Vec3(-1.0, 0.5, -0.5).normalized();
  return {constant_solution<3>(), linear_solution<3>(Vec3(0.48, -0.6, 0.64)), green_laplace_solution<3>(lap_pole),
          plane_wave_solution<3>(k, Vec3(0.0, 0.6, 0.8)), green_helmholtz_solution<3>(k, helm_pole)};
}

std::vector<Vec2> identity_points(const Curve2D& curve, Region region, int count, double min_distance,
                                  std::uint64_t seed) {
  if (region == Region::boundary) throw UsageError("identity_points: boundary points are given by parameter");
  std::mt19937_64 rng(seed);
  auto [lo, hi] = curve.bounding_box();
  const Vec2 pad = Vec2::Constant(region == Region::exterior ? 1.0 + min_distance : 0.0);
  lo -= pad;
  hi += pad;
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
  std::vector<Vec2> out;
  for (int tries = 0; static_cast<int>(out.size()) < count; ++tries) {
    if (tries > 100000) throw DomainError("identity_points: region too thin for the requested distance");
    const Vec2 x(ux(rng), uy(rng));
    const bool inside = curve.contains(x);
    if (inside != (region == Region::interior)) continue;
    if (nearest_boundary_point(curve, x).distance < min_distance) continue;
    out.push_back(x);
  }
  return out;
}

std::vector<Vec3> identity_points(const Surface3D& surface, Region region, int count, double min_distance,
                                  std::uint64_t seed) {
  if (region == Region::boundary) throw UsageError("identity_points: boundary points are given by parameter");
  if (!surface.is_sphere()) throw UnsupportedSurface("identity_points needs a sphere");
  const double r = surface.radius();
  if (region == Region::interior && min_distance >= r) throw DomainError("identity_points: sphere too small");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i) {
    const Vec3 dir = Vec3(g(rng), g(rng), g(rng)).normalized();
    const double rho = region == Region::interior ? (r - min_distance) * u(rng)
                                                  : r + min_distance + r * u(rng);
    out.push_back(surface.center() + rho * dir);
  }
  return out;
}

}  // namespace lpsub
