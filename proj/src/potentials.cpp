#include "lpsub/potentials.hpp"

#include "lpsub/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lpsub {

namespace {

constexpr cplx kI{0.0, 1.0};

template <int D>
double surface_factor() {
  return D == 2 ? kTwoPi : 4.0 * kPi;  // 2^(d-1) pi
}

}  // namespace

template <int D>
InteriorSolution<D> constant_solution() {
  InteriorSolution<D> s;
  s.label = "constant";
  s.value = [](const Vec<D>&) { return cplx(1.0); };
  s.gradient = [](const Vec<D>&) { return CVec<D>::Zero().eval(); };
  return s;
}

template <int D>
InteriorSolution<D> linear_solution(const Vec<D>& a) {
  InteriorSolution<D> s;
  s.label = "linear";
  s.value = [a](const Vec<D>& y) { return cplx(a.dot(y)); };
  s.gradient = [a](const Vec<D>&) { return a.template cast<cplx>().eval(); };
  return s;
}

template <int D>
InteriorSolution<D> green_laplace_solution(const Vec<D>& pole, double scale) {
  InteriorSolution<D> s;
  s.label = "green-laplace";
  s.value = [pole, scale](const Vec<D>& y) {
    const double r = (y - pole).norm();
    if constexpr (D == 2) return cplx(-scale * std::log(r) / kTwoPi);
    else return cplx(scale / (4.0 * kPi * r));
  };
  s.gradient = [pole, scale](const Vec<D>& y) {
    const Vec<D> d = y - pole;
    const double r = d.norm();
    const double f = D == 2 ? -scale / (kTwoPi * r * r) : -scale / (4.0 * kPi * r * r * r);
    return (f * d).template cast<cplx>().eval();
  };
  return s;
}

template <int D>
InteriorSolution<D> plane_wave_solution(double k, const Vec<D>& direction, const Vec<D>& origin) {
  if (!(k > 0.0)) throw DomainError("plane wave needs k > 0");
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("plane-wave direction must be a unit vector");
  InteriorSolution<D> s;
  s.label = "plane-wave";
  s.family = Family::helmholtz;
  s.k = k;
  s.value = [k, direction, origin](const Vec<D>& y) { return std::exp(kI * k * direction.dot(y - origin)); };
  s.gradient = [k, direction, origin](const Vec<D>& y) {
    const cplx e = std::exp(kI * k * direction.dot(y - origin));
    return (kI * k * e * direction.template cast<cplx>()).eval();
  };
  return s;
}

template <int D>
InteriorSolution<D> green_helmholtz_solution(double k, const Vec<D>& pole, cplx scale) {
  if (!(k > 0.0)) throw DomainError("Helmholtz Green function needs k > 0");
  InteriorSolution<D> s;
  s.label = "green-helmholtz";
  s.family = Family::helmholtz;
  s.k = k;
  s.value = [k, pole, scale](const Vec<D>& y) {
    return scale * detail::radial<D>(Family::helmholtz, k, (y - pole).norm()).first;
  };
  s.gradient = [k, pole, scale](const Vec<D>& y) {
    const Vec<D> d = y - pole;
    const double r = d.norm();
    const cplx dg = detail::radial<D>(Family::helmholtz, k, r).second;
    return (scale * dg / r * d.template cast<cplx>()).eval();
  };
  return s;
}

std::string_view to_string(SolutionLabel label) {
  switch (label) {
    case SolutionLabel::constant: return "constant";
    case SolutionLabel::linear: return "linear";
    case SolutionLabel::green_laplace: return "green-laplace";
    case SolutionLabel::plane_wave: return "plane-wave";
    case SolutionLabel::green_helmholtz: return "green-helmholtz";
  }
  return "unknown";
}

SolutionLabel parse_solution_label(std::string_view text) {
  for (auto l : {SolutionLabel::constant, SolutionLabel::linear, SolutionLabel::green_laplace,
                 SolutionLabel::plane_wave, SolutionLabel::green_helmholtz}) {
    if (text == to_string(l)) return l;
  }
  throw UsageError("unknown subtraction solution '" + std::string(text) + "'");
}

template <int D>
SubtractionSolution<D>::SubtractionSolution(InteriorSolution<D> solution, Anchor<D> anchor, Constraint constraint)
    : sol_(std::move(solution)), anchor_(std::move(anchor)), constraint_(constraint) {
  const cplx u = sol_.value(anchor_.point);
  const cplx du = sol_.normal_derivative(anchor_.point, anchor_.normal);
  constexpr double tol = 1e-12;
  auto fail = [&](const char* what, cplx got) {
    std::ostringstream msg;
    msg << sol_.label << ": " << what << " at x* (got " << got << ")";
    throw InvalidSolution(msg.str());
  };
  switch (constraint_) {
    case Constraint::dlp:
      if (std::abs(u - 1.0) > tol) fail("u_sol != 1", u);
      if (std::abs(du) > tol) fail("du_sol/dn != 0", du);
      break;
    case Constraint::slp:
      if (std::abs(du - 1.0) > tol) fail("du_sol/dn != 1", du);
      break;
    case Constraint::helmholtz:
      if (std::abs(u - 1.0) > tol) fail("u_sol != 1", u);
      if (std::abs(du - kI * sol_.k) > tol * std::max(1.0, sol_.k)) fail("du_sol/dn != ik", du);
      break;
  }
}

template <int D>
double SubtractionSolution<D>::pde_residual(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  const double h = 1e-3;
  const double k2 = sol_.k * sol_.k;
  const Vec<D> centre = anchor_.point - 0.25 * anchor_.normal;
  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    Vec<D> x = centre;
    for (int i = 0; i < D; ++i) x(i) += jitter(rng);
    const cplx u0 = sol_.value(x);
    cplx lap = -2.0 * D * u0;
    for (int i = 0; i < D; ++i) {
      Vec<D> e = Vec<D>::Zero();
      e(i) = h;
      lap += sol_.value(x + e) + sol_.value(x - e);
    }
    lap /= h * h;
    worst = std::max(worst, std::abs(lap + k2 * u0) / (1.0 + k2 * std::abs(u0)));
  }
  return worst;
}

template <int D>
SubtractionSolution<D> make_subtraction_solution(SolutionLabel label, const Anchor<D>& xstar, double k) {
  switch (label) {
    case SolutionLabel::constant:
      return {constant_solution<D>(), xstar, Constraint::dlp};
    case SolutionLabel::linear:
      return {linear_solution<D>(xstar.normal), xstar, Constraint::slp};
    case SolutionLabel::green_laplace:
      return {green_laplace_solution<D>(xstar.point + xstar.normal, surface_factor<D>()), xstar, Constraint::slp};
    case SolutionLabel::plane_wave:
      return {plane_wave_solution<D>(k, xstar.normal, xstar.point), xstar, Constraint::helmholtz};
    case SolutionLabel::green_helmholtz: {
      const Vec<D> pole = xstar.point + xstar.normal;
      const cplx g0 = detail::radial<D>(Family::helmholtz, k, 1.0).first;
      return {green_helmholtz_solution<D>(k, pole, 1.0 / g0), xstar, Constraint::helmholtz};
    }
  }
  throw UsageError("unknown subtraction solution");
}

std::string_view to_string(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::laplace_dlp: return "laplace-dlp";
    case PotentialFamily::laplace_slp: return "laplace-slp";
    case PotentialFamily::helmholtz_combined: return "helmholtz-combined";
  }
  return "unknown";
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::standard: return "standard";
    case Mode::gauss_sub: return "gauss-sub";
    case Mode::dsl: return "dsl";
    case Mode::dsg: return "dsg";
    case Mode::pws: return "pws";
    case Mode::general: return "general";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "standard" || text == "ptr" || text == "method") return Mode::standard;
  if (text == "gauss-sub") return Mode::gauss_sub;
  if (text == "dsl") return Mode::dsl;
  if (text == "dsg") return Mode::dsg;
  if (text == "pws") return Mode::pws;
  throw UsageError("unknown evaluation method '" + std::string(text) + "'");
}

template <int D>
void Representation<D>::validate() const {
  bool ok = true;
  switch (mode) {
    case Mode::standard: break;
    case Mode::gauss_sub: ok = family == PotentialFamily::laplace_dlp; break;
    case Mode::dsl:
    case Mode::dsg: ok = family == PotentialFamily::laplace_slp; break;
    case Mode::pws: ok = family == PotentialFamily::helmholtz_combined; break;
    case Mode::general:
      if (!solution) throw UsageError("general mode needs a subtraction solution");
      break;
  }
  if (!ok) {
    throw UsageError("mode " + std::string(to_string(mode)) + " does not apply to " +
                     std::string(to_string(family)));
  }
}

template <int D>
cplx eval_on_nodes(const Representation<D>& repr, double k, std::span<const QuadNode<D>> nodes,
                   std::span<const cplx> mu, const Target<D>& target, cplx mu_star) {
  repr.validate();
  if (nodes.size() != mu.size()) throw UsageError("eval_on_nodes: node/density size mismatch");
  const bool wave = repr.family == PotentialFamily::helmholtz_combined;
  if (wave && !(k > 0.0)) throw DomainError("Helmholtz evaluation needs k > 0");
  const Kernel<D> kern{wave ? Family::helmholtz : Family::laplace, wave ? k : 0.0};
  const Vec<D>& x = target.x;
  cplx sum = 0.0;

  if (repr.mode == Mode::standard) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const auto& nd = nodes[j];
      switch (repr.family) {
        case PotentialFamily::laplace_dlp: sum += nd.w * kern.dlp(x, nd.y, nd.n) * mu[j]; break;
        case PotentialFamily::laplace_slp: sum += nd.w * kern.single(x, nd.y) * mu[j]; break;
        case PotentialFamily::helmholtz_combined: {
          const auto kv = kern.both(x, nd.y, nd.n);
          sum += nd.w * (kv.dlp - kI * k * kv.single) * mu[j];
          break;
        }
      }
    }
    return sum;
  }

  const auto& anchor = target.xstar;
  const SubtractionSolution<D> sol = [&]() {
    switch (repr.mode) {
      case Mode::gauss_sub: return make_subtraction_solution<D>(SolutionLabel::constant, anchor);
      case Mode::dsl: return make_subtraction_solution<D>(SolutionLabel::linear, anchor);
      case Mode::dsg: return make_subtraction_solution<D>(SolutionLabel::green_laplace, anchor);
      case Mode::pws: return make_subtraction_solution<D>(SolutionLabel::plane_wave, anchor, k);
      default: return repr.solution(anchor, k);
    }
  }();
  // The sigma terms are skipped outside, where u_sol may be singular (DSG pole).
  const double sigma = target.side == Side::interior ? -1.0 : 0.0;
  const cplx u_star = sol.value(anchor.point);
  const cplx du_star = sol.normal_derivative(anchor.point, anchor.normal);

  switch (repr.family) {
    case PotentialFamily::laplace_dlp: {
      cplx g_sum = 0.0;
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const auto& nd = nodes[j];
        const auto kv = kern.both(x, nd.y, nd.n);
        const cplx u = sol.value(nd.y);
        const cplx du = sol.normal_derivative(nd.y, nd.n);
        sum += nd.w * (kv.dlp * mu[j] * (1.0 - u) + kv.dlp * (mu[j] - mu_star) * u +
                       mu_star * kv.single * (du - du_star));
        g_sum += nd.w * kv.single;
      }
      if (sigma != 0.0) sum += sigma * mu_star * sol.value(x);
      return sum + mu_star * du_star * g_sum;
    }
    case PotentialFamily::laplace_slp: {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const auto& nd = nodes[j];
        const auto kv = kern.both(x, nd.y, nd.n);
        const cplx a = sol.normal_derivative(nd.y, nd.n);
        sum += nd.w * (kv.single * mu[j] * (1.0 - a) + kv.single * (mu[j] - mu_star) * a +
                       mu_star * kv.dlp * (sol.value(nd.y) - u_star));
      }
      if (sigma != 0.0) sum += sigma * mu_star * (u_star - sol.value(x));
      return sum;
    }
    case PotentialFamily::helmholtz_combined: {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const auto& nd = nodes[j];
        const auto kv = kern.both(x, nd.y, nd.n);
        const cplx a = sol.normal_derivative(nd.y, nd.n);
        sum += nd.w * ((kv.dlp - a * kv.single) * (mu[j] - mu_star) + kv.single * (a - kI * k) * mu[j] +
                       mu_star * kv.dlp * (1.0 - sol.value(nd.y)));
      }
      if (sigma != 0.0) sum += sigma * mu_star * sol.value(x);
      return sum;
    }
  }
  return sum;
}

Evaluator2D::Evaluator2D(Density2D density, double k)
    : density_(std::move(density)), k_(k), nodes_(ptr_nodes(density_.curve(), density_.size())) {}

Evaluator2D::Located Evaluator2D::locate(const Vec2& x) const {
  const auto np = nearest_boundary_point(density_.curve(), x, std::max(1024, 4 * density_.size()));
  const auto smp = density_.curve().sample(np.t);
  return {np.t, {x, smp.anchor(), np.side, np.distance}};
}

Evaluator2D::Located Evaluator2D::at_parameter(double t, const Vec2& x) const {
  const auto smp = density_.curve().sample(t);
  const Vec2 d = x - smp.point;
  const double ell = d.norm();
  if (ell <= 1e-13 * density_.curve().diameter()) throw OnBoundaryError("evaluation point lies on the boundary");
  return {t, {x, smp.anchor(), d.dot(smp.normal) < 0.0 ? Side::interior : Side::exterior, ell}};
}

cplx Evaluator2D::eval(const Representation<2>& repr, const Located& where) const {
  const cplx mu_star = repr.mode == Mode::standard ? cplx(0.0) : density_.at(where.t);
  return eval_on_nodes<2>(repr, k_, nodes_, density_.values(), where.target, mu_star);
}

Evaluator3D::Evaluator3D(DensitySH density, double k)
    : density_(std::move(density)), k_(k), grid_(sphere_grid(density_.order())) {}

Target<3> Evaluator3D::locate(const Vec3& x) const {
  const auto& surface = density_.surface();
  const auto np = nearest_boundary_point(surface, x);
  const auto smp = surface.sample(np.s, np.t);
  return {x, smp.anchor(), np.side, np.distance};
}

cplx Evaluator3D::eval(const Representation<3>& repr, const Target<3>& target) const {
  const auto nodes = three_step_nodes(grid_, density_.surface(), target.xstar.point);
  std::vector<cplx> mu(nodes.size());
  for (std::size_t p = 0; p < nodes.size(); ++p) mu[p] = density_.at(nodes[p].y);
  const cplx mu_star = repr.mode == Mode::standard ? cplx(0.0) : density_.at(target.xstar.point);
  return eval_on_nodes<3>(repr, k_, nodes, mu, target, mu_star);
}

cplx eval_potential(const Representation<2>& repr, const Density2D& density, const Vec2& x, double k) {
  return Evaluator2D(density, k).eval(repr, x);
}

cplx eval_potential(const Representation<3>& repr, const DensitySH& density, const Vec3& x, double k) {
  return Evaluator3D(density, k).eval(repr, x);
}

#define LPSUB_INSTANTIATE(D)                                                                            \
  template InteriorSolution<D> constant_solution<D>();                                                  \
  template InteriorSolution<D> linear_solution<D>(const Vec<D>&);                                       \
  template InteriorSolution<D> green_laplace_solution<D>(const Vec<D>&, double);                        \
  template InteriorSolution<D> plane_wave_solution<D>(double, const Vec<D>&, const Vec<D>&);            \
  template InteriorSolution<D> green_helmholtz_solution<D>(double, const Vec<D>&, cplx);                \
  template class SubtractionSolution<D>;                                                                \
  template SubtractionSolution<D> make_subtraction_solution<D>(SolutionLabel, const Anchor<D>&, double); \
  template struct Representation<D>;                                                                    \
  template cplx eval_on_nodes<D>(const Representation<D>&, double, std::span<const QuadNode<D>>,        \
                                 std::span<const cplx>, const Target<D>&, cplx);

LPSUB_INSTANTIATE(2)
LPSUB_INSTANTIATE(3)

#undef LPSUB_INSTANTIATE

}  // namespace lpsub
