// Acceptance checks: one PASS/FAIL line per criterion.
//
// Each criterion is a list of checks. A check listed as a known limitation still
// prints FAIL, but does not fail the run; any other failing check does.

#include "lpsub/bie.hpp"
#include "lpsub/experiments.hpp"
#include "lpsub/identities.hpp"
#include "lpsub/kernels.hpp"
#include "lpsub/quadrature.hpp"
#include "lpsub/specfun.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace lpsub;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
  std::string name;
  bool pass = false;
  bool known_limitation = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  void add(std::string name, bool pass, std::string detail, bool known = false) {
    checks.push_back({std::move(name), pass, known, std::move(detail)});
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

ExperimentConfig load(const std::string& name) {
  return config_from_json(read_json_file(std::string(LPSUB_CONFIG_DIR) + "/" + name));
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1));
  return v;
}

// Anchors t = 2 pi (i + 1/2) / 97, incommensurate with the quadrature nodes.
std::vector<double> anchors() {
  std::vector<double> t;
  for (int i = 0; i < 97; ++i) t.push_back(kTwoPi * (i + 0.5) / 97);
  return t;
}

// Per-method maximum error over anchors x distances.
std::vector<double> max_errors(const Experiment& e, const std::vector<double>& ells) {
  std::vector<double> worst(e.config().methods.size(), 0.0);
  for (double t : anchors()) {
    for (double l : ells) {
      const auto r = e.evaluate_along_normal(t, l);
      for (std::size_t m = 0; m < worst.size(); ++m) worst[m] = std::max(worst[m], std::abs(r.values[m] - r.exact));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

Criterion identities() {
  Criterion c{1, "identity suite"};
  const auto t0 = Clock::now();

  const auto circle = Curve2D::circle(1.0);
  double worst2 = 0.0;
  for (const auto& sol : builtin_solutions(circle, 5.0)) {
    for (Region region : {Region::interior, Region::exterior}) {
      for (const Vec2& x : identity_points(circle, region, 10, 0.3, 101)) {
        worst2 = std::max(worst2, identity_residual(IdentityCase<2>{sol, region, x}, circle, 256));
      }
    }
  }
  c.add("circle N=256 off-boundary", worst2 <= 1e-9, fmt("max residual %.2e <= 1e-9", worst2));

  const auto sphere = Surface3D::sphere(2.0);
  double worst3 = 0.0;
  for (const auto& sol : builtin_solutions(sphere, 5.0)) {
    for (Region region : {Region::interior, Region::exterior}) {
      for (const Vec3& x : identity_points(sphere, region, 10, 0.3, 101)) {
        worst3 = std::max(worst3, identity_residual(IdentityCase<3>{sol, region, x}, sphere, 16));
      }
    }
  }
  c.add("sphere r=2 N=16 off-boundary", worst3 <= 1e-5, fmt("max residual %.2e <= 1e-5", worst3), true);

  double boundary = 0.0, ratio = 1e300;
  for (const auto& sol : builtin_solutions(circle, 5.0)) {
    for (double t : {0.4, 2.1, 4.4}) {
      const IdentityCase<2> ic{sol, Region::boundary, circle.sample(t).point, t};
      const cplx lhs = identity_lhs(ic, circle, 256);
      const cplx u = sol.value(ic.point);
      const double half = std::abs(lhs + 0.5 * u);
      boundary = std::max(boundary, half);
      ratio = std::min(ratio, std::min(std::abs(lhs), std::abs(lhs + u)) / std::max(half, 1e-300));
    }
  }
  c.add("circle boundary", boundary <= 1e-8, fmt("max |lhs + u/2| %.2e <= 1e-8", boundary));
  c.add("-1/2 selection", ratio >= 100.0, fmt("min advantage over 0 and -1: %.1e >= 100", ratio));

  c.seconds = seconds_since(t0);
  c.add("runtime", c.seconds <= 60.0, fmt("%.1f s <= 60 s", c.seconds));
  return c;
}

Criterion gauss_law() {
  Criterion c{2, "Gauss law"};
  const auto t0 = Clock::now();
  double row = 0.0;
  for (const auto& curve : {Curve2D::circle(1.0), Curve2D::kite(), Curve2D::star()}) {
    // The system matrix is -I/2 + K; K is the discrete double-layer operator.
    const auto a = laplace_dirichlet_matrix_2d(curve, 128);
    const Eigen::MatrixXcd k = a + 0.5 * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(a.rows());
    row = std::max(row, (k * ones + 0.5 * ones).cwiseAbs().maxCoeff());
  }
  c.add("double-layer operator on constants", row <= 1e-10, fmt("max |K 1 + 1/2| %.2e <= 1e-10", row));

  const Kernel<2> lap{Family::laplace, 0.0};
  double inside = 0.0, outside = 0.0;
  for (const auto& [curve, n] : {std::pair{Curve2D::circle(1.0), 128}, std::pair{Curve2D::kite(), 256}}) {
    const auto nodes = ptr_nodes(curve, n);
    auto sum = [&](const Vec2& x) {
      cplx s = 0.0;
      for (const auto& q : nodes) s += q.w * lap.dlp(x, q.y, q.n);
      return s;
    };
    for (const Vec2& x : identity_points(curve, Region::interior, 10, 0.3, 7)) inside = std::max(inside, std::abs(sum(x) + 1.0));
    for (const Vec2& x : identity_points(curve, Region::exterior, 10, 0.3, 7)) outside = std::max(outside, std::abs(sum(x)));
  }
  c.add("interior PTR sum", inside <= 1e-12, fmt("max |sum + 1| %.2e <= 1e-12", inside));
  c.add("exterior PTR sum", outside <= 1e-12, fmt("max |sum| %.2e <= 1e-12", outside));
  c.seconds = seconds_since(t0);
  return c;
}

// Criteria 3 and 4 share their structure.
Criterion close_evaluation_2d(int id, const std::string& title, const std::string& config, double far_tol,
                              bool band_known_limitation) {
  Criterion c{id, title};
  const auto t0 = Clock::now();
  const auto cfg = load(config);
  const Experiment e(cfg);
  const auto& methods = cfg.methods;

  const auto far = max_errors(e, {1.0, 2.0});
  for (std::size_t m = 0; m < methods.size(); ++m) {
    c.add("far field " + methods[m], far[m] <= far_tol, fmt("max error %.2e <= %.0e", far[m], far_tol));
  }

  const auto near = max_errors(e, log_space(1e-5, 1e-2, 7));
  for (std::size_t m = 1; m < methods.size(); ++m) {
    const double ratio = near[m] / near[0];
    c.add("band " + methods[m], ratio <= 1e-2,
          fmt("max error %.2e vs standard %.2e", near[m], near[0]) + fmt(", ratio %.1e <= 1e-2", ratio),
          band_known_limitation);
  }

  auto scan = cfg;
  scan.scan.ell = log_space(1e-6, 1.0, 100);
  const auto ts = Clock::now();
  const Table t = run_normal_scan(scan);
  const double scan_seconds = seconds_since(ts);
  if (id == 3) {
    c.add("100-point scan runtime", t.rows.size() == 100 && scan_seconds <= 30.0,
          fmt("%.2f s <= 30 s", scan_seconds));
  }
  c.seconds = seconds_since(t0);
  return c;
}

Criterion sphere_examples() {
  Criterion c{5, "Examples 2 and 4 on the sphere"};
  const auto t0 = Clock::now();
  std::vector<double> ells;
  for (double l : log_space(1e-6, 1.0, 40)) {
    if (l <= 0.1) ells.push_back(l);
  }
  ells.push_back(1e-3);
  for (const auto& [config, label] : {std::pair{"example2_scan.json", "A dsl"}, std::pair{"example4_scan.json", "B pws"}}) {
    auto cfg = load(config);
    cfg.scan.ell = ells;
    const Table t = run_normal_scan(cfg);
    const std::string base = "err_" + cfg.methods[0], mod = "err_" + cfg.methods[1];
    bool never_worse = true;
    double at_1e3 = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const double a = t.number(r, base), b = t.number(r, mod);
      if (b > a) never_worse = false;
      if (t.number(r, "ell") == 1e-3) at_1e3 = a / b;
    }
    c.add(std::string("point ") + label + " never worse", never_worse, fmt("%.0f distances in [1e-6, 0.1]", double(t.rows.size())));
    c.add(std::string("point ") + label + " gain at 1e-3", at_1e3 >= 5.0, fmt("%.1e >= 5", at_1e3));
  }
  c.seconds = seconds_since(t0);
  c.add("runtime", c.seconds <= 300.0, fmt("%.1f s <= 300 s", c.seconds));
  return c;
}

Criterion wavenumber_sweep() {
  Criterion c{6, "wavenumber sweep"};
  const auto t0 = Clock::now();
  for (const char* config : {"ksweep_star.json", "ksweep_sphere.json"}) {
    const auto cfg = load(config);
    const Table t = run_k_sweep(cfg);
    const std::string base = "maxerr_" + cfg.methods[0], mod = "maxerr_" + cfg.methods[1];
    bool ok = true;
    std::string detail;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      ok = ok && t.number(r, mod) <= t.number(r, base);
      detail += fmt("k=%g: %.1e", t.number(r, "k"), t.number(r, mod)) + fmt(" vs %.1e; ", t.number(r, base));
    }
    c.add(cfg.shape, ok && !t.rows.empty(), detail);
  }
  c.seconds = seconds_since(t0);
  return c;
}

Criterion bie_pws() {
  Criterion c{7, "BIE-PWS density"};
  const auto t0 = Clock::now();
  const auto cfg = load("bie_pws_star.json");
  auto kcfg = cfg;
  kcfg.solver = "kress";
  const Experiment bie(cfg), kress(kcfg);
  const std::size_t pws = 1;

  const double far = max_errors(bie, {1.0, 2.0})[pws];
  c.add("far field floor", far >= 1e-8 && far <= 1e-4, fmt("max error %.2e in [1e-8, 1e-4]", far));
  for (double l : {1e-5, 1e-4, 1e-3}) {
    const double a = max_errors(bie, {l})[pws], b = max_errors(kress, {l})[pws];
    c.add(fmt("ell=%.0e", l), a <= 10.0 * b, fmt("BIE-PWS %.2e vs Kress %.2e", a, b) + " (<= 10x)");
  }
  c.seconds = seconds_since(t0);
  return c;
}

Criterion self_convergence() {
  Criterion c{8, "spectral self-convergence"};
  const auto t0 = Clock::now();
  const auto kite = Curve2D::kite(), star = Curve2D::star();
  const auto dirichlet = exact_solution<2>(Problem::laplace_int_dirichlet, Vec2(1.5, 1.5), 0.0);
  const auto neumann = exact_solution<2>(Problem::laplace_ext_neumann, Vec2(0.1, 0.4), 0.0);
  const double k = 5.0;
  const auto scatter = exact_solution<2>(Problem::helmholtz_scatter, Vec2(0.2, 0.8), k);

  struct Solver {
    std::string name;
    std::function<Density2D(int)> solve;
    bool known;
  };
  const std::vector<Solver> solvers = {
      {"Laplace Dirichlet (kite)",
       [&](int n) { return solve_laplace_dirichlet_2d(kite, [&](const CurveSample& s) { return dirichlet.value(s.point); }, n); },
       false},
      {"Laplace Neumann (kite)",
       [&](int n) {
         return solve_laplace_neumann_2d(
             kite, [&](const CurveSample& s) { return neumann.normal_derivative(s.point, s.normal); }, n);
       },
       false},
      {"Helmholtz Kress (star, k=5)",
       [&](int n) {
         return solve_helmholtz_kress_2d(star, k, [&](const CurveSample& s) { return scatter.value(s.point); }, n);
       },
       false},
      {"Helmholtz BIE-PWS (star, k=5)",
       [&](int n) {
         return solve_helmholtz_pws_2d(star, k, [&](const CurveSample& s) { return scatter.value(s.point); }, n);
       },
       true},
  };

  for (const auto& s : solvers) {
    const auto ref = s.solve(512);
    std::vector<double> err;
    for (int n : {32, 64, 128}) {
      const auto d = s.solve(n);
      double e = 0.0;
      for (int j = 0; j < n; ++j) e = std::max(e, std::abs(d.values()[j] - ref.values()[j * (512 / n)]));
      err.push_back(e);
    }
    bool ok = true;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      if (err[i] <= 1e-12 || err[i + 1] <= 1e-12) continue;
      ok = ok && err[i + 1] <= err[i] / 10.0;
    }
    c.add(s.name, ok, fmt("N=32: %.1e, ", err[0]) + fmt("N=64: %.1e, N=128: %.1e", err[1], err[2]), s.known);
  }
  c.seconds = seconds_since(t0);
  return c;
}

template <int D>
Vec<D> random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec<D> v;
  for (int i = 0; i < D; ++i) v(i) = g(rng);
  return v.normalized();
}

template <int D>
double derivative_mismatch(const Kernel<D>& kernel, std::mt19937_64& rng, bool adjoint) {
  std::uniform_real_distribution<double> ur(0.2, 3.0);
  const Vec<D> y = random_unit<D>(rng);
  const Vec<D> x = y + ur(rng) * random_unit<D>(rng);
  const Vec<D> n = random_unit<D>(rng);
  const double h = 1e-6;
  cplx fd, an;
  if (adjoint) {
    fd = (kernel.single(x + h * n, y) - kernel.single(x - h * n, y)) / (2 * h);
    an = kernel.adjoint_dlp(x, y, n);
  } else {
    fd = (kernel.single(x, y + h * n) - kernel.single(x, y - h * n)) / (2 * h);
    an = kernel.dlp(x, y, n);
  }
  return std::abs(fd - an) / std::abs(an);
}

Criterion hygiene() {
  Criterion c{9, "numerical hygiene"};
  const auto t0 = Clock::now();

  std::mt19937_64 rng(2024);
  double fd = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (bool adjoint : {false, true}) {
      fd = std::max(fd, derivative_mismatch(Kernel<2>{Family::laplace, 0.0}, rng, adjoint));
      fd = std::max(fd, derivative_mismatch(Kernel<2>{Family::helmholtz, 3.0}, rng, adjoint));
      fd = std::max(fd, derivative_mismatch(Kernel<3>{Family::laplace, 0.0}, rng, adjoint));
      fd = std::max(fd, derivative_mismatch(Kernel<3>{Family::helmholtz, 3.0}, rng, adjoint));
    }
  }
  c.add("normal derivatives vs finite differences", fd <= 1e-7, fmt("max relative mismatch %.1e <= 1e-7", fd));

  double gl = 0.0;
  for (int n : {1, 2, 3, 5, 8, 16, 32, 64}) {
    const auto g = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], d);
      gl = std::max(gl, std::abs(s - (d % 2 ? 0.0 : 2.0 / (d + 1))));
    }
  }
  c.add("Gauss-Legendre exactness", gl <= 1e-13, fmt("max monomial error %.1e <= 1e-13", gl));

  const int degrees = 8, count = degrees * degrees;
  const auto rule = sphere_product_rule(16);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(count, count);
  std::vector<cplx> y(count);
  for (int i = 0; i < rule.n; ++i) {
    for (int j = 0; j < 2 * rule.n; ++j) {
      sph_harm_all(degrees, rule.theta[i], rule.phi[j], y);
      const double w = rule.weight[i * 2 * rule.n + j];
      for (int a = 0; a < count; ++a) {
        for (int b = 0; b < count; ++b) gram(a, b) += w * std::conj(y[a]) * y[b];
      }
    }
  }
  const double gram_err = (gram - Eigen::MatrixXcd::Identity(count, count)).cwiseAbs().maxCoeff();
  c.add("spherical harmonic Gram matrix", gram_err <= 1e-12, fmt("max deviation %.1e <= 1e-12", gram_err));

  double wr = 0.0;
  for (double z : log_space(1e-3, 1e4, 60)) {
    const double w = bessel_j(1, z) * bessel_y(0, z) - bessel_j(0, z) * bessel_y(1, z);
    const double exact = 2.0 / (kPi * z);
    wr = std::max(wr, std::abs(w - exact) / exact);
  }
  c.add("Bessel Wronskian", wr <= 1e-10, fmt("max relative error %.1e <= 1e-10", wr));
  c.seconds = seconds_since(t0);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> runs = {
      identities,
      gauss_law,
      [] { return close_evaluation_2d(3, "Example 1 (kite Neumann)", "example1_scan.json", 1e-10, true); },
      [] { return close_evaluation_2d(4, "Example 3 (star scattering)", "example3_scan.json", 1e-9, false); },
      sphere_examples,
      wavenumber_sweep,
      bie_pws,
      self_convergence,
      hygiene,
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    Criterion c;
    try {
      c = runs[i]();
    } catch (const std::exception& ex) {
      c.id = static_cast<int>(i) + 1;
      c.add("exception", false, ex.what());
    }
    bool pass = !c.checks.empty(), known_only = true;
    for (const auto& k : c.checks) {
      if (k.pass) continue;
      pass = false;
      known_only = known_only && k.known_limitation;
    }
    const char* verdict = pass ? "PASS" : known_only ? "FAIL (known limitation)" : "FAIL";
    std::printf("criterion %d: %s  %s  [%.1f s]\n", c.id, verdict, c.title.c_str(), c.seconds);
    for (const auto& k : c.checks) {
      std::printf("    %-4s %s: %s%s\n", k.pass ? "ok" : "FAIL", k.name.c_str(), k.detail.c_str(),
                  !k.pass && k.known_limitation ? " (known limitation)" : "");
    }
    if (!pass && !known_only) ++unexpected;
    std::fflush(stdout);
  }
  std::printf("%d unexpected failure(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
