#include "lpsub/specfun.hpp"

#include "lpsub/errors.hpp"
#include "lpsub/geometry.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <string>

namespace lpsub {

GLRule gauss_legendre(int n) {
  if (n <= 0) throw DomainError("Gauss-Legendre order must be positive");
  if (n > 512) throw DomainError("Gauss-Legendre order above 512 is not supported");
  GLRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-type initial guess for the i-th largest root.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw DomainError("only Bessel orders 0 and 1 are provided, got " + std::to_string(order));
  }
}

}  // namespace

double bessel_j(int order, double z) {
  check_order(order);
  return boost::math::cyl_bessel_j(order, z);
}

double bessel_y(int order, double z) {
  check_order(order);
  if (!(z > 0.0)) throw DomainError("Bessel Y requires z > 0");
  return boost::math::cyl_neumann(order, z);
}

std::complex<double> hankel1(int order, double z) {
  check_order(order);
  if (!(z > 0.0)) throw DomainError("Hankel function requires z > 0");
  return {boost::math::cyl_bessel_j(order, z), boost::math::cyl_neumann(order, z)};
}

HankelPair hankel1_01(double z) {
  if (!(z > 0.0)) throw DomainError("Hankel function requires z > 0");
  return {{boost::math::cyl_bessel_j(0, z), boost::math::cyl_neumann(0, z)},
          {boost::math::cyl_bessel_j(1, z), boost::math::cyl_neumann(1, z)}};
}

void sph_harm_all(int degree_count, double theta, double phi, std::span<std::complex<double>> out) {
  if (degree_count < 0 || degree_count > 65) throw DomainError("spherical harmonic degree out of range");
  if (out.size() < static_cast<std::size_t>(degree_count * degree_count)) {
    throw UsageError("sph_harm_all: output span too small");
  }
  if (degree_count == 0) return;
  const double x = std::cos(theta), y = std::sin(theta);
  // Normalized associated Legendre functions pbar_n^m with
  // Y_nm = pbar_n^m(cos theta) e^{i m phi}; Condon-Shortley phase included.
  double pmm = 0.5 / std::sqrt(kPi);
  for (int m = 0; m < degree_count; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * y;
    const std::complex<double> eim = std::polar(1.0, m * phi);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    auto store = [&](int n, double p) {
      const std::complex<double> v = p * eim;
      out[sh_index(n, m)] = v;
      if (m > 0) out[sh_index(n, -m)] = sign * std::conj(v);
    };
    store(m, pmm);
    if (m + 1 >= degree_count) continue;
    double p_prev = pmm;
    double p = std::sqrt(2.0 * m + 3.0) * x * pmm;
    store(m + 1, p);
    for (int n = m + 2; n < degree_count; ++n) {
      const double a = std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
      const double b = std::sqrt(((n - 1.0) * (n - 1.0) - static_cast<double>(m) * m) /
                                 (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
      const double p_next = a * (x * p - b * p_prev);
      p_prev = p;
      p = p_next;
      store(n, p);
    }
  }
}

std::complex<double> sph_harm(int n, int m, double theta, double phi) {
  if (n < 0 || n > 64) throw DomainError("spherical harmonic degree must lie in [0, 64]");
  if (std::abs(m) > n) throw DomainError("spherical harmonic order must satisfy |m| <= n");
  std::vector<std::complex<double>> all((n + 1) * (n + 1));
  sph_harm_all(n + 1, theta, phi, all);
  return all[sh_index(n, m)];
}

}  // namespace lpsub
