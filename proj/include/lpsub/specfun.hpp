#pragma once

// Gauss-Legendre rules, cylinder functions of orders 0 and 1, and orthonormal
// spherical harmonics.

#include <complex>
#include <span>
#include <vector>

namespace lpsub {

/// N-point Gauss-Legendre rule on (-1,1); nodes strictly increasing.
struct GLRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Requires 1 <= n <= 512.
GLRule gauss_legendre(int n);

double bessel_j(int order, double z);
double bessel_y(int order, double z);

/// H^(1)_nu(z) = J_nu(z) + i Y_nu(z) for nu in {0,1} and real z > 0.
std::complex<double> hankel1(int order, double z);

/// Both H^(1)_0(z) and H^(1)_1(z); the kernels need the pair at the same argument.
struct HankelPair {
  std::complex<double> h0;
  std::complex<double> h1;
};
HankelPair hankel1_01(double z);

inline int sh_index(int n, int m) { return n * n + n + m; }

/// Orthonormal spherical harmonic with the Condon-Shortley phase:
/// int Y_nm conj(Y_n'm') sin(theta) dtheta dphi = delta.
std::complex<double> sph_harm(int n, int m, double theta, double phi);

/// All Y_nm with n < degree_count, written at out[sh_index(n, m)].
/// `out` must hold degree_count^2 values.
void sph_harm_all(int degree_count, double theta, double phi, std::span<std::complex<double>> out);

}  // namespace lpsub
