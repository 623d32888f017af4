#pragma once

// Fundamental solutions of the Laplace and Helmholtz equations and their
// normal derivatives, in two and three dimensions.
//
//   Laplace:    G(x,y) = -log|x-y| / (2 pi)            (d = 2)
//                        1 / (4 pi |x-y|)              (d = 3)
//   Helmholtz:  G(x,y) = (i/4) H0(k|x-y|)              (d = 2)
//                        exp(ik|x-y|) / (4 pi |x-y|)   (d = 3)
//
// dlp is the derivative in the source normal n_y, adjoint_dlp the derivative
// in the target normal n_x.

#include "lpsub/geometry.hpp"
#include "lpsub/specfun.hpp"

#include <optional>
#include <span>

namespace lpsub {

enum class Family { laplace, helmholtz };
enum class KernelPart { single, dlp, adjoint_dlp };

std::string_view to_string(Family family);

struct KernelSpec {
  Family family = Family::laplace;
  int dim = 2;
  double k = 0.0;  // wavenumber, Helmholtz only
  KernelPart part = KernelPart::single;

  /// Throws UsageError unless dim is 2 or 3 and k is positive exactly for Helmholtz.
  void validate() const;
};

/// Kernel value at (x,y). Laplace values carry a zero imaginary part.
/// `normal` is n_y for dlp and n_x for adjoint_dlp; it must be present for those parts.
cplx kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y,
                 std::optional<std::span<const double>> normal = std::nullopt);

/// Single-layer and source-normal derivative at one pair of points.
struct KernelValues {
  cplx single;
  cplx dlp;
};

/// Inline kernel family used in quadrature loops. Caller guarantees x != y.
template <int D>
struct Kernel {
  Family family = Family::laplace;
  double k = 0.0;

  cplx single(const Vec<D>& x, const Vec<D>& y) const;
  /// d/dn_y G(x,y)
  cplx dlp(const Vec<D>& x, const Vec<D>& y, const Vec<D>& ny) const;
  /// d/dn_x G(x,y)
  cplx adjoint_dlp(const Vec<D>& x, const Vec<D>& y, const Vec<D>& nx) const;
  KernelValues both(const Vec<D>& x, const Vec<D>& y, const Vec<D>& ny) const;
};

namespace detail {

inline constexpr cplx kI{0.0, 1.0};

/// Radial kernel and its r-derivative; dG/dn_y = -g'(r) n_y.(x-y)/r.
template <int D>
inline std::pair<cplx, cplx> radial(Family family, double k, double r) {
  if constexpr (D == 2) {
    if (family == Family::laplace) return {-std::log(r) / kTwoPi, -1.0 / (kTwoPi * r)};
    const auto h = hankel1_01(k * r);
    return {0.25 * kI * h.h0, -0.25 * kI * k * h.h1};
  } else {
    if (family == Family::laplace) {
      const double g = 1.0 / (4.0 * kPi * r);
      return {g, -g / r};
    }
    const cplx g = std::exp(kI * k * r) / (4.0 * kPi * r);
    return {g, g * (kI * k - 1.0 / r)};
  }
}

}  // namespace detail

template <int D>
cplx Kernel<D>::single(const Vec<D>& x, const Vec<D>& y) const {
  const double r = (x - y).norm();
  if constexpr (D == 2) {
    if (family == Family::laplace) return -std::log(r) / kTwoPi;
    return 0.25 * detail::kI * hankel1(0, k * r);
  } else {
    return detail::radial<D>(family, k, r).first;
  }
}

template <int D>
cplx Kernel<D>::dlp(const Vec<D>& x, const Vec<D>& y, const Vec<D>& ny) const {
  const Vec<D> d = x - y;
  const double r = d.norm();
  cplx dg;
  if constexpr (D == 2) {
    dg = family == Family::laplace ? cplx(-1.0 / (kTwoPi * r)) : -0.25 * detail::kI * k * hankel1(1, k * r);
  } else {
    dg = detail::radial<D>(family, k, r).second;
  }
  return -dg * ny.dot(d) / r;
}

template <int D>
cplx Kernel<D>::adjoint_dlp(const Vec<D>& x, const Vec<D>& y, const Vec<D>& nx) const {
  // d/dn_x G(x,y) = g'(r) n_x.(x-y)/r
  const Vec<D> d = x - y;
  const double r = d.norm();
  cplx dg;
  if constexpr (D == 2) {
    dg = family == Family::laplace ? cplx(-1.0 / (kTwoPi * r)) : -0.25 * detail::kI * k * hankel1(1, k * r);
  } else {
    dg = detail::radial<D>(family, k, r).second;
  }
  return dg * nx.dot(d) / r;
}

template <int D>
KernelValues Kernel<D>::both(const Vec<D>& x, const Vec<D>& y, const Vec<D>& ny) const {
  const Vec<D> d = x - y;
  const double r = d.norm();
  const auto [g, dg] = detail::radial<D>(family, k, r);
  return {g, -dg * ny.dot(d) / r};
}

}  // namespace lpsub
