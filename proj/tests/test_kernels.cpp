#include "lpsub/errors.hpp"
#include "lpsub/kernels.hpp"
#include "lpsub/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace lpsub;

namespace {

template <int D>
Vec<D> random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec<D> v;
  for (int i = 0; i < D; ++i) v(i) = g(rng);
  return v.normalized();
}

// Relative mismatch between an analytic normal derivative and the centered
// difference of the single kernel, moving y (dlp) or x (adjoint).
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

}  // namespace

TEST_CASE("kernel closed forms") {
  const double three[3] = {0, 0, 0}, three_y[3] = {2, 0, 0};
  const cplx g3 = kernel_eval({Family::laplace, 3, 0.0, KernelPart::single}, three, three_y);
  CHECK(std::abs(g3 - 1.0 / (8 * kPi)) < 1e-16);
  CHECK(std::abs(g3 - 0.039788735773) < 1e-12);

  const double x[2] = {0, 0}, y[2] = {1, 0}, n[2] = {1, 0};
  CHECK(std::abs(kernel_eval({Family::laplace, 2, 0.0, KernelPart::single}, x, y)) < 1e-16);
  const cplx d = kernel_eval({Family::laplace, 2, 0.0, KernelPart::dlp}, x, y, std::span<const double>(n));
  CHECK(std::abs(d - (-1.0 / (2 * kPi))) < 1e-15);
  CHECK(d.imag() == 0.0);

  const cplx h = kernel_eval({Family::helmholtz, 2, 1.0, KernelPart::single}, x, y);
  CHECK(std::abs(h - cplx(-0.022064241053919239496, 0.19129942163949163786)) < 1e-15);
}

TEST_CASE("Laplace dlp matches a finite difference at a single point") {
  const Kernel<2> lap{Family::laplace, 0.0};
  const Vec2 x(0, 0), y(1, 0), n(1, 0);
  const double h = 1e-6;
  const cplx fd = (lap.single(x, y + h * n) - lap.single(x, y - h * n)) / (2 * h);
  CHECK(std::abs(fd - lap.dlp(x, y, n)) < 1e-9);
}

TEST_CASE("kernel errors") {
  const double x[2] = {0.5, 0.5};
  const double n[2] = {1, 0};
  CHECK_THROWS_AS(kernel_eval({Family::laplace, 2, 0.0, KernelPart::single}, x, x), SingularEvaluation);
  CHECK_THROWS_AS(kernel_eval({Family::laplace, 2, 0.0, KernelPart::dlp}, x, n), UsageError);
  CHECK_THROWS_AS(kernel_eval({Family::helmholtz, 2, 0.0, KernelPart::single}, x, n), UsageError);
  CHECK_THROWS_AS(kernel_eval({Family::laplace, 2, 1.0, KernelPart::single}, x, n), UsageError);
  CHECK_THROWS_AS(kernel_eval({Family::laplace, 4, 0.0, KernelPart::single}, x, n), UsageError);
}

TEST_CASE("normal derivatives match finite differences") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    for (bool adjoint : {false, true}) {
      CHECK(derivative_mismatch(Kernel<2>{Family::laplace, 0.0}, rng, adjoint) < 1e-7);
      CHECK(derivative_mismatch(Kernel<2>{Family::helmholtz, 3.0}, rng, adjoint) < 1e-7);
      CHECK(derivative_mismatch(Kernel<3>{Family::laplace, 0.0}, rng, adjoint) < 1e-7);
      CHECK(derivative_mismatch(Kernel<3>{Family::helmholtz, 3.0}, rng, adjoint) < 1e-7);
      checked += 4;
    }
  }
  CHECK(checked == 800);
}

TEST_CASE("combined values agree with the separate parts") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = 2.0 * random_unit<3>(rng), y = random_unit<3>(rng), n = random_unit<3>(rng);
    const Kernel<3> k{Family::helmholtz, 2.5};
    const auto b = k.both(x, y, n);
    CHECK(std::abs(b.single - k.single(x, y)) < 1e-15);
    CHECK(std::abs(b.dlp - k.dlp(x, y, n)) < 1e-15);
  }
}

TEST_CASE("3D Helmholtz tends to Laplace as k -> 0") {
  const Kernel<3> lap{Family::laplace, 0.0}, helm{Family::helmholtz, 1e-6};
  for (double r : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const Vec3 x(0, 0, 0), y(r, 0, 0);
    CHECK(std::abs(helm.single(x, y) - lap.single(x, y)) <= 1e-6 * 0.1);
  }
}

TEST_CASE("reciprocity") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const Vec2 x = random_unit<2>(rng) * 1.7, y = random_unit<2>(rng) * 0.4;
    for (const auto& k : {Kernel<2>{Family::laplace, 0.0}, Kernel<2>{Family::helmholtz, 4.0}}) {
      CHECK(k.single(x, y) == k.single(y, x));
    }
    const Vec3 a = random_unit<3>(rng) * 1.7, b = random_unit<3>(rng) * 0.4;
    for (const auto& k : {Kernel<3>{Family::laplace, 0.0}, Kernel<3>{Family::helmholtz, 4.0}}) {
      CHECK(k.single(a, b) == k.single(b, a));
    }
  }
}

TEST_CASE("discrete Gauss law on the unit circle") {
  const auto nodes = ptr_nodes(Curve2D::circle(1.0), 128);
  const Kernel<2> lap{Family::laplace, 0.0};
  auto sum = [&](const Vec2& x) {
    cplx s = 0.0;
    for (const auto& q : nodes) s += q.w * lap.dlp(x, q.y, q.n);
    return s;
  };
  for (const Vec2& x : {Vec2(0, 0), Vec2(0.3, -0.2), Vec2(-0.5, 0.0)}) CHECK(std::abs(sum(x) + 1.0) < 1e-12);
  for (const Vec2& x : {Vec2(1.5, 0), Vec2(-2.0, 1.0), Vec2(0.0, 3.0)}) CHECK(std::abs(sum(x)) < 1e-12);
}
