#include "lpsub/kernels.hpp"

#include "lpsub/errors.hpp"

#include <cmath>

namespace lpsub {

std::string_view to_string(Family family) {
  return family == Family::laplace ? "laplace" : "helmholtz";
}

void KernelSpec::validate() const {
  if (dim != 2 && dim != 3) throw UsageError("kernel dimension must be 2 or 3");
  if (family == Family::helmholtz && !(k > 0.0)) {
    throw UsageError("Helmholtz kernel needs a positive wavenumber");
  }
  if (family == Family::laplace && k != 0.0) {
    throw UsageError("Laplace kernel takes no wavenumber");
  }
}

namespace {

template <int D>
cplx eval_dim(const KernelSpec& spec, std::span<const double> xs, std::span<const double> ys,
              std::optional<std::span<const double>> normal) {
  if (xs.size() != D || ys.size() != D) throw UsageError("point dimension does not match kernel");
  const Vec<D> x = Eigen::Map<const Vec<D>>(xs.data());
  const Vec<D> y = Eigen::Map<const Vec<D>>(ys.data());
  if (!((x - y).norm() > 0.0)) throw SingularEvaluation("kernel evaluated at coincident points");
  const Kernel<D> ker{spec.family, spec.k};
  if (spec.part == KernelPart::single) return ker.single(x, y);
  if (!normal || normal->size() != D) {
    throw UsageError("normal-derivative kernel needs a normal of matching dimension");
  }
  const Vec<D> n = Eigen::Map<const Vec<D>>(normal->data());
  return spec.part == KernelPart::dlp ? ker.dlp(x, y, n) : ker.adjoint_dlp(x, y, n);
}

}  // namespace

cplx kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y,
                 std::optional<std::span<const double>> normal) {
  spec.validate();
  return spec.dim == 2 ? eval_dim<2>(spec, x, y, normal) : eval_dim<3>(spec, x, y, normal);
}

}  // namespace lpsub
