#include "biframe/error.hpp"
#include "biframe/kernels.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace biframe::kernels::omp {

Operator assemble_biframe(std::span<const Vector> x, std::span<const Vector> y, std::span<const double> w,
                          std::size_t dim) {
  if (x.size() != w.size() || y.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "field sample counts differ from node count");
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (x[k].size() != dim || y[k].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "sample " + std::to_string(k) + " has wrong length");
    }
  }
  Operator s(dim, dim);
  const auto n = static_cast<std::ptrdiff_t>(dim);
  const std::size_t nodes = w.size();
  // Entry-parallel; the node sum inside each entry runs in serial order.
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      Scalar acc{};
      for (std::size_t k = 0; k < nodes; ++k) {
        const Scalar wy = w[k] * y[k][static_cast<std::size_t>(i)];
        acc += wy * std::conj(x[k][static_cast<std::size_t>(j)]);
      }
      s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
    }
  }
  return s;
}

std::vector<Scalar> quadratic_forms(const Operator& s, std::span<const Vector> fs) {
  std::vector<Scalar> out(fs.size());
  const auto count = static_cast<std::ptrdiff_t>(fs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto& f = fs[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] = inner(s * f, f);
  }
  return out;
}

std::vector<Vector> transform_samples(const Operator& t, std::span<const Vector> samples) {
  std::vector<Vector> out(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = t * samples[static_cast<std::size_t>(k)];
  }
  return out;
}

int max_threads() noexcept {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace biframe::kernels::omp
