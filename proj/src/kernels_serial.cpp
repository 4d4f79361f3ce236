#include "biframe/error.hpp"
#include "biframe/kernels.hpp"

namespace biframe::kernels::serial {

Operator assemble_biframe(std::span<const Vector> x, std::span<const Vector> y, std::span<const double> w,
                          std::size_t dim) {
  if (x.size() != w.size() || y.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "field sample counts differ from node count");
  }
  Operator s(dim, dim);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (x[k].size() != dim || y[k].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "sample " + std::to_string(k) + " has wrong length");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const Scalar wy = w[k] * y[k][i];
      for (std::size_t j = 0; j < dim; ++j) s(i, j) += wy * std::conj(x[k][j]);
    }
  }
  return s;
}

std::vector<Scalar> quadratic_forms(const Operator& s, std::span<const Vector> fs) {
  std::vector<Scalar> out(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) out[k] = inner(s * fs[k], fs[k]);
  return out;
}

std::vector<Vector> transform_samples(const Operator& t, std::span<const Vector> samples) {
  std::vector<Vector> out;
  out.reserve(samples.size());
  for (const auto& v : samples) out.push_back(t * v);
  return out;
}

}  // namespace biframe::kernels::serial
