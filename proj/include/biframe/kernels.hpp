#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP variant; both sum
// in the same per-entry order, so their outputs agree bit for bit at any thread count.

#include <span>
#include <vector>

#include "biframe/linalg.hpp"

namespace biframe::kernels {

namespace serial {

/// S = sum_k w_k y_k x_k^*, accumulated one rank-one term at a time.
Operator assemble_biframe(std::span<const Vector> x, std::span<const Vector> y, std::span<const double> w,
                          std::size_t dim);

/// <S f, f> for every f.
std::vector<Scalar> quadratic_forms(const Operator& s, std::span<const Vector> fs);

/// T x_k for every node.
std::vector<Vector> transform_samples(const Operator& t, std::span<const Vector> samples);

}  // namespace serial

namespace omp {

Operator assemble_biframe(std::span<const Vector> x, std::span<const Vector> y, std::span<const double> w,
                          std::size_t dim);
std::vector<Scalar> quadratic_forms(const Operator& s, std::span<const Vector> fs);
std::vector<Vector> transform_samples(const Operator& t, std::span<const Vector> samples);

/// Threads the OpenMP runtime would use; 1 when built without OpenMP.
int max_threads() noexcept;

}  // namespace omp

}  // namespace biframe::kernels
