#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "biframe/frames.hpp"
#include "biframe/linalg.hpp"
#include "biframe/measure.hpp"
#include "biframe/rng.hpp"

namespace biframe::testing {

inline Scalar complex_normal(CounterRng& rng) { return {rng.normal(), rng.normal()}; }

inline Operator random_matrix(CounterRng& rng, std::size_t rows, std::size_t cols) {
  Operator m(rows, cols);
  for (auto& z : m.entries()) z = complex_normal(rng);
  return m;
}

inline Vector random_vector(CounterRng& rng, std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = complex_normal(rng);
  return v;
}

/// Modified Gram-Schmidt on the columns of a Gaussian matrix.
inline Operator random_unitary(CounterRng& rng, std::size_t n) {
  std::vector<Vector> cols;
  while (cols.size() < n) {
    Vector v = random_vector(rng, n);
    for (const auto& q : cols) v -= inner(v, q) * q;
    const double nv = norm(v);
    if (nv < 1e-6) continue;
    cols.push_back((1.0 / nv) * v);
  }
  return Operator::from_columns(cols);
}

/// U diag(s) V^* with the given singular values (zeros allowed).
inline Operator with_singular_values(CounterRng& rng, std::size_t rows, std::size_t cols,
                                     const std::vector<double>& s) {
  const Operator u = random_unitary(rng, rows);
  const Operator v = random_unitary(rng, cols);
  Operator d(rows, cols);
  for (std::size_t k = 0; k < s.size() && k < std::min(rows, cols); ++k) d(k, k) = s[k];
  return u * d * adjoint(v);
}

inline Operator random_hermitian(CounterRng& rng, std::size_t n) { return hermitian_part(random_matrix(rng, n, n)); }

/// Spectral norm by power iteration on T^* T; independent of the Jacobi solver.
inline double power_norm(const Operator& t, int iterations = 2000) {
  CounterRng rng(99);
  Vector v = random_vector(rng, t.cols());
  double estimate = 0.0;
  const Operator g = adjoint(t) * t;
  for (int i = 0; i < iterations; ++i) {
    Vector w = g * v;
    const double nw = norm(w);
    if (nw == 0.0) return 0.0;
    estimate = nw / norm(v);
    v = (1.0 / nw) * w;
  }
  return std::sqrt(estimate);
}

inline double max_abs(const Operator& t) { return max_abs_entry(t); }

inline VectorField random_field(CounterRng& rng, std::size_t d, std::size_t n) {
  std::vector<Vector> samples;
  for (std::size_t i = 0; i < n; ++i) samples.push_back(random_vector(rng, d));
  return {d, samples};
}

/// Independent X and Y on n discrete atoms with weights in [0.5, 1.5].
inline BiframePair random_pair(CounterRng& rng, std::size_t d, std::size_t n) {
  std::vector<double> w(n);
  for (auto& x : w) x = rng.uniform(0.5, 1.5);
  VectorField x = random_field(rng, d, n);
  VectorField y = random_field(rng, d, n);
  return {x, y, discrete_measure(w)};
}

/// sum_i w_i <f, X_i> <Y_i, f>, straight from the definition.
inline Scalar direct_form(const BiframePair& p, const Vector& f) {
  Scalar s = 0.0;
  for (std::size_t i = 0; i < p.measure.size(); ++i) s += p.measure.weights()[i] * inner(f, p.x[i]) * inner(p.y[i], f);
  return s;
}

}  // namespace biframe::testing
