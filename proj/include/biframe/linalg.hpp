#pragma once

// Dense complex operator algebra for desk-scale dimensions (d <= 64).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace biframe {

using Scalar = std::complex<double>;

/// Default relative cutoff for singular values treated as zero.
inline constexpr double kDefaultRankTol = 1e-10;
/// Default relative tolerance for Hermitian / PSD predicates.
inline constexpr double kDefaultPsdTol = 1e-9;

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim);
  Vector(std::initializer_list<Scalar> entries);
  explicit Vector(std::vector<Scalar> entries);

  static Vector basis(std::size_t dim, std::size_t k);

  std::size_t size() const noexcept { return data_.size(); }
  Scalar& operator[](std::size_t i) { return data_[i]; }
  const Scalar& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Scalar> entries() const noexcept { return data_; }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(Scalar c);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<Scalar> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(Scalar c, Vector v);

/// <a, b> = sum_i a_i * conj(b_i): linear in the first slot.
Scalar inner(const Vector& a, const Vector& b);
double norm(const Vector& v);

/// Row-major dense matrix. Entries are finite by construction.
class Operator {
 public:
  Operator() = default;
  Operator(std::size_t rows, std::size_t cols);
  Operator(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Operator identity(std::size_t n);
  static Operator diagonal(std::span<const Scalar> diag);
  static Operator diagonal(std::initializer_list<Scalar> diag);
  static Operator from_columns(std::span<const Vector> columns);
  /// u v^*.
  static Operator outer(const Vector& u, const Vector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Scalar> entries() const noexcept { return data_; }
  std::span<Scalar> entries() noexcept { return data_; }

  Vector column(std::size_t j) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Scalar c);

  friend bool operator==(const Operator&, const Operator&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(Scalar c, Operator a);
Operator operator*(const Operator& a, const Operator& b);
Vector operator*(const Operator& a, const Vector& v);

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const Operator& t);
void require_finite(const Vector& v);

double frobenius_norm(const Operator& t);
double max_abs_entry(const Operator& t);

/// Entrywise conjugate transpose.
Operator adjoint(const Operator& t);

/// (T + T^*)/2, Hermitian to the last bit.
Operator hermitian_part(const Operator& t);
/// (T - T^*)/2.
Operator anti_hermitian_part(const Operator& t);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Operator eigenvectors;            // unitary; column k pairs with eigenvalues[k]
};

/// Cyclic complex Jacobi. Throws NotHermitian when ||T - T^*||_F > tol max(1, ||T||_F),
/// NoConvergence when the sweep budget runs out.
EigenDecomposition hermitian_eigen(const Operator& t, double tol = kDefaultPsdTol);

struct SingularSystem {
  std::vector<double> values;  // descending, length min(rows, cols)
  Operator left;               // rows x min(rows, cols), orthonormal columns
  Operator right;              // cols x min(rows, cols), orthonormal columns
};

/// Thin SVD through the Hermitian dilation [[0, T], [T^*, 0]], whose spectrum is {+-sigma_i}.
/// Small singular values keep absolute accuracy ~eps ||T||, unlike the T^*T route.
SingularSystem singular_system(const Operator& t);

std::vector<double> singular_values(const Operator& t);
double operator_norm(const Operator& t);
std::size_t numerical_rank(const Operator& t, double rank_tol = kDefaultRankTol);

/// Singular values at or below rank_tol * sigma_max are dropped; the zero operator maps to zero.
Operator moore_penrose(const Operator& t, double rank_tol = kDefaultRankTol);

/// Orthogonal projector onto R(T); equals T T^+.
Operator range_projector(const Operator& t, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of R(T) as the columns of a rows x rank matrix (rank may be 0).
Operator range_basis(const Operator& t, double rank_tol = kDefaultRankTol);

/// min eigenvalue of Herm(T) >= -tol max(1, ||T||).
bool is_psd(const Operator& t, double tol = kDefaultPsdTol);

/// ||T T^* - I||_2 <= tol.
bool is_coisometry(const Operator& t, double tol = kDefaultPsdTol);

}  // namespace biframe
