#include "biframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "biframe/error.hpp"

namespace biframe {

namespace {

constexpr int kMaxJacobiSweeps = 100;

void require_same_shape(const Operator& a, const Operator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

void require_square(const Operator& t, const char* what) {
  if (!t.square()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " requires a square operator");
  }
}

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// One Jacobi rotation annihilating a(p, q), accumulated into v.
void rotate(Operator& a, Operator& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const Scalar b = a(p, q);
  const double abs_b = std::abs(b);
  if (abs_b == 0.0) return;
  const Scalar phase = b / abs_b;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = 0.5 * (aqq - app) / abs_b;
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on coordinates (p, q).
  const Scalar u00 = c;
  const Scalar u01 = s;
  const Scalar u10 = -s * std::conj(phase);
  const Scalar u11 = c * std::conj(phase);

  for (std::size_t k = 0; k < n; ++k) {
    const Scalar akp = a(k, p);
    const Scalar akq = a(k, q);
    a(k, p) = akp * u00 + akq * u10;
    a(k, q) = akp * u01 + akq * u11;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar apk = a(p, k);
    const Scalar aqk = a(q, k);
    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar vkp = v(k, p);
    const Scalar vkq = v(k, q);
    v(k, p) = vkp * u00 + vkq * u10;
    v(k, q) = vkp * u01 + vkq * u11;
  }
  a(p, p) = app - t * abs_b;
  a(q, q) = aqq + t * abs_b;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

double off_diagonal_norm(const Operator& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(std::size_t dim) : data_(dim, Scalar{}) {}
Vector::Vector(std::initializer_list<Scalar> entries) : data_(entries) {}
Vector::Vector(std::vector<Scalar> entries) : data_(std::move(entries)) {}

Vector Vector::basis(std::size_t dim, std::size_t k) {
  Vector e(dim);
  e[k] = 1.0;
  return e;
}

Vector& Vector::operator+=(const Vector& other) {
  if (other.size() != size()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  if (other.size() != size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(Scalar c) {
  for (auto& x : data_) x *= c;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(Scalar c, Vector v) { return v *= c; }

Scalar inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "inner product");
  Scalar sum{};
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * std::conj(b[i]);
  return sum;
}

double norm(const Vector& v) {
  double sum = 0.0;
  for (const auto& x : v) sum += std::norm(x);
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {}

Operator::Operator(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged operator literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(*this);
}

Operator Operator::identity(std::size_t n) {
  Operator id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

Operator Operator::diagonal(std::span<const Scalar> diag) {
  Operator d(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
  require_finite(d);
  return d;
}

Operator Operator::diagonal(std::initializer_list<Scalar> diag) {
  return diagonal(std::span<const Scalar>(diag.begin(), diag.size()));
}

Operator Operator::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) return {};
  Operator m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  require_finite(m);
  return m;
}

Operator Operator::outer(const Vector& u, const Vector& v) {
  Operator m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Vector Operator::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_shape(*this, other, "operator sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_shape(*this, other, "operator difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Operator& Operator::operator*=(Scalar c) {
  for (auto& x : data_) x *= c;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }
Operator operator*(Scalar c, Operator a) { return a *= c; }

Operator operator*(const Operator& a, const Operator& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "operator product");
  Operator c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik == Scalar{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Operator& a, const Vector& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "operator-vector product");
  Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar sum{};
    for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * v[j];
    r[i] = sum;
  }
  return r;
}

void require_finite(const Operator& t) {
  for (const auto& z : t.entries())
    if (!finite(z)) throw Error(ErrorCode::NonFinite, "operator has a non-finite entry");
}

void require_finite(const Vector& v) {
  for (const auto& z : v)
    if (!finite(z)) throw Error(ErrorCode::NonFinite, "vector has a non-finite entry");
}

double frobenius_norm(const Operator& t) {
  double sum = 0.0;
  for (const auto& z : t.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_abs_entry(const Operator& t) {
  double m = 0.0;
  for (const auto& z : t.entries()) m = std::max(m, std::abs(z));
  return m;
}

Operator adjoint(const Operator& t) {
  Operator r(t.cols(), t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) r(j, i) = std::conj(t(i, j));
  return r;
}

Operator hermitian_part(const Operator& t) {
  require_square(t, "hermitian_part");
  Operator h(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) h(i, j) = 0.5 * (t(i, j) + std::conj(t(j, i)));
  return h;
}

Operator anti_hermitian_part(const Operator& t) {
  require_square(t, "anti_hermitian_part");
  Operator n(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) n(i, j) = 0.5 * (t(i, j) - std::conj(t(j, i)));
  return n;
}

// ---------------------------------------------------------------------------
// Spectral kernel

EigenDecomposition hermitian_eigen(const Operator& t, double tol) {
  require_square(t, "hermitian_eigen");
  require_finite(t);
  const std::size_t n = t.rows();
  const double scale = frobenius_norm(t);
  if (frobenius_norm(2.0 * anti_hermitian_part(t)) > tol * std::max(1.0, scale)) {
    throw Error(ErrorCode::NotHermitian, "||T - T*|| exceeds tolerance");
  }

  Operator a = hermitian_part(t);
  Operator v = Operator::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        const double app = std::abs(a(p, p).real());
        const double aqq = std::abs(a(q, q).real());
        if (sweep > 3 && app + g == app && aqq + g == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (!converged && off_diagonal_norm(a) != 0.0) {
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out{std::vector<double>(n), Operator(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

SingularSystem singular_system(const Operator& t) {
  require_finite(t);
  const std::size_t r = t.rows();
  const std::size_t c = t.cols();
  const std::size_t m = std::min(r, c);
  const std::size_t n = r + c;

  Operator dilation(n, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      dilation(i, r + j) = t(i, j);
      dilation(r + j, i) = std::conj(t(i, j));
    }
  const auto eig = hermitian_eigen(dilation, 0.0);

  SingularSystem out{std::vector<double>(m), Operator(r, m), Operator(c, m)};
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t src = n - 1 - k;
    out.values[k] = std::max(eig.eigenvalues[src], 0.0);
    Vector u(r);
    Vector w(c);
    for (std::size_t i = 0; i < r; ++i) u[i] = eig.eigenvectors(i, src);
    for (std::size_t j = 0; j < c; ++j) w[j] = eig.eigenvectors(r + j, src);
    const double nu = norm(u);
    const double nw = norm(w);
    for (std::size_t i = 0; i < r; ++i) out.left(i, k) = nu > 0.0 ? u[i] / nu : Scalar{};
    for (std::size_t j = 0; j < c; ++j) out.right(j, k) = nw > 0.0 ? w[j] / nw : Scalar{};
  }
  return out;
}

std::vector<double> singular_values(const Operator& t) { return singular_system(t).values; }

double operator_norm(const Operator& t) {
  const auto sv = singular_values(t);
  return sv.empty() ? 0.0 : sv.front();
}

namespace {

std::size_t kept_count(const std::vector<double>& values, double rank_tol) {
  if (values.empty() || values.front() <= 0.0) return 0;
  const double cutoff = rank_tol * values.front();
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double s) { return s > cutoff; }));
}

}  // namespace

std::size_t numerical_rank(const Operator& t, double rank_tol) {
  return kept_count(singular_values(t), rank_tol);
}

Operator moore_penrose(const Operator& t, double rank_tol) {
  const auto svd = singular_system(t);
  const std::size_t kept = kept_count(svd.values, rank_tol);
  Operator pinv(t.cols(), t.rows());
  for (std::size_t k = 0; k < kept; ++k) {
    const double inv = 1.0 / svd.values[k];
    for (std::size_t i = 0; i < t.cols(); ++i) {
      const Scalar vi = svd.right(i, k) * inv;
      for (std::size_t j = 0; j < t.rows(); ++j) pinv(i, j) += vi * std::conj(svd.left(j, k));
    }
  }
  return pinv;
}

Operator range_basis(const Operator& t, double rank_tol) {
  const auto svd = singular_system(t);
  const std::size_t kept = kept_count(svd.values, rank_tol);
  Operator basis(t.rows(), kept);
  for (std::size_t k = 0; k < kept; ++k)
    for (std::size_t i = 0; i < t.rows(); ++i) basis(i, k) = svd.left(i, k);
  return basis;
}

Operator range_projector(const Operator& t, double rank_tol) {
  const Operator q = range_basis(t, rank_tol);
  return q * adjoint(q);
}

bool is_psd(const Operator& t, double tol) {
  require_square(t, "is_psd");
  const Operator h = hermitian_part(t);
  const auto eig = hermitian_eigen(h, 0.0);
  const bool hermitian = max_abs_entry(anti_hermitian_part(t)) == 0.0;
  const double scale = hermitian ? std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()))
                                 : operator_norm(t);
  return eig.eigenvalues.front() >= -tol * std::max(1.0, scale);
}

bool is_coisometry(const Operator& t, double tol) {
  require_square(t, "is_coisometry");
  const Operator defect = t * adjoint(t) - Operator::identity(t.rows());
  const auto eig = hermitian_eigen(hermitian_part(defect), 0.0);
  return std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back())) <= tol;
}

}  // namespace biframe
