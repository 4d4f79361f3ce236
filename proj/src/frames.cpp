#include "biframe/frames.hpp"

#include <algorithm>
#include <cmath>

#include "biframe/error.hpp"
#include "biframe/kernels.hpp"

namespace biframe {

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr double kBisectionRelWidth = 1e-12;

void require_square_pair(const Operator& s, const Operator& k) {
  if (!s.square() || !k.square() || s.rows() != k.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "S and K must be square of equal dimension");
  }
}

double spectral_radius_hermitian(const EigenDecomposition& e) {
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

}  // namespace

VectorField::VectorField(std::size_t dim, std::vector<Vector> samples) : dim_(dim), samples_(std::move(samples)) {
  if (dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "vector field dimension must be positive");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].size() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "sample " + std::to_string(i) + " has length " +
                                                    std::to_string(samples_[i].size()) + ", expected " +
                                                    std::to_string(dim_));
    }
    require_finite(samples_[i]);
  }
}

VectorField VectorField::transformed(const Operator& t) const {
  if (t.cols() != dim_) throw Error(ErrorCode::DimensionMismatch, "transform does not act on the field's space");
  return {t.rows(), kernels::omp::transform_samples(t, samples_)};
}

BiframePair::BiframePair(VectorField x_, VectorField y_, MeasureSpace measure_)
    : x(std::move(x_)), y(std::move(y_)), measure(std::move(measure_)) {
  if (x.dim() != y.dim()) throw Error(ErrorCode::DimensionMismatch, "X and Y live in different spaces");
  if (x.size() != measure.size() || y.size() != measure.size()) {
    throw Error(ErrorCode::DimensionMismatch, "field sample count differs from the measure's node count");
  }
}

BiframePair BiframePair::transformed(const Operator& t) const {
  return {x.transformed(t), y.transformed(t), measure};
}

Operator biframe_operator(const BiframePair& p) {
  return kernels::omp::assemble_biframe(p.x.samples(), p.y.samples(), p.measure.weights(), p.dim());
}

HermitianSplit hermitian_split(const Operator& s) {
  if (!s.square()) throw Error(ErrorCode::DimensionMismatch, "hermitian_split requires a square operator");
  const Operator anti = anti_hermitian_part(s);
  const double anti_norm = max_abs_entry(anti) == 0.0 ? 0.0 : operator_norm(anti);
  return {hermitian_part(s), anti_norm / std::max(1.0, operator_norm(s))};
}

FrameBounds frame_bounds(const VectorField& x, const MeasureSpace& m) {
  const Operator s = biframe_operator(BiframePair(x, x, m));
  const auto eig = hermitian_eigen(hermitian_part(s), 0.0);
  return {eig.eigenvalues.front(), eig.eigenvalues.back()};
}

std::optional<double> k_biframe_lower_bound(const Operator& s, const Operator& k, double tol) {
  require_square_pair(s, k);
  const Operator h = hermitian_part(s);
  const Operator g = k * adjoint(k);
  if (max_abs_entry(g) == 0.0) return std::nullopt;
  if (!is_psd(h, tol)) return std::nullopt;

  auto feasible = [&](double a) { return is_psd(h - Scalar(a) * g, tol); };

  const double h_top = std::max(hermitian_eigen(h, 0.0).eigenvalues.back(), 0.0);
  const double g_top = hermitian_eigen(g, 0.0).eigenvalues.back();
  double hi = h_top / g_top * 1.5 + 1e-300;
  for (int i = 0; i < kMaxBisectionSteps && feasible(hi); ++i) hi = 2.0 * hi + 1e-12;
  double lo = 0.0;
  for (int i = 0; i < kMaxBisectionSteps && hi - lo > kBisectionRelWidth * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

BoundCertificate certify_operator(const Operator& s, const Operator& k, const CertificateTolerances& tol) {
  require_square_pair(s, k);
  BoundCertificate cert;
  cert.K_used = k;

  const HermitianSplit split = hermitian_split(s);
  cert.realness_defect = split.defect;
  const auto h_eig = hermitian_eigen(split.hermitian, 0.0);
  cert.upper_B = h_eig.eigenvalues.back();

  const Operator g = k * adjoint(k);
  if (max_abs_entry(g) == 0.0) {
    cert.degenerate_k = true;
    return cert;
  }
  const auto g_eig = hermitian_eigen(g, 0.0);
  const double g_top = g_eig.eigenvalues.back();
  double g_floor = g_top;
  for (double lambda : g_eig.eigenvalues) {
    if (lambda > tol.rank * g_top) {
      g_floor = lambda;
      break;
    }
  }
  cert.certification_floor = 100.0 * tol.psd * std::max(1.0, spectral_radius_hermitian(h_eig)) / g_floor;

  cert.a_sup = k_biframe_lower_bound(s, k, tol.psd);
  if (cert.a_sup) cert.lower_A = std::min(*cert.a_sup, cert.upper_B);
  cert.is_k_biframe = cert.realness_defect <= tol.realness && cert.a_sup && *cert.a_sup > cert.certification_floor;
  return cert;
}

BoundCertificate check_k_biframe(const BiframePair& p, const Operator& k, double tol) {
  CertificateTolerances t;
  t.realness = tol;
  return check_k_biframe(p, k, t);
}

BoundCertificate check_k_biframe(const BiframePair& p, const Operator& k, const CertificateTolerances& tol) {
  return certify_operator(biframe_operator(p), k, tol);
}

Witness find_witness(const Operator& s, const Operator& k, double a) {
  require_square_pair(s, k);
  const Operator h = hermitian_part(s);
  const Operator g = k * adjoint(k);
  const auto eig = hermitian_eigen(h - Scalar(a) * g, 0.0);
  Witness w;
  w.f = eig.eigenvectors.column(0);
  const double kf = norm(adjoint(k) * w.f);
  w.k_star_norm_sq = kf * kf;
  w.quadratic_form = inner(s * w.f, w.f).real();
  w.margin = w.quadratic_form - a * w.k_star_norm_sq;
  return w;
}

BiframePair controlled_from(const VectorField& x, const MeasureSpace& m, const Operator& p,
                            const std::optional<Operator>& q, double tol) {
  auto require_positive_invertible = [&](const Operator& op, const char* name) {
    if (!op.square() || op.rows() != x.dim()) {
      throw Error(ErrorCode::DimensionMismatch, std::string(name) + " does not act on the field's space");
    }
    const double scale = std::max(1.0, frobenius_norm(op));
    if (frobenius_norm(2.0 * anti_hermitian_part(op)) > tol * scale) {
      throw Error(ErrorCode::NotPositiveInvertible, std::string(name) + " is not Hermitian");
    }
    if (hermitian_eigen(hermitian_part(op), 0.0).eigenvalues.front() <= tol * scale) {
      throw Error(ErrorCode::NotPositiveInvertible, std::string(name) + " is not positive definite");
    }
  };
  require_positive_invertible(p, "P");
  if (!q) return {x, x.transformed(p), m};
  require_positive_invertible(*q, "Q");
  return {x.transformed(p), x.transformed(*q), m};
}

}  // namespace biframe
