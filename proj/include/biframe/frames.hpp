#pragma once

#include <optional>
#include <vector>

#include "biframe/linalg.hpp"
#include "biframe/measure.hpp"

namespace biframe {

/// Samples of a weakly measurable map Omega -> C^dim, one per measure node.
class VectorField {
 public:
  VectorField() = default;
  /// Throws DimensionMismatch if a sample's length differs from dim.
  VectorField(std::size_t dim, std::vector<Vector> samples);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::vector<Vector>& samples() const noexcept { return samples_; }
  const Vector& operator[](std::size_t i) const { return samples_[i]; }

  /// Node-wise image T X(omega_i), materialized eagerly.
  VectorField transformed(const Operator& t) const;

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> samples_;
};

struct BiframePair {
  VectorField x;
  VectorField y;
  MeasureSpace measure;

  /// Throws DimensionMismatch unless x.dim == y.dim and both sample counts match the nodes.
  BiframePair(VectorField x, VectorField y, MeasureSpace measure);

  std::size_t dim() const noexcept { return x.dim(); }
  BiframePair swapped() const { return {y, x, measure}; }
  BiframePair transformed(const Operator& t) const;
};

/// S f = sum_i w_i <f, X_i> Y_i, i.e. S = sum_i w_i Y_i X_i^*.
Operator biframe_operator(const BiframePair& p);

struct HermitianSplit {
  Operator hermitian;
  double defect;  // ||(S - S^*)/2|| / max(1, ||S||)
};

HermitianSplit hermitian_split(const Operator& s);

struct FrameBounds {
  double lower;
  double upper;
};

/// Tightest frame bounds of X: the spectral extremes of S_{X,X}.
FrameBounds frame_bounds(const VectorField& x, const MeasureSpace& m);

/// PSD tolerance used inside the bisection. Tighter than kDefaultPsdTol so the located
/// boundary is not biased by the acceptance slack.
inline constexpr double kBisectionPsdTol = 1e-12;

/// sup{A >= 0 : Herm(S) - A K K^* is PSD within tol}, to relative width 1e-12.
/// Empty when Herm(S) itself is not PSD or when K = 0.
std::optional<double> k_biframe_lower_bound(const Operator& s, const Operator& k, double tol = kBisectionPsdTol);

struct CertificateTolerances {
  double realness = 1e-9;
  double psd = kBisectionPsdTol;
  double rank = kDefaultRankTol;
};

struct BoundCertificate {
  std::optional<double> lower_A;  // min(a_sup, upper_B), so that 0 < A <= B when certified
  std::optional<double> a_sup;    // unclamped bisection result
  double upper_B = 0.0;
  double realness_defect = 0.0;
  double certification_floor = 0.0;  // A values below this are indistinguishable from zero
  bool is_k_biframe = false;
  bool degenerate_k = false;  // K = 0: the lower inequality is vacuous
  Operator K_used;
};

/// Certifies an already-assembled biframe operator against K.
BoundCertificate certify_operator(const Operator& s, const Operator& k, const CertificateTolerances& tol = {});

BoundCertificate check_k_biframe(const BiframePair& p, const Operator& k, double tol = 1e-9);
BoundCertificate check_k_biframe(const BiframePair& p, const Operator& k, const CertificateTolerances& tol);

/// Direction minimizing Re<Sf,f> - A ||K^* f||^2 (unit eigenvector of Herm(S) - A K K^*).
struct Witness {
  Vector f;
  double k_star_norm_sq = 0.0;  // ||K^* f||^2
  double quadratic_form = 0.0;  // Re<S f, f>
  double margin = 0.0;          // quadratic_form - A k_star_norm_sq
};

Witness find_witness(const Operator& s, const Operator& k, double a);

/// Remark-style controlled pairs: (X, P X) when q is empty, (P X, Q X) otherwise.
/// Throws NotPositiveInvertible.
BiframePair controlled_from(const VectorField& x, const MeasureSpace& m, const Operator& p,
                            const std::optional<Operator>& q = std::nullopt, double tol = kDefaultPsdTol);

}  // namespace biframe
