#pragma once

// Executable checks of the K-biframe results. Each verifier tests its hypotheses numerically,
// builds the bound envelope the result predicts, and compares it with measured certificates.
//
// Finite-dimensional readings used throughout:
//   dense range  -> full numerical rank
//   closed range -> always satisfied

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biframe/frames.hpp"
#include "biframe/linalg.hpp"

namespace biframe {

enum class TheoremId {
  Swap,
  Characterization,
  InvertibleTransform,
  RangeTransfer,
  RestrictedInvertibility,
  Surjectivity,
  CommutingTransform,
  TwoSidedInvertibility,
  Coisometry,
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::Swap,         TheoremId::Characterization,   TheoremId::InvertibleTransform,
    TheoremId::RangeTransfer, TheoremId::RestrictedInvertibility, TheoremId::Surjectivity,
    TheoremId::CommutingTransform, TheoremId::TwoSidedInvertibility, TheoremId::Coisometry,
};

std::string_view to_string(TheoremId id) noexcept;
/// Throws UnknownTheoremId.
TheoremId parse_theorem_id(std::string_view name);

enum class Verdict { Confirmed, Violated, HypothesesUnmet };

std::string_view to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view name);

struct VerifyOptions {
  double hypothesis = 1e-9;   // hypothesis checks (commutation, symmetry, realness)
  double conclusion = 1e-7;   // relative slack on predicted-vs-measured comparisons
  double rank = kDefaultRankTol;
  double psd = kBisectionPsdTol;
  double sample_slack = 1e-8; // per unit ||f||^2 in sampled quadratic-form inequalities
  std::size_t samples = 500;
  std::uint64_t seed = 1;

  CertificateTolerances certificate() const { return {hypothesis, psd, rank}; }
};

struct HypothesisCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

struct VerificationReport {
  TheoremId theorem_id = TheoremId::Swap;
  std::vector<HypothesisCheck> hypotheses;
  bool hypotheses_ok = false;
  std::optional<double> predicted_lower;
  std::optional<double> predicted_upper;
  BoundCertificate measured;
  Verdict verdict = Verdict::HypothesesUnmet;
  bool vacuous = false;  // confirmed only because the implication's premise failed
  std::vector<Metric> metrics;
  std::vector<std::string> notes;
  std::optional<Vector> witness;
};

struct DouglasFactor {
  Operator u;          // T2^+ T1
  double alpha_min;    // least alpha with T1 T1^* <= alpha^2 T2 T2^*
  double residual;     // ||T2 U - T1||
};

/// Throws NotFactorable when R(T1) is not contained in R(T2), i.e.
/// ||T2 T2^+ T1 - T1|| > rank_tol max(1, ||T1||).
DouglasFactor douglas_factor(const Operator& t1, const Operator& t2,
                                            double rank_tol = kDefaultRankTol);

VerificationReport verify_swap(const BiframePair& p, const Operator& k, const VerifyOptions& opt = {});
VerificationReport verify_characterization(const BiframePair& p, const Operator& k, const VerifyOptions& opt = {});
VerificationReport verify_invertible_transform(const Operator& t, const BiframePair& p, const Operator& k,
                                               const VerifyOptions& opt = {});
VerificationReport verify_range_transfer(const Operator& t, const BiframePair& p, const Operator& k,
                                         const VerifyOptions& opt = {});
VerificationReport verify_restricted_invertibility(const BiframePair& p, const Operator& k,
                                                   const VerifyOptions& opt = {});
VerificationReport verify_surjectivity_necessity(const Operator& t, const BiframePair& p, const Operator& k,
                                                 const VerifyOptions& opt = {});
VerificationReport verify_commuting_transform(const Operator& t, const BiframePair& p, const Operator& k,
                                              const VerifyOptions& opt = {});
VerificationReport verify_two_sided_invertibility(const Operator& t, const BiframePair& p, const Operator& k,
                                                  const VerifyOptions& opt = {});
VerificationReport verify_coisometry_transform(const Operator& t, const BiframePair& p, const Operator& k,
                                               const VerifyOptions& opt = {});

/// Dispatch by id; verifiers that take no transform ignore t.
VerificationReport verify(TheoremId id, const Operator& t, const BiframePair& p, const Operator& k,
                          const VerifyOptions& opt = {});

}  // namespace biframe
