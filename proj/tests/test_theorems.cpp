#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "biframe/corpus.hpp"
#include "biframe/error.hpp"
#include "biframe/theorems.hpp"
#include "support.hpp"

using namespace biframe;
using namespace biframe::testing;

namespace {

const Operator kSqrt2 = Scalar(std::sqrt(2.0)) * Operator::identity(2);

CorpusEntry diagonal() { return example_diagonal_interval(16, QuadratureRule::Gauss2); }

double metric(const VerificationReport& r, const std::string& name) {
  for (const auto& m : r.metrics)
    if (m.name == name) return m.value;
  ADD_FAILURE() << "missing metric " << name;
  return NAN;
}

bool hypothesis(const VerificationReport& r, const std::string& name) {
  for (const auto& h : r.hypotheses)
    if (h.name == name) return h.ok;
  ADD_FAILURE() << "missing hypothesis " << name;
  return false;
}

Operator rotation(double th) { return {{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}}; }

/// Random T with singular values drawn log-uniformly in [1, cond_max^(1/2)] and [cond_max^(-1/2), 1].
Operator well_conditioned(CounterRng& rng, std::size_t d, double cond_max) {
  std::vector<double> s(d);
  for (auto& x : s) x = std::pow(cond_max, rng.uniform(-0.5, 0.5));
  return with_singular_values(rng, d, d, s);
}

/// Random T of rank r < d on C^d when singular is true, else well conditioned.
Operator mixed_transform(CounterRng& rng, std::size_t d, bool singular) {
  if (!singular) return well_conditioned(rng, d, 50.0);
  std::vector<double> s(d, 0.0);
  const auto r = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(d) - 1));
  for (std::size_t k = 0; k < r; ++k) s[k] = rng.uniform(0.5, 2.0);
  return with_singular_values(rng, d, d, s);
}

}  // namespace

TEST(TheoremIds, RoundTrip) {
  for (TheoremId id : kAllTheorems) EXPECT_EQ(parse_theorem_id(to_string(id)), id);
  try {
    parse_theorem_id("pythagoras");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTheoremId);
  }
  for (Verdict v : {Verdict::Confirmed, Verdict::Violated, Verdict::HypothesesUnmet}) {
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  }
}

TEST(DouglasFactor, EqualInvertible) {
  CounterRng rng(31);
  const Operator t = well_conditioned(rng, 3, 10.0);
  const auto f = douglas_factor(t, t);
  EXPECT_LE(max_abs_entry(f.u - Operator::identity(3)), 1e-10);
  EXPECT_NEAR(f.alpha_min, 1.0, 1e-8);
}

TEST(DouglasFactor, DiagonalHalf) {
  const auto f = douglas_factor(Operator::diagonal({1.0, 0.0}), Operator::diagonal({2.0, 0.0}));
  EXPECT_LE(max_abs_entry(f.u - Operator::diagonal({0.5, 0.0})), 1e-15);
  EXPECT_NEAR(f.alpha_min, 0.5, 1e-10);
}

TEST(DouglasFactor, OrthogonalRangesNotFactorable) {
  try {
    douglas_factor(Operator::diagonal({0.0, 1.0}), Operator::diagonal({1.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFactorable);
  }
}

TEST(DouglasFactor, ZeroT1) {
  const auto f = douglas_factor(Operator(2, 2), Operator::diagonal({1.0, 0.0}));
  EXPECT_EQ(f.alpha_min, 0.0);
}

TEST(DouglasFactor, RandomFactorableInstancesBracketAlpha) {
  CounterRng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = static_cast<std::size_t>(rng.integer(2, 6));
    const Operator t2 = mixed_transform(rng, d, rng.uniform() < 0.5);
    const Operator t1 = t2 * random_matrix(rng, d, d);
    if (max_abs_entry(t1) == 0.0) continue;
    const auto f = douglas_factor(t1, t2);
    EXPECT_LE(operator_norm(t2 * f.u - t1), 1e-8 * std::max(1.0, operator_norm(t1)));
    const Operator g1 = t1 * adjoint(t1);
    const Operator g2 = t2 * adjoint(t2);
    EXPECT_TRUE(is_psd(Scalar(std::pow(f.alpha_min + 1e-8, 2)) * g2 - g1));
    EXPECT_FALSE(is_psd(Scalar(std::pow(f.alpha_min * (1 - 1e-4), 2)) * g2 - g1, 1e-12));
  }
}

TEST(Swap, IdenticalFieldsAgree) {
  CounterRng rng(33);
  const BiframePair base = random_pair(rng, 3, 6);
  const BiframePair p(base.x, base.x, base.measure);
  const auto r = verify_swap(p, Operator::identity(3));
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_EQ(*r.predicted_lower, *r.measured.lower_A);
}

TEST(Swap, DiagonalExample) {
  const auto e = diagonal();
  const auto r = verify_swap(e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(*r.measured.lower_A, 1.0 / 3.0, 1e-8);
  EXPECT_NEAR(r.measured.upper_B, 2.0, 1e-8);
}

TEST(Swap, AsymmetricPairUnmet) {
  CounterRng rng(34);
  const BiframePair p = random_pair(rng, 3, 6);
  ASSERT_GT(operator_norm(biframe_operator(p) - biframe_operator(p.swapped())), 1e-8);
  const auto r = verify_swap(p, Operator::identity(3));
  EXPECT_EQ(r.verdict, Verdict::HypothesesUnmet);
  EXPECT_FALSE(hypothesis(r, "S_xy_equals_S_yx"));
}

TEST(Characterization, DiagonalExample) {
  const auto e = diagonal();
  const auto r = verify_characterization(e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(metric(r, "A_tested"), 1.0 / 3.0, 1e-9);
  EXPECT_GE(metric(r, "sampled_vectors"), 500.0);
  EXPECT_EQ(metric(r, "sampled_failures_at_A"), 0.0);
  EXPECT_LT(metric(r, "witness_margin_at_adversarial"), 0.0);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(Characterization, Parseval) {
  const auto e = parseval_orthonormal(3);
  const auto r = verify_characterization(e.pair, Operator::identity(3));
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(metric(r, "A_tested"), 1.0, 1e-10);
}

TEST(Characterization, AdversarialWitnessViolatesSampledInequality) {
  const auto e = diagonal();
  const auto r = verify_characterization(e.pair, e.K);
  const Vector f = *r.witness;
  const double a_adv = metric(r, "A_adversarial");
  const Operator s = biframe_operator(e.pair);
  const double kf = norm(adjoint(e.K) * f);
  EXPECT_LT(inner(s * f, f).real(), a_adv * kf * kf - 1e-8);
}

TEST(Characterization, NonCertifyingPairUnmet) {
  const auto e = parseval_orthonormal(2);
  EXPECT_EQ(verify_characterization(e.pair, Operator(2, 2)).verdict, Verdict::HypothesesUnmet);
}

TEST(InvertibleTransform, IdentityCollapses) {
  const auto e = diagonal();
  const auto r = verify_invertible_transform(Operator::identity(2), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(*r.predicted_lower, *r.measured.lower_A, 1e-12);
  EXPECT_NEAR(*r.predicted_upper, r.measured.upper_B, 1e-12);
}

TEST(InvertibleTransform, ScalarPullThrough) {
  const auto e = diagonal();
  const auto r = verify_invertible_transform(Scalar(2.0) * Operator::identity(2), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(*r.measured.lower_A, 4.0 / 3.0, 1e-8);
  EXPECT_NEAR(r.measured.upper_B, 8.0, 1e-8);
  EXPECT_NEAR(*r.measured.lower_A, *r.predicted_lower, 1e-9);
  EXPECT_NEAR(r.measured.upper_B, *r.predicted_upper, 1e-9);
}

TEST(InvertibleTransform, SingularUnmet) {
  const auto e = diagonal();
  const auto r = verify_invertible_transform(Operator::diagonal({1.0, 0.0}), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::HypothesesUnmet);
  EXPECT_FALSE(hypothesis(r, "T_invertible"));
}

TEST(InvertibleTransform, NonCommutingWithSingularKUnmet) {
  const auto e = example_shift_K(4);
  CounterRng rng(35);
  const auto r = verify_invertible_transform(well_conditioned(rng, 4, 10.0), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::HypothesesUnmet);
  EXPECT_FALSE(hypothesis(r, "envelope_validity"));
}

TEST(InvertibleTransform, Sweep50Seeds) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CounterRng rng(1000 + seed);
    const auto d = static_cast<std::size_t>(rng.integer(2, 8));
    const auto e = random_biframe(d, 2 * d, seed);
    const Operator t = well_conditioned(rng, d, 100.0);
    // K = a I + b T commutes with T.
    const Operator k = Scalar(rng.uniform(0.5, 2.0)) * Operator::identity(d) + Scalar(rng.uniform(-0.2, 0.2)) * t;
    const auto r = verify_invertible_transform(t, e.pair, k);
    EXPECT_EQ(r.verdict, Verdict::Confirmed) << "seed " << seed;
  }
}

TEST(RangeTransfer, TEqualsK) {
  const auto e = diagonal();
  const auto r = verify_range_transfer(e.K, e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(metric(r, "alpha_min"), 1.0, 1e-8);
  EXPECT_NEAR(*r.measured.lower_A, 1.0 / 3.0, 1e-8);
}

TEST(RangeTransfer, HalfKQuadruplesA) {
  const auto e = diagonal();
  const auto r = verify_range_transfer(Scalar(0.5) * e.K, e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(metric(r, "alpha_min"), 0.5, 1e-8);
  EXPECT_NEAR(*r.measured.lower_A, 4.0 / 3.0, 1e-8);
}

TEST(RangeTransfer, EscapingRangeUnmet) {
  const auto e = diagonal();
  const auto r = verify_range_transfer(Operator::diagonal({0.0, 1.0}), e.pair, Operator::diagonal({1.0, 0.0}));
  EXPECT_EQ(r.verdict, Verdict::HypothesesUnmet);
  EXPECT_FALSE(hypothesis(r, "range_inclusion"));
}

TEST(RestrictedInvertibility, IdentityK) {
  const auto e = diagonal();
  const auto r = verify_restricted_invertibility(e.pair, Operator::identity(2));
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(metric(r, "compressed_min_eigen"), 2.0 / 3.0, 1e-10);
}

TEST(RestrictedInvertibility, DiagonalExampleEquality) {
  const auto e = diagonal();
  const auto r = verify_restricted_invertibility(e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(*r.predicted_lower, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(metric(r, "compressed_min_eigen"), 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(metric(r, "K_pinv_norm"), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_EQ(metric(r, "compressed_rank"), 2.0);
}

TEST(RestrictedInvertibility, OneDimensionalRange) {
  const auto e = diagonal();
  const auto r = verify_restricted_invertibility(e.pair, Operator::diagonal({1.0, 0.0}));
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_EQ(metric(r, "range_dim"), 1.0);
  EXPECT_NEAR(metric(r, "compressed_min_singular"), 2.0, 1e-10);
}

TEST(Surjectivity, InvertibleConfirmed) {
  const auto e = diagonal();
  const auto r = verify_surjectivity_necessity(Scalar(2.0) * Operator::identity(2), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_FALSE(r.vacuous);
}

TEST(Surjectivity, SingularVacuous) {
  const auto e = diagonal();
  const auto r = verify_surjectivity_necessity(Operator::diagonal({1.0, 0.0}), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_TRUE(r.vacuous);
  EXPECT_FALSE(r.measured.is_k_biframe);
}

TEST(Surjectivity, Sweep50Seeds) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CounterRng rng(2000 + seed);
    const auto d = static_cast<std::size_t>(rng.integer(2, 8));
    const auto e = random_biframe(d, 2 * d, seed);
    const Operator t = mixed_transform(rng, d, seed % 2 == 0);
    const auto r = verify_surjectivity_necessity(t, e.pair, random_matrix(rng, d, d));
    EXPECT_NE(r.verdict, Verdict::Violated) << "seed " << seed;
  }
}

TEST(CommutingTransform, Identity) {
  const auto e = diagonal();
  EXPECT_EQ(verify_commuting_transform(Operator::identity(2), e.pair, e.K).verdict, Verdict::Confirmed);
}

TEST(CommutingTransform, ScalarEquality) {
  const auto e = diagonal();
  const auto r = verify_commuting_transform(Scalar(3.0) * Operator::identity(2), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(*r.measured.lower_A, 3.0, 1e-9 * 3);
  EXPECT_NEAR(*r.predicted_lower, 3.0, 1e-9 * 3);
  EXPECT_NEAR(r.measured.upper_B, 18.0, 1e-9 * 18);
}

TEST(CommutingTransform, ProjectorWithDiagonalK) {
  const auto e = diagonal();
  const auto r = verify_commuting_transform(Operator::diagonal({1.0, 0.0}), e.pair, Operator::diagonal({2.0, 0.5}));
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_EQ(metric(r, "sampled_failures"), 0.0);
}

TEST(CommutingTransform, NonCommutingUnmet) {
  const auto e = diagonal();
  const auto r = verify_commuting_transform(Operator{{1.0, 1.0}, {0.0, 1.0}}, e.pair, Operator::diagonal({2.0, 1.0}));
  EXPECT_EQ(r.verdict, Verdict::HypothesesUnmet);
  EXPECT_FALSE(hypothesis(r, "T_commutes_with_K"));
}

TEST(TwoSided, InvertibleConfirmed) {
  const auto e = diagonal();
  const auto r = verify_two_sided_invertibility(rotation(0.3), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_FALSE(r.vacuous);
}

TEST(TwoSided, SingularVacuous) {
  const auto e = diagonal();
  const auto r = verify_two_sided_invertibility(Operator::diagonal({1.0, 0.0}), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_TRUE(r.vacuous);
}

TEST(TwoSided, Sweep50Seeds) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CounterRng rng(3000 + seed);
    const auto d = static_cast<std::size_t>(rng.integer(2, 8));
    const auto e = random_biframe(d, 2 * d, seed);
    const Operator t = mixed_transform(rng, d, seed % 3 == 0);
    const auto r = verify_two_sided_invertibility(t, e.pair, random_matrix(rng, d, d));
    EXPECT_NE(r.verdict, Verdict::Violated) << "seed " << seed;
  }
}

TEST(Coisometry, Identity) {
  const auto e = diagonal();
  const auto r = verify_coisometry_transform(Operator::identity(2), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_NEAR(*r.measured.lower_A, 1.0 / 3.0, 1e-8);
}

TEST(Coisometry, RotationWithScalarK) {
  const auto e = diagonal();
  const auto r = verify_coisometry_transform(rotation(0.7), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_GE(*r.measured.lower_A, 1.0 / 3.0 - 1e-9);
  EXPECT_LE(r.measured.upper_B, 2.0 + 1e-9);
}

TEST(Coisometry, NonCoisometryUnmet) {
  const auto e = diagonal();
  const auto r = verify_coisometry_transform(Operator::diagonal({2.0, 1.0}), e.pair, e.K);
  EXPECT_EQ(r.verdict, Verdict::HypothesesUnmet);
  EXPECT_FALSE(hypothesis(r, "T_coisometry"));
}

TEST(AllVerifiers, NeverViolatedOnRandomSweep) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CounterRng rng(4000 + seed);
    const auto d = static_cast<std::size_t>(rng.integer(2, 8));
    const auto e = random_biframe(d, 2 * d, seed);
    const Operator t = seed % 2 ? well_conditioned(rng, d, 20.0) : random_unitary(rng, d);
    const Operator k = Scalar(rng.uniform(0.5, 2.0)) * Operator::identity(d);
    VerifyOptions opt;
    opt.samples = 100;
    opt.seed = seed;
    for (TheoremId id : kAllTheorems) {
      const auto r = verify(id, t, e.pair, k, opt);
      EXPECT_NE(r.verdict, Verdict::Violated) << to_string(id) << " seed " << seed;
    }
  }
}

TEST(AllVerifiers, DeterministicGivenSeed) {
  const auto e = random_biframe(4, 8, 9);
  VerifyOptions opt;
  opt.seed = 17;
  const auto a = verify_characterization(e.pair, Operator::identity(4), opt);
  const auto b = verify_characterization(e.pair, Operator::identity(4), opt);
  ASSERT_EQ(a.metrics.size(), b.metrics.size());
  for (std::size_t i = 0; i < a.metrics.size(); ++i) EXPECT_EQ(a.metrics[i].value, b.metrics[i].value);
}

TEST(AllVerifiers, RejectWrongTransformShape) {
  const auto e = diagonal();
  EXPECT_THROW(verify_coisometry_transform(Operator::identity(3), e.pair, e.K), Error);
}
