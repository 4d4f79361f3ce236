#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "biframe/error.hpp"
#include "biframe/linalg.hpp"
#include "support.hpp"

using namespace biframe;
using namespace biframe::testing;

namespace {

const Scalar I{0.0, 1.0};

double residual(const Operator& a, const Operator& b) { return operator_norm(a - b); }

}  // namespace

TEST(Adjoint, RealDiagonalIsFixed) {
  const Operator d = Operator::diagonal({2.0, 2.0 / 3.0});
  EXPECT_EQ(adjoint(d), d);
}

TEST(Adjoint, TransposesRealMatrix) {
  EXPECT_EQ(adjoint(Operator{{0.0, 1.0}, {0.0, 0.0}}), (Operator{{0.0, 0.0}, {1.0, 0.0}}));
}

TEST(Adjoint, ConjugatesScalar) { EXPECT_EQ(adjoint(Operator{{I}}), (Operator{{-I}})); }

TEST(Adjoint, InvolutionAndAntiMultiplicativeExactly) {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = random_matrix(rng, 3, 5);
    const Operator b = random_matrix(rng, 5, 4);
    EXPECT_EQ(adjoint(adjoint(a)), a);
    // Each entry of (AB)^* and B^* A^* is the same sum of conjugated products in the same order.
    EXPECT_EQ(adjoint(a * b), adjoint(b) * adjoint(a));
  }
}

TEST(HermitianEigen, IdentityHasUnitSpectrum) {
  const auto e = hermitian_eigen(Operator::identity(3));
  for (double l : e.eigenvalues) EXPECT_DOUBLE_EQ(l, 1.0);
}

TEST(HermitianEigen, DiagonalSortedAscending) {
  const auto e = hermitian_eigen(Operator::diagonal({2.0, 2.0 / 3.0}));
  EXPECT_NEAR(e.eigenvalues[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], 2.0, 1e-15);
}

TEST(HermitianEigen, RealSymmetric2x2MatchesQuadraticFormula) {
  CounterRng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = rng.normal();
    const double b = rng.normal();
    const double d = rng.normal();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), b);
    const auto e = hermitian_eigen(Operator{{a, b}, {b, d}});
    EXPECT_NEAR(e.eigenvalues[0], mean - radius, 1e-13);
    EXPECT_NEAR(e.eigenvalues[1], mean + radius, 1e-13);
  }
}

TEST(HermitianEigen, EigenpairsAndUnitarity) {
  CounterRng rng(3);
  for (std::size_t n = 1; n <= 16; ++n) {
    const Operator h = random_hermitian(rng, n);
    const auto e = hermitian_eigen(h);
    const double scale = std::max(1.0, operator_norm(h));
    for (std::size_t k = 0; k < n; ++k) {
      const Vector v = e.eigenvectors.column(k);
      EXPECT_LE(norm(h * v - Scalar(e.eigenvalues[k]) * v), 1e-12 * scale);
    }
    EXPECT_LE(residual(adjoint(e.eigenvectors) * e.eigenvectors, Operator::identity(n)), 1e-12);
    for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.eigenvalues[k - 1], e.eigenvalues[k]);
  }
}

TEST(HermitianEigen, SpectralReconstructionUpTo16) {
  CounterRng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 15));
    const Operator h = Scalar(std::pow(10.0, rng.uniform(-3, 3))) * random_hermitian(rng, n);
    const auto e = hermitian_eigen(h);
    const Operator rebuilt =
        e.eigenvectors * Operator::diagonal(std::vector<Scalar>(e.eigenvalues.begin(), e.eigenvalues.end())) *
        adjoint(e.eigenvectors);
    EXPECT_LE(residual(rebuilt, h), 1e-8 * std::max(1.0, operator_norm(h)));
  }
}

TEST(HermitianEigen, RejectsNonHermitian) {
  try {
    hermitian_eigen(Operator{{0.0, 1.0}, {0.0, 0.0}});
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(HermitianEigen, ToleratesSmallAsymmetryWithinTol) {
  const Operator t{{1.0, 1e-12}, {0.0, 2.0}};
  EXPECT_NO_THROW(hermitian_eigen(t, 1e-9));
}

TEST(HermitianEigen, RejectsNonSquareAndNonFinite) {
  try {
    hermitian_eigen(Operator(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  Operator bad = Operator::identity(2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    hermitian_eigen(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(HermitianEigen, ComplexHermitian2x2) {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  const auto e = hermitian_eigen(Operator{{2.0, I}, {-I, 2.0}});
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues[1], 3.0, 1e-14);
}

TEST(SingularValues, Identity) {
  const auto s = singular_values(Operator::identity(2));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 1.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0, 1e-15);
}

TEST(SingularValues, AbsoluteValuesOfDiagonalDescending) {
  const auto s = singular_values(Operator::diagonal({3.0, -4.0}));
  EXPECT_NEAR(s[0], 4.0, 1e-14);
  EXPECT_NEAR(s[1], 3.0, 1e-14);
}

TEST(SingularValues, Random3x2AgainstGramEigenvalues) {
  CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Operator t = random_matrix(rng, 3, 2);
    const auto s = singular_values(t);
    const auto g = hermitian_eigen(hermitian_part(adjoint(t) * t));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s[0] * s[0], g.eigenvalues[1], 1e-10 * g.eigenvalues[1]);
    EXPECT_NEAR(s[1] * s[1], g.eigenvalues[0], 1e-10 * g.eigenvalues[1]);
  }
}

TEST(SingularValues, SmallSingularValuesKeptAccurately) {
  CounterRng rng(6);
  const Operator t = with_singular_values(rng, 4, 4, {1.0, 1e-3, 1e-6, 1e-9});
  const auto s = singular_values(t);
  EXPECT_NEAR(s[3] / 1e-9, 1.0, 1e-4);
  EXPECT_NEAR(s[2] / 1e-6, 1.0, 1e-8);
}

TEST(SingularSystem, ReconstructsRectangular) {
  CounterRng rng(7);
  for (auto [r, c] : {std::pair{2, 5}, std::pair{5, 2}, std::pair{4, 4}}) {
    const Operator t = random_matrix(rng, r, c);
    const auto svd = singular_system(t);
    Operator sigma(svd.values.size(), svd.values.size());
    for (std::size_t k = 0; k < svd.values.size(); ++k) sigma(k, k) = svd.values[k];
    EXPECT_LE(residual(svd.left * sigma * adjoint(svd.right), t), 1e-12 * operator_norm(t));
  }
}

TEST(OperatorNorm, IdentityAndScaledIdentity) {
  EXPECT_NEAR(operator_norm(Operator::identity(4)), 1.0, 1e-15);
  EXPECT_NEAR(operator_norm(Scalar(std::sqrt(2.0)) * Operator::identity(2)), std::sqrt(2.0), 1e-15);
}

TEST(OperatorNorm, MatchesPowerIteration) {
  CounterRng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Operator t = random_matrix(rng, 3, 3);
    EXPECT_NEAR(operator_norm(t), power_norm(t), 1e-8 * power_norm(t));
  }
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(Operator::identity(3)), 3u);
  EXPECT_EQ(numerical_rank(Operator::diagonal({1.0, 0.0})), 1u);
  EXPECT_EQ(numerical_rank(Operator::outer(Vector{1.0, 2.0, I}, Vector{3.0, -1.0})), 1u);
  EXPECT_EQ(numerical_rank(Operator(3, 3)), 0u);
}

TEST(NumericalRank, RespectsRelativeCutoff) {
  CounterRng rng(9);
  const Operator t = with_singular_values(rng, 5, 5, {2.0, 1.0, 1e-5, 1e-13, 0.0});
  EXPECT_EQ(numerical_rank(t, 1e-10), 3u);
  EXPECT_EQ(numerical_rank(t, 1e-4), 2u);
}

TEST(MoorePenrose, InvertibleDiagonalIsInverse) {
  const Operator p = moore_penrose(Operator::diagonal({2.0, 0.5}));
  EXPECT_LE(residual(p, Operator::diagonal({0.5, 2.0})), 1e-14);
}

TEST(MoorePenrose, ProjectorIsFixed) {
  EXPECT_LE(residual(moore_penrose(Operator::diagonal({1.0, 0.0})), Operator::diagonal({1.0, 0.0})), 1e-14);
}

TEST(MoorePenrose, UnitOuterProductInvertsToSwappedOuter) {
  CounterRng rng(10);
  Vector u = random_vector(rng, 3);
  Vector v = random_vector(rng, 4);
  u *= 1.0 / norm(u);
  v *= 1.0 / norm(v);
  const Operator t = Operator::outer(u, v);
  const Operator p = moore_penrose(t);
  EXPECT_LE(residual(p, Operator::outer(v, u)), 1e-13);
  EXPECT_LE(residual(t * p * t, t), 1e-13);
  EXPECT_LE(residual(p * t * p, p), 1e-13);
  EXPECT_LE(residual(adjoint(t * p), t * p), 1e-13);
  EXPECT_LE(residual(adjoint(p * t), p * t), 1e-13);
}

TEST(MoorePenrose, ZeroMapsToZero) {
  const Operator p = moore_penrose(Operator(2, 3));
  EXPECT_EQ(p.rows(), 3u);
  EXPECT_EQ(p.cols(), 2u);
  EXPECT_EQ(max_abs(p), 0.0);
}

TEST(MoorePenrose, PenroseSuite200Instances) {
  CounterRng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(rng.integer(1, 8));
    const auto c = static_cast<std::size_t>(rng.integer(1, 8));
    const std::size_t m = std::min(r, c);
    std::vector<double> s(m);
    const auto rank = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(m)));
    for (std::size_t k = 0; k < m; ++k) s[k] = k < rank ? std::pow(10.0, rng.uniform(-1, 1)) : 0.0;
    const Operator t = with_singular_values(rng, r, c, s);
    const Operator p = moore_penrose(t);
    const double scale = std::max(1.0, operator_norm(t));
    EXPECT_LE(residual(t * p * t, t), 1e-8 * scale) << "trial " << trial;
    EXPECT_LE(residual(p * t * p, p), 1e-8 * scale) << "trial " << trial;
    EXPECT_LE(residual(adjoint(t * p), t * p), 1e-8 * scale) << "trial " << trial;
    EXPECT_LE(residual(adjoint(p * t), p * t), 1e-8 * scale) << "trial " << trial;
  }
}

TEST(RangeProjector, Examples) {
  CounterRng rng(13);
  const Operator t = random_matrix(rng, 3, 3);
  EXPECT_LE(residual(range_projector(t), Operator::identity(3)), 1e-12);
  EXPECT_LE(residual(range_projector(Operator::diagonal({1.0, 0.0})), Operator::diagonal({1.0, 0.0})), 1e-14);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_LE(residual(range_projector(Operator{{h}, {h}}), Operator{{0.5, 0.5}, {0.5, 0.5}}), 1e-14);
}

TEST(RangeProjector, IdempotentAndHermitian) {
  CounterRng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = static_cast<std::size_t>(rng.integer(1, 8));
    const auto c = static_cast<std::size_t>(rng.integer(1, 8));
    const Operator p = range_projector(with_singular_values(rng, r, c, {3.0, 1.0, 0.0, 0.2}));
    EXPECT_LE(residual(p * p, p), 1e-8);
    EXPECT_LE(residual(p, adjoint(p)), 1e-8);
  }
}

TEST(IsPsd, Examples) {
  EXPECT_TRUE(is_psd(Operator::identity(3)));
  const Operator s = Operator::diagonal({2.0, 2.0 / 3.0});
  EXPECT_TRUE(is_psd(s - Scalar(1.0 / 3.0) * Operator::diagonal({2.0, 2.0})));
  EXPECT_FALSE(is_psd(s - Scalar(1.0 / 3.0 + 1e-3) * Operator::diagonal({2.0, 2.0})));
}

TEST(IsPsd, UsesHermitianPartOfNonHermitianInput) {
  // Herm([[1, 4], [0, 1]]) = [[1, 2], [2, 1]] has eigenvalue -1.
  EXPECT_FALSE(is_psd(Operator{{1.0, 4.0}, {0.0, 1.0}}));
  // Herm([[1, i], [i, 1]]) = I.
  EXPECT_TRUE(is_psd(Operator{{1.0, I}, {I, 1.0}}));
}

TEST(IsPsd, BothSignsImplySmallHermitianPart) {
  CounterRng rng(15);
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    const Operator t = Scalar(std::pow(10.0, rng.uniform(-12, -7))) * random_matrix(rng, n, n);
    if (is_psd(t, tol) && is_psd(Scalar(-1.0) * t, tol)) {
      EXPECT_LE(operator_norm(hermitian_part(t)), 2.0 * tol * std::max(1.0, operator_norm(t)));
    }
  }
}

TEST(IsCoisometry, Examples) {
  EXPECT_TRUE(is_coisometry(Operator::identity(3)));
  const double th = 0.7;
  EXPECT_TRUE(is_coisometry(Operator{{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}}));
  EXPECT_FALSE(is_coisometry(Operator::diagonal({2.0, 1.0})));
}

TEST(Errors, DimensionMismatchOnProducts) {
  try {
    (void)(Operator(2, 3) * Operator(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  try {
    (void)inner(Vector(2), Vector(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Errors, RequireFiniteRejectsInfinity) {
  Vector v{1.0, std::numeric_limits<double>::infinity()};
  try {
    require_finite(v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Inner, LinearInFirstSlot) {
  const Vector a{1.0, I};
  const Vector b{I, 1.0};
  EXPECT_EQ(inner(Scalar(0.0, 2.0) * a, b), Scalar(0.0, 2.0) * inner(a, b));
  EXPECT_EQ(inner(a, b), std::conj(inner(b, a)));
}
