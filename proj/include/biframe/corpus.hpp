#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biframe/frames.hpp"
#include "biframe/measure.hpp"

namespace biframe {

/// A value the entry must reproduce. Quantities:
///   A, B                      certificate of (X, Y) under K
///   SXX_lower, SXX_upper      frame bounds of X
///   SYY_lower, SYY_upper      frame bounds of Y
///   SXY_lower, SXY_upper      spectral extremes of Herm(S_{X,Y})
struct Expectation {
  std::string quantity;
  double value = 0.0;
  double tolerance = 0.0;
  std::string source;  // how the value was obtained
};

/// A bound asserted for the example elsewhere that the computation does not bear out.
struct ClaimedBound {
  std::string quantity;
  double claimed = 0.0;
  bool reproducible = false;
  std::string note;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  BiframePair pair;
  Operator K;
  std::vector<Expectation> expected;
  std::vector<ClaimedBound> claims;
};

inline constexpr std::size_t kDefaultShiftDim = 16;

/// Sequence example on d + 2 unit atoms:
///   X = (e1, e1, e1, e2, ..., ed), Y = (0, e1, e1, e2, ..., ed),
///   K e1 = K e2 = K e3 = e1, K e_j = e_{j-2} for j >= 4.
/// Throws DimensionTooSmall for d < 4.
CorpusEntry example_shift_K(std::size_t d = kDefaultShiftDim);

/// Diagonal 2x2 matrices on [0, 1], stored as their diagonals:
///   X(w) = (2w, 1 - w), Y(w) = (3w, w + 1), K = sqrt(2) I.
CorpusEntry example_diagonal_interval(int panels = 16, QuadratureRule rule = QuadratureRule::Gauss2);

/// X = Y = standard basis on d unit atoms, K = I.
CorpusEntry parseval_orthonormal(std::size_t d);

/// Seeded random pair with Y = M X node-wise.
///
/// X: complex Gaussian samples scaled by 1/sqrt(n), redrawn until cond(S_XX) <= 100.
/// Weights: uniform on [0.5, 1.5].
/// M = V diag(m) V^*, V the eigenbasis of S_XX, m_i = c0 * conditioning^{u_i}, c0 in [0.5, 2],
/// u_i in [0, 1]. M commutes with S_XX, so S = M S_XX is Hermitian positive definite.
/// K = I. Throws InvalidConfig unless d >= 1, n_nodes >= d and conditioning >= 1.
CorpusEntry random_biframe(std::size_t d, std::size_t n_nodes, std::uint64_t seed, double conditioning = 10.0);

/// Parameters for addressing entries by name; unset fields take each entry's defaults.
struct CorpusParams {
  std::optional<std::size_t> d;
  std::optional<int> panels;
  std::optional<QuadratureRule> rule;
  std::optional<std::size_t> n_nodes;
  std::optional<std::uint64_t> seed;
  std::optional<double> conditioning;
};

std::vector<std::string> corpus_names();
/// Throws UnknownCorpusEntry.
CorpusEntry corpus_entry(std::string_view name, const CorpusParams& params = {});

/// Computes one of the Expectation quantities for the entry.
double measure_quantity(const CorpusEntry& e, std::string_view quantity,
                        const CertificateTolerances& tol = {});

struct ExpectationResult {
  Expectation expected;
  double measured = 0.0;
  bool ok = false;
};

std::vector<ExpectationResult> check_expectations(const CorpusEntry& e, const CertificateTolerances& tol = {});

}  // namespace biframe
