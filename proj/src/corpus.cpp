#include "biframe/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "biframe/error.hpp"
#include "biframe/kernels.hpp"
#include "biframe/rng.hpp"

namespace biframe {

namespace {

constexpr std::uint64_t kDrawTag = 0x5851F42D4C957F2DULL;
constexpr int kMaxDraws = 64;
constexpr double kMinFieldConditioning = 1e-2;

std::vector<double> unit_weights(std::size_t n) { return std::vector<double>(n, 1.0); }

FrameBounds spectral_extremes(const Operator& s) {
  const auto eig = hermitian_eigen(hermitian_part(s), 0.0);
  return {eig.eigenvalues.front(), eig.eigenvalues.back()};
}

}  // namespace

CorpusEntry example_shift_K(std::size_t d) {
  if (d < 4) throw Error(ErrorCode::DimensionTooSmall, "example_shift_K needs d >= 4, got " + std::to_string(d));
  const Vector zero(d);
  const Vector e1 = Vector::basis(d, 0);

  std::vector<Vector> x{e1, e1, e1};
  std::vector<Vector> y{zero, e1, e1};
  for (std::size_t j = 1; j < d; ++j) {
    x.push_back(Vector::basis(d, j));
    y.push_back(Vector::basis(d, j));
  }

  std::vector<Vector> k_cols{e1, e1, e1};
  for (std::size_t j = 3; j < d; ++j) k_cols.push_back(Vector::basis(d, j - 2));

  const auto w = unit_weights(d + 2);
  CorpusEntry e{
      "example_shift_K",
      "sequence example truncated to d = " + std::to_string(d),
      BiframePair(VectorField(d, std::move(x)), VectorField(d, std::move(y)), discrete_measure(w)),
      Operator::from_columns(k_cols),
      {},
      {},
  };
  e.expected = {
      {"SXX_lower", 1.0, 1e-10, "S_XX = I + 2 P_e1"},
      {"SXX_upper", 3.0, 1e-10, "S_XX = I + 2 P_e1"},
      {"SYY_lower", 1.0, 1e-10, "S_YY = I + P_e1"},
      {"SYY_upper", 2.0, 1e-10, "S_YY = I + P_e1"},
      {"SXY_lower", 1.0, 1e-10, "S_XY = I + P_e1"},
      {"SXY_upper", 2.0, 1e-10, "S_XY = I + P_e1"},
      {"A", 2.0 / 3.0, 1e-9, "on span{e1}: <S e1, e1> = 2 against ||K^* e1||^2 = 3"},
      {"B", 2.0, 1e-10, "largest eigenvalue of I + P_e1"},
  };
  e.claims = {{"A", 1.0, false, "f = e1 gives ||K^* e1||^2 = 3 > 2 = <S e1, e1>, so A <= 2/3"}};
  return e;
}

CorpusEntry example_diagonal_interval(int panels, QuadratureRule rule) {
  // The pairing <M, N> = M N^t acts entrywise on the diagonal, so each quadrature node splits
  // into one atom per diagonal entry: X = 2w e1 and (1 - w) e2, Y = 3w e1 and (w + 1) e2.
  MeasureSpace m = with_channels(interval_measure(0.0, 1.0, panels, rule), 2);
  std::vector<Vector> x;
  std::vector<Vector> y;
  x.reserve(m.size());
  y.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); i += 2) {
    const double w = m.nodes()[i];
    x.push_back(Vector{2.0 * w, 0.0});
    x.push_back(Vector{0.0, 1.0 - w});
    y.push_back(Vector{3.0 * w, 0.0});
    y.push_back(Vector{0.0, w + 1.0});
  }

  // Both integrands (6w^2 and 1 - w^2) are quadratic: exact for gauss rules, O(h^2) for midpoint.
  const double h = 1.0 / panels;
  const double slack = rule == QuadratureRule::Midpoint ? h * h : 0.0;
  const double s2 = std::sqrt(2.0);
  CorpusEntry e{
      "example_diagonal_interval",
      "diagonal matrices on [0, 1], " + std::to_string(panels) + " " + std::string(to_string(rule)) + " panels",
      BiframePair(VectorField(2, std::move(x)), VectorField(2, std::move(y)), std::move(m)),
      Operator::diagonal({s2, s2}),
      {},
      {},
  };
  e.expected = {
      {"A", 1.0 / 3.0, 1e-8 + slack, "S = diag(2, 2/3) against K K^* = 2 I"},
      {"B", 2.0, 1e-8 + slack, "S = diag(2, 2/3)"},
      {"SXY_lower", 2.0 / 3.0, 1e-10 + slack, "integral of 1 - w^2"},
      {"SXY_upper", 2.0, 1e-10 + slack, "integral of 6 w^2"},
  };
  return e;
}

CorpusEntry parseval_orthonormal(std::size_t d) {
  if (d < 1) throw Error(ErrorCode::DimensionTooSmall, "parseval_orthonormal needs d >= 1");
  std::vector<Vector> basis;
  for (std::size_t j = 0; j < d; ++j) basis.push_back(Vector::basis(d, j));
  CorpusEntry e{
      "parseval_orthonormal",
      "standard basis of C^" + std::to_string(d) + ", K = I",
      BiframePair(VectorField(d, basis), VectorField(d, basis), discrete_measure(unit_weights(d))),
      Operator::identity(d),
      {},
      {},
  };
  e.expected = {{"A", 1.0, 1e-10, "Parseval"}, {"B", 1.0, 1e-10, "Parseval"}};
  return e;
}

CorpusEntry random_biframe(std::size_t d, std::size_t n_nodes, std::uint64_t seed, double conditioning) {
  if (d < 1) throw Error(ErrorCode::InvalidConfig, "random_biframe needs d >= 1");
  if (n_nodes < d) throw Error(ErrorCode::InvalidConfig, "random_biframe needs n_nodes >= d");
  if (!(conditioning >= 1.0) || !std::isfinite(conditioning)) {
    throw Error(ErrorCode::InvalidConfig, "conditioning must be a finite number >= 1");
  }

  const CounterRng root(seed);
  CounterRng shape = root.split(0);
  std::vector<double> weights(n_nodes);
  for (double& w : weights) w = shape.uniform(0.5, 1.5);
  const MeasureSpace m = discrete_measure(weights);

  const double scale = 1.0 / std::sqrt(static_cast<double>(n_nodes));
  std::vector<Vector> x;
  EigenDecomposition sxx;
  for (int draw = 0;; ++draw) {
    if (draw == kMaxDraws) throw Error(ErrorCode::InvalidConfig, "could not draw a well-conditioned field");
    CounterRng rng = root.split(kDrawTag + static_cast<std::uint64_t>(draw));
    x.assign(n_nodes, Vector(d));
    for (auto& v : x)
      for (std::size_t i = 0; i < d; ++i) v[i] = scale * Scalar(rng.normal(), rng.normal());
    sxx = hermitian_eigen(hermitian_part(kernels::omp::assemble_biframe(x, x, weights, d)), 0.0);
    if (sxx.eigenvalues.front() >= kMinFieldConditioning * sxx.eigenvalues.back()) break;
  }

  std::vector<double> mult(d);
  const double c0 = shape.uniform(0.5, 2.0);
  for (double& mi : mult) mi = c0 * std::pow(conditioning, shape.uniform());
  Operator mm(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vector v = sxx.eigenvectors.column(i);
    mm += Scalar(mult[i]) * Operator::outer(v, v);
  }
  mm = hermitian_part(mm);

  std::vector<Vector> y;
  y.reserve(n_nodes);
  for (const auto& v : x) y.push_back(mm * v);

  double a = INFINITY;
  double b = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    a = std::min(a, mult[i] * sxx.eigenvalues[i]);
    b = std::max(b, mult[i] * sxx.eigenvalues[i]);
  }

  CorpusEntry e{
      "random_biframe",
      "d = " + std::to_string(d) + ", n = " + std::to_string(n_nodes) + ", seed = " + std::to_string(seed),
      BiframePair(VectorField(d, std::move(x)), VectorField(d, std::move(y)), m),
      Operator::identity(d),
      {},
      {},
  };
  e.expected = {
      {"A", a, 1e-8 * std::max(1.0, b), "min_i m_i lambda_i(S_XX)"},
      {"B", b, 1e-8 * std::max(1.0, b), "max_i m_i lambda_i(S_XX)"},
  };
  return e;
}

std::vector<std::string> corpus_names() {
  return {"example_diagonal_interval", "example_shift_K", "parseval_orthonormal", "random_biframe"};
}

CorpusEntry corpus_entry(std::string_view name, const CorpusParams& p) {
  if (name == "example_shift_K") return example_shift_K(p.d.value_or(kDefaultShiftDim));
  if (name == "example_diagonal_interval") {
    return example_diagonal_interval(p.panels.value_or(16), p.rule.value_or(QuadratureRule::Gauss2));
  }
  if (name == "parseval_orthonormal") return parseval_orthonormal(p.d.value_or(4));
  if (name == "random_biframe") {
    const std::size_t d = p.d.value_or(4);
    return random_biframe(d, p.n_nodes.value_or(2 * d), p.seed.value_or(1), p.conditioning.value_or(10.0));
  }
  throw Error(ErrorCode::UnknownCorpusEntry, "'" + std::string(name) + "'");
}

double measure_quantity(const CorpusEntry& e, std::string_view q, const CertificateTolerances& tol) {
  const auto& p = e.pair;
  if (q == "A" || q == "B") {
    const auto cert = check_k_biframe(p, e.K, tol);
    if (q == "B") return cert.upper_B;
    return cert.lower_A.value_or(0.0);
  }
  if (q == "SXX_lower" || q == "SXX_upper") {
    const auto fb = frame_bounds(p.x, p.measure);
    return q == "SXX_lower" ? fb.lower : fb.upper;
  }
  if (q == "SYY_lower" || q == "SYY_upper") {
    const auto fb = frame_bounds(p.y, p.measure);
    return q == "SYY_lower" ? fb.lower : fb.upper;
  }
  if (q == "SXY_lower" || q == "SXY_upper") {
    const auto fb = spectral_extremes(biframe_operator(p));
    return q == "SXY_lower" ? fb.lower : fb.upper;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown quantity '" + std::string(q) + "'");
}

std::vector<ExpectationResult> check_expectations(const CorpusEntry& e, const CertificateTolerances& tol) {
  std::vector<ExpectationResult> out;
  for (const auto& ex : e.expected) {
    const double v = measure_quantity(e, ex.quantity, tol);
    out.push_back({ex, v, std::abs(v - ex.value) <= ex.tolerance});
  }
  return out;
}

}  // namespace biframe
