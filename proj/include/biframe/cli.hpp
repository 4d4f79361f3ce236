#pragma once

// Problem documents and run reports for the biframe_lab front-end.
// The document format is JSON; docs/spec_schema.md describes it.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biframe/corpus.hpp"
#include "biframe/theorems.hpp"

namespace biframe::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolName = "biframe_lab";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "BIFRAME_LAB_SEED";

struct MeasureDesc {
  MeasureSpace::Kind kind = MeasureSpace::Kind::Interval;
  double a = 0.0;
  double b = 1.0;
  int panels = 16;
  QuadratureRule rule = QuadratureRule::Gauss2;
  std::vector<double> weights;
  int channels = 1;

  friend bool operator==(const MeasureDesc&, const MeasureDesc&) = default;
};

/// Explicit per-node vectors, or a builtin family:
///   standard_basis       node i -> e_{i mod dim}
///   polynomial           X(w)_j = sum_k c[j][k] w^k
///   diagonal_polynomial  atom c of node w -> (sum_k c[c][k] w^k) e_c; needs channels == dim
struct FieldDesc {
  std::string family;  // "vectors", "standard_basis", "polynomial", "diagonal_polynomial"
  std::vector<Vector> vectors;
  std::size_t dim = 0;
  std::vector<std::vector<double>> coefficients;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

/// Operator given as a matrix, a scaled identity, a diagonal, or the shift example's K.
struct OperatorDesc {
  std::string form;  // "matrix", "identity_scaled", "diagonal", "shift_K"
  Operator matrix;
  Scalar scale{1.0, 0.0};
  std::vector<Scalar> diagonal;
  std::size_t dim = 0;  // 0: inferred from the fields

  friend bool operator==(const OperatorDesc&, const OperatorDesc&) = default;
};

struct CorpusRef {
  std::string name;
  CorpusParams params;

  friend bool operator==(const CorpusRef& l, const CorpusRef& r) {
    return l.name == r.name && l.params.d == r.params.d && l.params.panels == r.params.panels &&
           l.params.rule == r.params.rule && l.params.n_nodes == r.params.n_nodes && l.params.seed == r.params.seed &&
           l.params.conditioning == r.params.conditioning;
  }
};

struct RunOptions {
  double hypothesis_tol = 1e-9;
  double conclusion_tol = 1e-7;
  double psd_tol = kBisectionPsdTol;
  double rank_tol = kDefaultRankTol;
  double sample_slack = 1e-8;
  std::size_t samples = 500;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

/// Bounds the document asserts; a mismatch makes the run fail like a violated verdict.
struct ExpectDesc {
  std::optional<double> a;
  std::optional<double> b;
  double tolerance = 1e-9;

  friend bool operator==(const ExpectDesc&, const ExpectDesc&) = default;
};

struct ProblemSpec {
  int schema_version = kSchemaVersion;
  std::optional<CorpusRef> corpus;
  std::optional<MeasureDesc> measure;
  std::optional<FieldDesc> x;
  std::optional<FieldDesc> y;
  std::optional<OperatorDesc> k;
  std::optional<OperatorDesc> t;
  std::optional<ExpectDesc> expect;
  RunOptions options;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Throws ParseError (malformed text, with line/column) or SchemaError (with a JSON pointer).
ProblemSpec parse_spec(std::string_view text);
/// Canonical document: fixed key order, defaults spelled out, 2-space indent.
std::string serialize_spec(const ProblemSpec& spec);
/// serialize_spec(parse_spec(text)).
std::string normalize_spec(std::string_view text);

/// Command-line overrides, applied on top of the document.
struct Overrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> panels;
};

/// Seed precedence: override, document, BIFRAME_LAB_SEED, then 1. Throws InvalidConfig on a
/// malformed environment value.
std::uint64_t resolve_seed(const ProblemSpec& spec, const Overrides& ov);
ProblemSpec apply_overrides(ProblemSpec spec, const Overrides& ov);

struct Problem {
  CorpusEntry entry;  // name "custom" for documents without a corpus reference
  Operator t;
};

/// `seed` feeds random corpus entries that do not fix their own seed.
Problem build_problem(const ProblemSpec& spec, std::uint64_t seed = 1);

struct ClaimCheck {
  ClaimedBound claim;
  double measured = 0.0;
  bool reproducible = false;
  Witness witness;  // at the claimed value
};

struct Timing {
  double elapsed_seconds = 0.0;
  std::string timestamp;
};

struct RunReport {
  std::string tool = std::string(kToolName);
  std::string version = std::string(kToolVersion);
  std::string command;
  ProblemSpec input;
  std::uint64_t seed = 1;
  int threads = 1;
  BoundCertificate certificate;
  std::vector<ExpectationResult> expectations;
  std::vector<ClaimCheck> claims;
  std::vector<VerificationReport> verifications;
  Timing timing;
};

VerifyOptions verify_options(const ProblemSpec& spec, std::uint64_t seed);

/// Certificate, corpus expectations and claim checks.
RunReport run_certificate(const ProblemSpec& spec, const Overrides& ov = {});
/// run_certificate plus one report per selected theorem, in selection order. Verifiers run
/// concurrently. Throws UnknownTheoremId.
RunReport run_verifiers(const ProblemSpec& spec, const std::vector<TheoremId>& selection, const Overrides& ov = {});
/// Accepts "all" or a comma/space separated list of ids.
std::vector<TheoremId> parse_selection(const std::vector<std::string>& items);

/// 0: every verdict confirmed or hypotheses_unmet and every expectation met; 2 otherwise.
int exit_status(const RunReport& r);

/// Numbers rounded to 12 significant digits; stable key order; timing last.
std::string to_machine(const RunReport& r);
RunReport from_machine(std::string_view text);
/// Machine document with the timing object removed.
std::string deterministic_part(std::string_view machine_text);
std::string to_human(const RunReport& r);

double round12(double x);

}  // namespace biframe::cli
