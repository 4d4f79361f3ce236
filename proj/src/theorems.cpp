#include "biframe/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "biframe/error.hpp"
#include "biframe/kernels.hpp"
#include "biframe/rng.hpp"

namespace biframe {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double rel_slack(double tol, double reference) { return tol * std::max(1.0, std::abs(reference)); }

/// Lower envelope check against a clamped certificate: lower_A = min(a_sup, B).
bool lower_within(const BoundCertificate& measured, double predicted, double tol) {
  if (!measured.lower_A) return false;
  const double target = std::min(predicted, measured.upper_B);
  return *measured.lower_A >= target - rel_slack(tol, target);
}

bool upper_within(const BoundCertificate& measured, double predicted, double tol) {
  return measured.upper_B <= predicted + rel_slack(tol, predicted);
}

std::vector<Vector> random_unit_vectors(CounterRng& rng, std::size_t dim, std::size_t count) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector f(dim);
    for (std::size_t i = 0; i < dim; ++i) f[i] = Scalar(rng.normal(), rng.normal());
    const double n = norm(f);
    out.push_back(n > 0.0 ? (1.0 / n) * f : Vector::basis(dim, 0));
  }
  return out;
}

void append_columns(std::vector<Vector>& out, const Operator& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
}

CounterRng stream_for(TheoremId id, const VerifyOptions& opt) {
  return CounterRng(opt.seed).split(static_cast<std::uint64_t>(id) + 1);
}

bool commutes(const Operator& t, const Operator& k, double tol, double* defect_out = nullptr) {
  const double defect = operator_norm(t * k - k * t);
  if (defect_out) *defect_out = defect;
  return defect <= tol * std::max(1.0, operator_norm(t) * operator_norm(k));
}

double smallest_nonzero_singular(const Operator& t, double rank_tol) {
  const auto sv = singular_values(t);
  double m = 0.0;
  for (double s : sv)
    if (!sv.empty() && s > rank_tol * sv.front()) m = s;
  return m;
}

struct Builder {
  VerificationReport r;

  explicit Builder(TheoremId id) { r.theorem_id = id; }

  bool hyp(std::string name, bool ok, std::string detail) {
    r.hypotheses.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  }
  void metric(std::string name, double v) { r.metrics.push_back({std::move(name), v}); }
  void note(std::string n) { r.notes.push_back(std::move(n)); }

  VerificationReport finish_unmet() {
    r.hypotheses_ok = false;
    r.verdict = Verdict::HypothesesUnmet;
    return std::move(r);
  }
  VerificationReport finish(bool ok) {
    r.hypotheses_ok = std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const auto& h) { return h.ok; });
    r.verdict = ok ? Verdict::Confirmed : Verdict::Violated;
    return std::move(r);
  }
  bool all_ok() const {
    return std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const auto& h) { return h.ok; });
  }
};

void require_square_on(const Operator& op, std::size_t dim, const char* name) {
  if (!op.square() || op.rows() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must be " + std::to_string(dim) + "x" +
                                                  std::to_string(dim));
  }
}

bool base_certifies(Builder& b, const BoundCertificate& c) {
  std::string detail = c.degenerate_k ? "K = 0: lower inequality vacuous"
                       : c.lower_A   ? "A=" + num(*c.lower_A) + " B=" + num(c.upper_B) + " defect=" + num(c.realness_defect)
                                     : "no positive lower bound; defect=" + num(c.realness_defect);
  return b.hyp("base_is_k_biframe", c.is_k_biframe, std::move(detail));
}

bool k_full_rank(Builder& b, const Operator& k, const VerifyOptions& opt) {
  const std::size_t rank = numerical_rank(k, opt.rank);
  return b.hyp("K_dense_range", rank == k.rows(),
               "rank(K)=" + std::to_string(rank) + " of " + std::to_string(k.rows()) +
                   " (dense range read as full rank)");
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::Swap: return "swap";
    case TheoremId::Characterization: return "characterization";
    case TheoremId::InvertibleTransform: return "invertible_transform";
    case TheoremId::RangeTransfer: return "range_transfer";
    case TheoremId::RestrictedInvertibility: return "restricted_invertibility";
    case TheoremId::Surjectivity: return "surjectivity";
    case TheoremId::CommutingTransform: return "commuting_transform";
    case TheoremId::TwoSidedInvertibility: return "two_sided_invertibility";
    case TheoremId::Coisometry: return "coisometry";
  }
  return "swap";
}

TheoremId parse_theorem_id(std::string_view name) {
  for (TheoremId id : kAllTheorems)
    if (to_string(id) == name) return id;
  throw Error(ErrorCode::UnknownTheoremId, "'" + std::string(name) + "'");
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Confirmed: return "confirmed";
    case Verdict::Violated: return "violated";
    case Verdict::HypothesesUnmet: return "hypotheses_unmet";
  }
  return "hypotheses_unmet";
}

Verdict parse_verdict(std::string_view name) {
  for (Verdict v : {Verdict::Confirmed, Verdict::Violated, Verdict::HypothesesUnmet})
    if (to_string(v) == name) return v;
  throw Error(ErrorCode::SchemaError, "unknown verdict '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

DouglasFactor douglas_factor(const Operator& t1, const Operator& t2, double rank_tol) {
  if (t1.rows() != t2.rows()) throw Error(ErrorCode::DimensionMismatch, "T1 and T2 must share a codomain");
  const Operator u = moore_penrose(t2, rank_tol) * t1;
  const double residual = operator_norm(t2 * u - t1);
  if (residual > rank_tol * std::max(1.0, operator_norm(t1))) {
    throw Error(ErrorCode::NotFactorable, "R(T1) is not contained in R(T2); residual " + num(residual));
  }

  const Operator g1 = t1 * adjoint(t1);
  const Operator g2 = t2 * adjoint(t2);
  if (max_abs_entry(g1) == 0.0) return DouglasFactor{u, 0.0, residual};

  auto feasible = [&](double alpha) { return is_psd(Scalar(alpha * alpha) * g2 - g1, kBisectionPsdTol); };
  double hi = 1.5 * operator_norm(u) + 1e-300;
  for (int i = 0; i < 200 && !feasible(hi); ++i) hi = 2.0 * hi + 1e-12;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return DouglasFactor{u, hi, residual};
}

// ---------------------------------------------------------------------------

VerificationReport verify_swap(const BiframePair& p, const Operator& k, const VerifyOptions& opt) {
  Builder b(TheoremId::Swap);
  const Operator s = biframe_operator(p);
  const Operator s_swapped = biframe_operator(p.swapped());
  const double gap = operator_norm(s - s_swapped);
  if (!b.hyp("S_xy_equals_S_yx", gap <= rel_slack(opt.hypothesis, operator_norm(s)),
             "||S_XY - S_YX|| = " + num(gap))) {
    return b.finish_unmet();
  }

  const auto c_xy = certify_operator(s, k, opt.certificate());
  const auto c_yx = certify_operator(s_swapped, k, opt.certificate());
  b.r.predicted_lower = c_xy.lower_A;
  b.r.predicted_upper = c_xy.upper_B;
  b.r.measured = c_yx;

  bool ok = c_xy.is_k_biframe == c_yx.is_k_biframe;
  ok = ok && std::abs(c_xy.upper_B - c_yx.upper_B) <= rel_slack(opt.conclusion, c_xy.upper_B);
  if (c_xy.lower_A && c_yx.lower_A) {
    ok = ok && std::abs(*c_xy.lower_A - *c_yx.lower_A) <= rel_slack(opt.conclusion, *c_xy.lower_A);
  } else {
    ok = ok && !c_xy.lower_A && !c_yx.lower_A;
  }
  return b.finish(ok);
}

VerificationReport verify_characterization(const BiframePair& p, const Operator& k, const VerifyOptions& opt) {
  Builder b(TheoremId::Characterization);
  const Operator s = biframe_operator(p);
  const auto cert = certify_operator(s, k, opt.certificate());
  b.r.measured = cert;
  b.hyp("real_quadratic_form", cert.realness_defect <= opt.hypothesis, "defect=" + num(cert.realness_defect));
  base_certifies(b, cert);
  if (!b.all_ok()) return b.finish_unmet();

  const double a = *cert.a_sup;
  const double a_adv = 1.01 * a;
  const Operator h = hermitian_part(s);
  const Operator g = k * adjoint(k);
  const Operator k_adj = adjoint(k);
  b.r.predicted_lower = cert.lower_A;
  b.r.predicted_upper = cert.upper_B;
  b.metric("A_tested", a);
  b.metric("A_adversarial", a_adv);

  // Operator level at A, then at 1.01 A.
  const bool op_at_a = is_psd(h - Scalar(a) * g, opt.psd);
  const bool op_at_adv = is_psd(h - Scalar(a_adv) * g, opt.psd);

  // Definition level: random vectors plus eigenvectors of the operators involved.
  CounterRng rng = stream_for(TheoremId::Characterization, opt);
  auto fs = random_unit_vectors(rng, p.dim(), opt.samples);
  append_columns(fs, hermitian_eigen(h, 0.0).eigenvectors);
  append_columns(fs, hermitian_eigen(g, 0.0).eigenvectors);
  append_columns(fs, hermitian_eigen(h - Scalar(a) * g, 0.0).eigenvectors);
  const auto forms = kernels::omp::quadratic_forms(s, fs);
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double kf = norm(k_adj * fs[i]);
    const double gap = forms[i].real() - a * kf * kf;
    worst = std::min(worst, gap);
    if (gap < -opt.sample_slack * std::pow(norm(fs[i]), 2)) ++failures;
  }
  b.metric("sampled_vectors", static_cast<double>(fs.size()));
  b.metric("sampled_failures_at_A", static_cast<double>(failures));
  b.metric("worst_gap_at_A", worst);

  const Witness w = find_witness(s, k, a_adv);
  const bool witness_violates = w.margin < -opt.sample_slack;
  b.r.witness = w.f;
  b.metric("witness_margin_at_adversarial", w.margin);
  b.metric("witness_k_star_norm_sq", w.k_star_norm_sq);
  b.metric("witness_quadratic_form", w.quadratic_form);

  const bool ok = op_at_a && failures == 0 && !op_at_adv && witness_violates;
  if (!ok) {
    b.note("operator test at A " + std::string(op_at_a ? "passed" : "failed") + ", at 1.01A " +
           (op_at_adv ? "passed" : "failed") + "; sampled failures " + std::to_string(failures) +
           "; witness margin " + num(w.margin));
  }
  return b.finish(ok);
}

VerificationReport verify_invertible_transform(const Operator& t, const BiframePair& p, const Operator& k,
                                               const VerifyOptions& opt) {
  Builder b(TheoremId::InvertibleTransform);
  require_square_on(t, p.dim(), "T");
  const auto sv = singular_values(t);
  const double t_norm = sv.front();
  const double t_min = sv.back();
  const bool invertible = numerical_rank(t, opt.rank) == p.dim() && t_min * (1.0 / opt.rank) >= t_norm;
  b.hyp("T_invertible", invertible, "sigma_max=" + num(t_norm) + " sigma_min=" + num(t_min));

  const Operator s = biframe_operator(p);
  const auto c0 = certify_operator(s, k, opt.certificate());
  b.hyp("real_quadratic_form", c0.realness_defect <= opt.hypothesis, "defect=" + num(c0.realness_defect));

  double comm_defect = 0.0;
  const bool commuting = commutes(t, k, opt.hypothesis, &comm_defect);
  const bool k_full = numerical_rank(k, opt.rank) == p.dim();
  double factor = 1.0;
  if (commuting) {
    b.hyp("envelope_validity", true, "T K = K T (defect " + num(comm_defect) + "); envelope A||(T^-1)^*||^-2, B||T||^2");
  } else if (k_full) {
    const auto ksv = singular_values(k);
    factor = std::pow(ksv.back() / ksv.front(), 2);
    b.hyp("envelope_validity", true,
          "T K != K T (defect " + num(comm_defect) + "); K invertible, envelope scaled by cond(K)^-2 = " + num(factor));
    b.note("the unscaled envelope needs ||K^* T^* f|| = ||T^* K^* f||, which requires T K = K T");
  } else {
    b.hyp("envelope_validity", false,
          "T K != K T (defect " + num(comm_defect) +
              ") and K is rank deficient; the bound transfer ||K^* T^* f|| -> ||T^* K^* f|| has no substitute");
  }
  if (!b.all_ok()) return b.finish_unmet();

  const auto c1 = certify_operator(biframe_operator(p.transformed(t)), k, opt.certificate());
  b.r.measured = c1;
  bool ok = c0.is_k_biframe == c1.is_k_biframe;
  if (!ok) b.note("equivalence failed: base certifies " + std::to_string(c0.is_k_biframe) + ", transformed " +
                  std::to_string(c1.is_k_biframe));

  const double inv_adj_norm = 1.0 / t_min;  // ||(T^-1)^*||
  if (c0.is_k_biframe) {
    const double pl = *c0.lower_A * factor / (inv_adj_norm * inv_adj_norm);
    const double pu = c0.upper_B * t_norm * t_norm;
    b.r.predicted_lower = pl;
    b.r.predicted_upper = pu;
    ok = ok && lower_within(c1, pl, opt.conclusion) && upper_within(c1, pu, opt.conclusion);
  }
  if (c1.is_k_biframe) {
    // (2) => (1): bounds A' ||T^*||^-2 and B' ||(T^-1)^*||^2.
    const double pl = *c1.lower_A * factor / (t_norm * t_norm);
    const double pu = c1.upper_B * inv_adj_norm * inv_adj_norm;
    b.metric("converse_predicted_lower", pl);
    b.metric("converse_predicted_upper", pu);
    ok = ok && lower_within(c0, pl, opt.conclusion) && upper_within(c0, pu, opt.conclusion);
  }
  return b.finish(ok);
}

VerificationReport verify_range_transfer(const Operator& t, const BiframePair& p, const Operator& k,
                                         const VerifyOptions& opt) {
  Builder b(TheoremId::RangeTransfer);
  require_square_on(t, p.dim(), "T");
  const Operator s = biframe_operator(p);
  const auto c0 = certify_operator(s, k, opt.certificate());
  base_certifies(b, c0);
  std::optional<DouglasFactor> factor;
  try {
    factor = douglas_factor(t, k, opt.rank);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFactorable) throw;
  }
  b.hyp("range_inclusion", factor.has_value(),
        factor ? "R(T) in R(K); alpha_min=" + num(factor->alpha_min) : "R(T) escapes R(K)");
  if (factor) b.hyp("T_nonzero", factor->alpha_min > 0.0, "alpha_min=" + num(factor->alpha_min));
  if (!b.all_ok()) return b.finish_unmet();

  const double alpha = factor->alpha_min;
  b.metric("alpha_min", alpha);
  b.metric("douglas_residual", factor->residual);
  const double pl = *c0.lower_A / (alpha * alpha);
  const auto measured = certify_operator(s, t, opt.certificate());
  b.r.measured = measured;
  b.r.predicted_lower = std::min(pl, measured.upper_B);
  b.r.predicted_upper = c0.upper_B;
  return b.finish(measured.is_k_biframe && lower_within(measured, pl, opt.conclusion) &&
                  upper_within(measured, c0.upper_B, opt.conclusion));
}

VerificationReport verify_restricted_invertibility(const BiframePair& p, const Operator& k, const VerifyOptions& opt) {
  Builder b(TheoremId::RestrictedInvertibility);
  const Operator s = biframe_operator(p);
  const auto c0 = certify_operator(s, k, opt.certificate());
  b.r.measured = c0;
  base_certifies(b, c0);
  b.hyp("K_closed_range", true, "automatic in finite dimension");
  if (!b.all_ok()) return b.finish_unmet();

  const Operator q = range_basis(k, opt.rank);
  const Operator s_r = adjoint(q) * s * q;
  const auto sv = singular_values(s_r);
  const auto eig = hermitian_eigen(hermitian_part(s_r), 0.0);
  const double kplus = 1.0 / smallest_nonzero_singular(k, opt.rank);  // ||K^+||
  const double pl = *c0.lower_A / (kplus * kplus);
  const double pu = c0.upper_B;
  const std::size_t rank_r = numerical_rank(s_r, opt.rank);
  b.r.predicted_lower = pl;
  b.r.predicted_upper = pu;
  b.metric("range_dim", static_cast<double>(q.cols()));
  b.metric("compressed_rank", static_cast<double>(rank_r));
  b.metric("compressed_min_singular", sv.back());
  b.metric("compressed_max_singular", sv.front());
  b.metric("compressed_min_eigen", eig.eigenvalues.front());
  b.metric("K_pinv_norm", kplus);

  const bool ok = sv.back() >= pl - rel_slack(opt.conclusion, pl) && sv.front() <= pu + rel_slack(opt.conclusion, pu) &&
                  rank_r == q.cols();
  return b.finish(ok);
}

VerificationReport verify_surjectivity_necessity(const Operator& t, const BiframePair& p, const Operator& k,
                                                 const VerifyOptions& opt) {
  Builder b(TheoremId::Surjectivity);
  require_square_on(t, p.dim(), "T");
  k_full_rank(b, k, opt);
  base_certifies(b, certify_operator(biframe_operator(p), k, opt.certificate()));
  b.hyp("T_closed_range", true, "automatic in finite dimension");
  if (!b.all_ok()) return b.finish_unmet();

  const auto c1 = certify_operator(biframe_operator(p.transformed(t)), k, opt.certificate());
  b.r.measured = c1;
  const std::size_t rank_t = numerical_rank(t, opt.rank);
  b.metric("rank_T", static_cast<double>(rank_t));
  if (!c1.is_k_biframe) {
    b.r.vacuous = true;
    b.note("(TX, TY) is not a K-biframe; the implication holds vacuously");
    return b.finish(true);
  }
  return b.finish(rank_t == p.dim());
}

VerificationReport verify_commuting_transform(const Operator& t, const BiframePair& p, const Operator& k,
                                              const VerifyOptions& opt) {
  Builder b(TheoremId::CommutingTransform);
  require_square_on(t, p.dim(), "T");
  const Operator s = biframe_operator(p);
  const auto c0 = certify_operator(s, k, opt.certificate());
  base_certifies(b, c0);
  double comm_defect = 0.0;
  b.hyp("T_commutes_with_K", commutes(t, k, opt.hypothesis, &comm_defect), "||TK - KT|| = " + num(comm_defect));
  b.hyp("T_closed_range", true, "automatic in finite dimension");
  const std::size_t rank_t = numerical_rank(t, opt.rank);
  b.hyp("T_nonzero", rank_t > 0, "rank(T)=" + std::to_string(rank_t));
  if (rank_t > 0) {
    // The transfer K^* f = (T^+)^* T^* K^* f on R(T) needs K^* f to stay in R(T).
    const Operator proj = range_projector(t, opt.rank);
    const Operator leak = (Operator::identity(p.dim()) - proj) * adjoint(k) * proj;
    const double leak_norm = operator_norm(leak);
    b.hyp("K_adjoint_preserves_range_T", leak_norm <= rel_slack(opt.hypothesis, operator_norm(k)),
          "||(I - P) K^* P|| = " + num(leak_norm));
  }
  if (!b.all_ok()) return b.finish_unmet();

  const Operator s_t = biframe_operator(p.transformed(t));
  const Operator q = range_basis(t, opt.rank);
  const Operator proj = q * adjoint(q);
  const double t_norm = operator_norm(t);
  const double tplus_adj = 1.0 / smallest_nonzero_singular(t, opt.rank);  // ||(T^+)^*||
  const double pl = *c0.lower_A / (tplus_adj * tplus_adj);
  const double pu = c0.upper_B * t_norm * t_norm;

  // K^* maps R(T) into itself, so Q^* K K^* Q = (Q^* K Q)(Q^* K Q)^*.
  const auto measured = certify_operator(adjoint(q) * s_t * q, adjoint(q) * k * q, opt.certificate());
  b.r.measured = measured;
  b.r.predicted_lower = std::min(pl, measured.upper_B);
  b.r.predicted_upper = pu;
  b.note("certificate computed on R(T) through an orthonormal basis");

  CounterRng rng = stream_for(TheoremId::CommutingTransform, opt);
  std::vector<Vector> fs;
  for (auto& g : random_unit_vectors(rng, p.dim(), opt.samples)) fs.push_back(proj * g);
  const Operator g_op = k * adjoint(k);
  for (const Operator& m : {hermitian_part(s_t), g_op}) {
    const auto e = hermitian_eigen(hermitian_part(m), 0.0).eigenvectors;
    for (std::size_t j = 0; j < e.cols(); ++j) fs.push_back(proj * e.column(j));
  }
  append_columns(fs, q);
  const auto forms = kernels::omp::quadratic_forms(s_t, fs);
  const Operator k_adj = adjoint(k);
  const double slack = opt.sample_slack * std::max(1.0, operator_norm(s_t));
  std::size_t failures = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double f2 = std::pow(norm(fs[i]), 2);
    const double kf = norm(k_adj * fs[i]);
    const double form = forms[i].real();
    if (pl * kf * kf > form + slack * f2 || form > pu * f2 + slack * f2) ++failures;
  }
  b.metric("sampled_vectors", static_cast<double>(fs.size()));
  b.metric("sampled_failures", static_cast<double>(failures));

  return b.finish(failures == 0 && lower_within(measured, pl, opt.conclusion) &&
                  upper_within(measured, pu, opt.conclusion));
}

VerificationReport verify_two_sided_invertibility(const Operator& t, const BiframePair& p, const Operator& k,
                                                  const VerifyOptions& opt) {
  Builder b(TheoremId::TwoSidedInvertibility);
  require_square_on(t, p.dim(), "T");
  k_full_rank(b, k, opt);
  base_certifies(b, certify_operator(biframe_operator(p), k, opt.certificate()));
  b.hyp("T_closed_range", true, "automatic in finite dimension");
  if (!b.all_ok()) return b.finish_unmet();

  const auto c_t = certify_operator(biframe_operator(p.transformed(t)), k, opt.certificate());
  const auto c_adj = certify_operator(biframe_operator(p.transformed(adjoint(t))), k, opt.certificate());
  b.r.measured = c_t;
  if (c_adj.lower_A) b.metric("adjoint_pair_lower_A", *c_adj.lower_A);
  b.metric("adjoint_pair_upper_B", c_adj.upper_B);
  const std::size_t rank_t = numerical_rank(t, opt.rank);
  b.metric("rank_T", static_cast<double>(rank_t));
  if (!(c_t.is_k_biframe && c_adj.is_k_biframe)) {
    b.r.vacuous = true;
    b.note(std::string("premise fails: ") + (c_t.is_k_biframe ? "" : "(TX, TY) ") +
           (c_adj.is_k_biframe ? "" : "(T^*X, T^*Y) ") + "not a K-biframe; the implication holds vacuously");
    return b.finish(true);
  }
  return b.finish(rank_t == p.dim());
}

VerificationReport verify_coisometry_transform(const Operator& t, const BiframePair& p, const Operator& k,
                                               const VerifyOptions& opt) {
  Builder b(TheoremId::Coisometry);
  require_square_on(t, p.dim(), "T");
  const double co_defect = operator_norm(t * adjoint(t) - Operator::identity(p.dim()));
  b.hyp("T_coisometry", is_coisometry(t, opt.hypothesis), "||TT^* - I|| = " + num(co_defect));
  double comm_defect = 0.0;
  b.hyp("T_commutes_with_K", commutes(t, k, opt.hypothesis, &comm_defect), "||TK - KT|| = " + num(comm_defect));
  k_full_rank(b, k, opt);
  const auto c0 = certify_operator(biframe_operator(p), k, opt.certificate());
  base_certifies(b, c0);
  if (!b.all_ok()) return b.finish_unmet();

  const auto c1 = certify_operator(biframe_operator(p.transformed(t)), k, opt.certificate());
  b.r.measured = c1;
  const double t_norm = operator_norm(t);
  const double pl = *c0.lower_A;
  const double pu = c0.upper_B * t_norm * t_norm;
  b.r.predicted_lower = std::min(pl, c1.upper_B);
  b.r.predicted_upper = pu;
  b.note("a square co-isometry is unitary in finite dimension");
  return b.finish(c1.is_k_biframe && lower_within(c1, pl, opt.conclusion) && upper_within(c1, pu, opt.conclusion));
}

VerificationReport verify(TheoremId id, const Operator& t, const BiframePair& p, const Operator& k,
                          const VerifyOptions& opt) {
  switch (id) {
    case TheoremId::Swap: return verify_swap(p, k, opt);
    case TheoremId::Characterization: return verify_characterization(p, k, opt);
    case TheoremId::InvertibleTransform: return verify_invertible_transform(t, p, k, opt);
    case TheoremId::RangeTransfer: return verify_range_transfer(t, p, k, opt);
    case TheoremId::RestrictedInvertibility: return verify_restricted_invertibility(p, k, opt);
    case TheoremId::Surjectivity: return verify_surjectivity_necessity(t, p, k, opt);
    case TheoremId::CommutingTransform: return verify_commuting_transform(t, p, k, opt);
    case TheoremId::TwoSidedInvertibility: return verify_two_sided_invertibility(t, p, k, opt);
    case TheoremId::Coisometry: return verify_coisometry_transform(t, p, k, opt);
  }
  throw Error(ErrorCode::UnknownTheoremId, "unhandled theorem id");
}

}  // namespace biframe
