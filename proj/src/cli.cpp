#include "biframe/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <sstream>

#include <nlohmann/json.hpp>

#include "biframe/error.hpp"
#include "biframe/kernels.hpp"

namespace biframe::cli {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Document reading

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
    throw SchemaError(ptr.empty() ? "/" : ptr, what);
  }

  /// Rejects keys outside `allowed`, pointing at the first offender in document order.
  void allow_only(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(ptr + "/" + key, "unknown key \"" + key + "\"" + locate(key));
      }
    }
  }

  const json& object(const json& j, const std::string& ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    return j;
  }

  const json& array(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    return j;
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "expected a finite number");
    return v;
  }

  std::uint64_t unsigned_int(const json& j, const std::string& ptr) const {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
    }
    fail(ptr, "expected a non-negative integer");
  }

  int positive_int(const json& j, const std::string& ptr) const {
    const std::uint64_t v = unsigned_int(j, ptr);
    if (v < 1 || v > 1'000'000) fail(ptr, "expected an integer in [1, 1000000]");
    return static_cast<int>(v);
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  bool boolean(const json& j, const std::string& ptr) const {
    if (!j.is_boolean()) fail(ptr, "expected true or false");
    return j.get<bool>();
  }

  Scalar complex(const json& j, const std::string& ptr) const {
    if (j.is_number()) return {number(j, ptr), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], ptr + "/0"), number(j[1], ptr + "/1")};
    fail(ptr, "expected a number or [re, im]");
  }

  Vector vector(const json& j, const std::string& ptr) const {
    array(j, ptr);
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex(j[i], ptr + "/" + std::to_string(i));
    return v;
  }

  Operator matrix(const json& j, const std::string& ptr) const {
    array(j, ptr);
    if (j.empty()) fail(ptr, "matrix needs at least one row");
    const std::size_t cols = array(j[0], ptr + "/0").size();
    Operator m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string rp = ptr + "/" + std::to_string(r);
      if (array(j[r], rp).size() != cols) fail(rp, "row length differs from row 0");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex(j[r][c], rp + "/" + std::to_string(c));
    }
    return m;
  }

 private:
  /// " (line L, column C)" of the first `"key":` in the text, when it can be found.
  std::string locate(const std::string& key) const {
    const std::string needle = "\"" + key + "\"";
    for (std::size_t pos = text_.find(needle); pos != std::string_view::npos; pos = text_.find(needle, pos + 1)) {
      std::size_t after = pos + needle.size();
      while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
      if (after < text_.size() && text_[after] == ':') {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
          if (text_[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
        }
        return " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")";
      }
    }
    return {};
  }

  std::string_view text_;
};

MeasureDesc read_measure(const Reader& rd, const json& j, const std::string& ptr) {
  rd.object(j, ptr);
  if (!j.contains("kind")) rd.fail(ptr + "/kind", "missing required key");
  MeasureDesc m;
  const std::string kind = rd.string(j["kind"], ptr + "/kind");
  if (kind == "interval") {
    rd.allow_only(j, ptr, {"kind", "a", "b", "panels", "rule", "channels"});
    m.kind = MeasureSpace::Kind::Interval;
    if (j.contains("a")) m.a = rd.number(j["a"], ptr + "/a");
    if (j.contains("b")) m.b = rd.number(j["b"], ptr + "/b");
    if (!(m.a < m.b)) rd.fail(ptr + "/b", "interval needs a < b");
    if (j.contains("panels")) m.panels = rd.positive_int(j["panels"], ptr + "/panels");
    if (j.contains("rule")) {
      try {
        m.rule = parse_rule(rd.string(j["rule"], ptr + "/rule"));
      } catch (const Error&) {
        rd.fail(ptr + "/rule", "expected midpoint, gauss2 or gauss4");
      }
    }
  } else if (kind == "discrete") {
    rd.allow_only(j, ptr, {"kind", "weights", "channels"});
    m.kind = MeasureSpace::Kind::Discrete;
    if (!j.contains("weights")) rd.fail(ptr + "/weights", "missing required key");
    const json& w = rd.array(j["weights"], ptr + "/weights");
    if (w.empty()) rd.fail(ptr + "/weights", "needs at least one weight");
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double v = rd.number(w[i], ptr + "/weights/" + std::to_string(i));
      if (!(v > 0.0)) rd.fail(ptr + "/weights/" + std::to_string(i), "weights must be positive");
      m.weights.push_back(v);
    }
  } else {
    rd.fail(ptr + "/kind", "expected \"interval\" or \"discrete\"");
  }
  if (j.contains("channels")) m.channels = rd.positive_int(j["channels"], ptr + "/channels");
  return m;
}

FieldDesc read_field(const Reader& rd, const json& j, const std::string& ptr) {
  rd.object(j, ptr);
  if (!j.contains("family")) rd.fail(ptr + "/family", "missing required key");
  FieldDesc f;
  f.family = rd.string(j["family"], ptr + "/family");
  if (f.family == "vectors") {
    rd.allow_only(j, ptr, {"family", "vectors"});
    if (!j.contains("vectors")) rd.fail(ptr + "/vectors", "missing required key");
    const json& vs = rd.array(j["vectors"], ptr + "/vectors");
    if (vs.empty()) rd.fail(ptr + "/vectors", "needs at least one vector");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string vp = ptr + "/vectors/" + std::to_string(i);
      f.vectors.push_back(rd.vector(vs[i], vp));
      if (f.vectors.back().size() != f.vectors.front().size() || f.vectors.back().size() == 0) {
        rd.fail(vp, "vector length differs from vector 0");
      }
    }
    f.dim = f.vectors.front().size();
  } else if (f.family == "standard_basis") {
    rd.allow_only(j, ptr, {"family", "dim"});
    if (!j.contains("dim")) rd.fail(ptr + "/dim", "missing required key");
    f.dim = static_cast<std::size_t>(rd.positive_int(j["dim"], ptr + "/dim"));
  } else if (f.family == "polynomial" || f.family == "diagonal_polynomial") {
    rd.allow_only(j, ptr, {"family", "coefficients"});
    if (!j.contains("coefficients")) rd.fail(ptr + "/coefficients", "missing required key");
    const json& cs = rd.array(j["coefficients"], ptr + "/coefficients");
    if (cs.empty()) rd.fail(ptr + "/coefficients", "needs one coefficient list per component");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cp = ptr + "/coefficients/" + std::to_string(i);
      std::vector<double> row;
      for (std::size_t k = 0; k < rd.array(cs[i], cp).size(); ++k) {
        row.push_back(rd.number(cs[i][k], cp + "/" + std::to_string(k)));
      }
      f.coefficients.push_back(std::move(row));
    }
    f.dim = f.coefficients.size();
  } else {
    rd.fail(ptr + "/family", "unknown family \"" + f.family +
                                 "\"; expected vectors, standard_basis, polynomial or diagonal_polynomial");
  }
  return f;
}

OperatorDesc read_operator(const Reader& rd, const json& j, const std::string& ptr) {
  rd.object(j, ptr);
  OperatorDesc o;
  if (j.contains("matrix")) {
    rd.allow_only(j, ptr, {"matrix"});
    o.form = "matrix";
    o.matrix = rd.matrix(j["matrix"], ptr + "/matrix");
    if (!o.matrix.square()) rd.fail(ptr + "/matrix", "matrix must be square");
    o.dim = o.matrix.rows();
  } else if (j.contains("identity_scaled")) {
    rd.allow_only(j, ptr, {"identity_scaled", "dim"});
    o.form = "identity_scaled";
    o.scale = rd.complex(j["identity_scaled"], ptr + "/identity_scaled");
    if (j.contains("dim")) o.dim = static_cast<std::size_t>(rd.positive_int(j["dim"], ptr + "/dim"));
  } else if (j.contains("diagonal")) {
    rd.allow_only(j, ptr, {"diagonal"});
    o.form = "diagonal";
    const Vector d = rd.vector(j["diagonal"], ptr + "/diagonal");
    if (d.size() == 0) rd.fail(ptr + "/diagonal", "needs at least one entry");
    o.diagonal.assign(d.begin(), d.end());
    o.dim = d.size();
  } else if (j.contains("shift_K")) {
    rd.allow_only(j, ptr, {"shift_K"});
    o.form = "shift_K";
    o.dim = static_cast<std::size_t>(rd.positive_int(j["shift_K"], ptr + "/shift_K"));
    if (o.dim < 4) rd.fail(ptr + "/shift_K", "shift_K needs dimension >= 4");
  } else {
    if (!j.empty()) rd.allow_only(j, ptr, {});
    rd.fail(ptr, "expected one of matrix, identity_scaled, diagonal, shift_K");
  }
  return o;
}

CorpusRef read_corpus(const Reader& rd, const json& j, const std::string& ptr) {
  CorpusRef c;
  if (j.is_string()) {
    c.name = j.get<std::string>();
  } else {
    rd.object(j, ptr);
    rd.allow_only(j, ptr, {"name", "d", "panels", "rule", "n_nodes", "seed", "conditioning"});
    if (!j.contains("name")) rd.fail(ptr + "/name", "missing required key");
    c.name = rd.string(j["name"], ptr + "/name");
    if (j.contains("d")) c.params.d = static_cast<std::size_t>(rd.positive_int(j["d"], ptr + "/d"));
    if (j.contains("panels")) c.params.panels = rd.positive_int(j["panels"], ptr + "/panels");
    if (j.contains("rule")) {
      try {
        c.params.rule = parse_rule(rd.string(j["rule"], ptr + "/rule"));
      } catch (const Error&) {
        rd.fail(ptr + "/rule", "expected midpoint, gauss2 or gauss4");
      }
    }
    if (j.contains("n_nodes")) c.params.n_nodes = static_cast<std::size_t>(rd.positive_int(j["n_nodes"], ptr + "/n_nodes"));
    if (j.contains("seed")) c.params.seed = rd.unsigned_int(j["seed"], ptr + "/seed");
    if (j.contains("conditioning")) c.params.conditioning = rd.number(j["conditioning"], ptr + "/conditioning");
  }
  const auto names = corpus_names();
  if (std::find(names.begin(), names.end(), c.name) == names.end()) {
    rd.fail(j.is_string() ? ptr : ptr + "/name", "unknown corpus entry \"" + c.name + "\"");
  }
  return c;
}

RunOptions read_options(const Reader& rd, const json& j, const std::string& ptr) {
  rd.object(j, ptr);
  rd.allow_only(j, ptr, {"tol", "conclusion_tol", "psd_tol", "rank_tol", "sample_slack", "samples", "seed"});
  RunOptions o;
  auto positive = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    out = rd.number(j[key], ptr + "/" + key);
    if (!(out > 0.0)) rd.fail(ptr + "/" + key, "must be positive");
  };
  positive("tol", o.hypothesis_tol);
  positive("conclusion_tol", o.conclusion_tol);
  positive("psd_tol", o.psd_tol);
  positive("rank_tol", o.rank_tol);
  positive("sample_slack", o.sample_slack);
  if (j.contains("samples")) o.samples = static_cast<std::size_t>(rd.positive_int(j["samples"], ptr + "/samples"));
  if (j.contains("seed")) o.seed = rd.unsigned_int(j["seed"], ptr + "/seed");
  return o;
}

ExpectDesc read_expect(const Reader& rd, const json& j, const std::string& ptr) {
  rd.object(j, ptr);
  rd.allow_only(j, ptr, {"A", "B", "tolerance"});
  ExpectDesc e;
  if (j.contains("A")) e.a = rd.number(j["A"], ptr + "/A");
  if (j.contains("B")) e.b = rd.number(j["B"], ptr + "/B");
  if (j.contains("tolerance")) {
    e.tolerance = rd.number(j["tolerance"], ptr + "/tolerance");
    if (!(e.tolerance >= 0.0)) rd.fail(ptr + "/tolerance", "must be non-negative");
  }
  return e;
}

ProblemSpec spec_from_json(const json& doc, std::string_view text) {
  const Reader rd(text);
  rd.object(doc, "");
  rd.allow_only(doc, "", {"schema_version", "corpus", "measure", "X", "Y", "K", "T", "expect", "options"});
  ProblemSpec s;
  if (!doc.contains("schema_version")) rd.fail("/schema_version", "missing required key");
  const std::uint64_t version = rd.unsigned_int(doc["schema_version"], "/schema_version");
  if (version != static_cast<std::uint64_t>(kSchemaVersion)) {
    rd.fail("/schema_version", "unsupported version " + std::to_string(version) + "; this build reads " +
                                   std::to_string(kSchemaVersion));
  }

  if (doc.contains("corpus")) {
    s.corpus = read_corpus(rd, doc["corpus"], "/corpus");
    for (const char* key : {"measure", "X", "Y", "K"}) {
      if (doc.contains(key)) rd.fail(std::string("/") + key, "not allowed together with \"corpus\"");
    }
  } else {
    for (const char* key : {"measure", "X", "Y"}) {
      if (!doc.contains(key)) rd.fail(std::string("/") + key, "missing required key (or give \"corpus\")");
    }
    s.measure = read_measure(rd, doc["measure"], "/measure");
    s.x = read_field(rd, doc["X"], "/X");
    s.y = read_field(rd, doc["Y"], "/Y");
    if (doc.contains("K")) s.k = read_operator(rd, doc["K"], "/K");
  }
  if (doc.contains("T")) {
    s.t = read_operator(rd, doc["T"], "/T");
    if (s.t->form == "shift_K") rd.fail("/T/shift_K", "shift_K is only available for K");
  }
  if (doc.contains("expect")) s.expect = read_expect(rd, doc["expect"], "/expect");
  if (doc.contains("options")) s.options = read_options(rd, doc["options"], "/options");
  return s;
}

// ---------------------------------------------------------------------------
// Document writing

json number_json(double x, bool rounded) { return rounded ? round12(x) : x; }

json complex_json(Scalar z, bool rounded) {
  if (z.imag() == 0.0) return number_json(z.real(), rounded);
  return json::array({number_json(z.real(), rounded), number_json(z.imag(), rounded)});
}

json vector_json(const Vector& v, bool rounded) {
  json a = json::array();
  for (const Scalar& z : v) a.push_back(complex_json(z, rounded));
  return a;
}

json matrix_json(const Operator& m, bool rounded) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c), rounded));
    rows.push_back(std::move(row));
  }
  return rows;
}

json operator_desc_json(const OperatorDesc& o) {
  json j = json::object();
  if (o.form == "matrix") {
    j["matrix"] = matrix_json(o.matrix, false);
  } else if (o.form == "identity_scaled") {
    j["identity_scaled"] = complex_json(o.scale, false);
    if (o.dim) j["dim"] = o.dim;
  } else if (o.form == "diagonal") {
    j["diagonal"] = vector_json(Vector(o.diagonal), false);
  } else {
    j["shift_K"] = o.dim;
  }
  return j;
}

json spec_to_json(const ProblemSpec& s) {
  json j = json::object();
  j["schema_version"] = s.schema_version;
  if (s.corpus) {
    json c = json::object();
    c["name"] = s.corpus->name;
    const auto& p = s.corpus->params;
    if (p.d) c["d"] = *p.d;
    if (p.panels) c["panels"] = *p.panels;
    if (p.rule) c["rule"] = std::string(to_string(*p.rule));
    if (p.n_nodes) c["n_nodes"] = *p.n_nodes;
    if (p.seed) c["seed"] = *p.seed;
    if (p.conditioning) c["conditioning"] = *p.conditioning;
    j["corpus"] = std::move(c);
  }
  if (s.measure) {
    json m = json::object();
    if (s.measure->kind == MeasureSpace::Kind::Interval) {
      m["kind"] = "interval";
      m["a"] = s.measure->a;
      m["b"] = s.measure->b;
      m["panels"] = s.measure->panels;
      m["rule"] = std::string(to_string(s.measure->rule));
    } else {
      m["kind"] = "discrete";
      m["weights"] = s.measure->weights;
    }
    m["channels"] = s.measure->channels;
    j["measure"] = std::move(m);
  }
  for (const auto& [key, field] : {std::pair{"X", &s.x}, std::pair{"Y", &s.y}}) {
    if (!*field) continue;
    const FieldDesc& f = **field;
    json fj = json::object();
    fj["family"] = f.family;
    if (f.family == "vectors") {
      json vs = json::array();
      for (const auto& v : f.vectors) vs.push_back(vector_json(v, false));
      fj["vectors"] = std::move(vs);
    } else if (f.family == "standard_basis") {
      fj["dim"] = f.dim;
    } else {
      fj["coefficients"] = f.coefficients;
    }
    j[key] = std::move(fj);
  }
  if (s.k) j["K"] = operator_desc_json(*s.k);
  if (s.t) j["T"] = operator_desc_json(*s.t);
  if (s.expect) {
    json e = json::object();
    if (s.expect->a) e["A"] = *s.expect->a;
    if (s.expect->b) e["B"] = *s.expect->b;
    e["tolerance"] = s.expect->tolerance;
    j["expect"] = std::move(e);
  }
  json o = json::object();
  o["tol"] = s.options.hypothesis_tol;
  o["conclusion_tol"] = s.options.conclusion_tol;
  o["psd_tol"] = s.options.psd_tol;
  o["rank_tol"] = s.options.rank_tol;
  o["sample_slack"] = s.options.sample_slack;
  o["samples"] = s.options.samples;
  if (s.options.seed) o["seed"] = *s.options.seed;
  j["options"] = std::move(o);
  return j;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(line, col, what);
  }
}

// ---------------------------------------------------------------------------
// Problem construction

double poly(const std::vector<double>& c, double w) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
  return acc;
}

MeasureSpace build_measure(const MeasureDesc& d) {
  MeasureSpace base = d.kind == MeasureSpace::Kind::Interval ? interval_measure(d.a, d.b, d.panels, d.rule)
                                                              : discrete_measure(d.weights);
  return d.channels > 1 ? with_channels(base, d.channels) : base;
}

VectorField build_field(const FieldDesc& f, const MeasureSpace& m, const std::string& ptr) {
  std::vector<Vector> samples;
  samples.reserve(m.size());
  if (f.family == "vectors") {
    if (f.vectors.size() != m.size()) {
      throw SchemaError(ptr + "/vectors", std::to_string(f.vectors.size()) + " vectors for a measure with " +
                                              std::to_string(m.size()) + " nodes");
    }
    samples = f.vectors;
  } else if (f.family == "standard_basis") {
    for (std::size_t i = 0; i < m.size(); ++i) samples.push_back(Vector::basis(f.dim, i % f.dim));
  } else if (f.family == "polynomial") {
    for (double w : m.nodes()) {
      Vector v(f.dim);
      for (std::size_t j = 0; j < f.dim; ++j) v[j] = poly(f.coefficients[j], w);
      samples.push_back(std::move(v));
    }
  } else {
    if (static_cast<std::size_t>(m.channels()) != f.dim) {
      throw SchemaError(ptr + "/coefficients", "diagonal_polynomial needs measure channels = " +
                                                   std::to_string(f.dim) + ", got " + std::to_string(m.channels()));
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::size_t c = i % f.dim;
      samples.push_back(poly(f.coefficients[c], m.nodes()[i]) * Vector::basis(f.dim, c));
    }
  }
  return {f.dim, std::move(samples)};
}

Operator build_operator(const OperatorDesc& o, std::size_t dim, const std::string& ptr) {
  if (o.dim != 0 && o.dim != dim) {
    throw SchemaError(ptr, "operator dimension " + std::to_string(o.dim) + " does not match field dimension " +
                               std::to_string(dim));
  }
  if (o.form == "matrix") return o.matrix;
  if (o.form == "identity_scaled") return o.scale * Operator::identity(dim);
  if (o.form == "diagonal") return Operator::diagonal(o.diagonal);
  return example_shift_K(dim).K;
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// Report (de)serialization

json optional_json(const std::optional<double>& v) { return v ? json(round12(*v)) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Scalar complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Vector vector_from(const json& j) {
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from(j[i]);
  return v;
}

Operator matrix_from(const json& j) {
  if (j.empty()) return {};
  Operator m(j.size(), j[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = complex_from(j[r][c]);
  return m;
}

json certificate_json(const BoundCertificate& c) {
  json j = json::object();
  j["is_k_biframe"] = c.is_k_biframe;
  j["lower_A"] = optional_json(c.lower_A);
  j["a_sup"] = optional_json(c.a_sup);
  j["upper_B"] = round12(c.upper_B);
  j["realness_defect"] = round12(c.realness_defect);
  j["certification_floor"] = round12(c.certification_floor);
  j["degenerate_k"] = c.degenerate_k;
  j["K"] = matrix_json(c.K_used, true);
  return j;
}

BoundCertificate certificate_from(const json& j) {
  BoundCertificate c;
  c.is_k_biframe = j.at("is_k_biframe").get<bool>();
  c.lower_A = optional_from(j.at("lower_A"));
  c.a_sup = optional_from(j.at("a_sup"));
  c.upper_B = j.at("upper_B").get<double>();
  c.realness_defect = j.at("realness_defect").get<double>();
  c.certification_floor = j.at("certification_floor").get<double>();
  c.degenerate_k = j.at("degenerate_k").get<bool>();
  c.K_used = matrix_from(j.at("K"));
  return c;
}

json verification_json(const VerificationReport& r) {
  json j = json::object();
  j["theorem"] = std::string(to_string(r.theorem_id));
  j["verdict"] = std::string(to_string(r.verdict));
  j["vacuous"] = r.vacuous;
  j["hypotheses_ok"] = r.hypotheses_ok;
  json hs = json::array();
  for (const auto& h : r.hypotheses) hs.push_back(json{{"name", h.name}, {"ok", h.ok}, {"detail", h.detail}});
  j["hypotheses"] = std::move(hs);
  j["predicted_lower"] = optional_json(r.predicted_lower);
  j["predicted_upper"] = optional_json(r.predicted_upper);
  j["measured"] = certificate_json(r.measured);
  json ms = json::array();
  for (const auto& m : r.metrics) ms.push_back(json{{"name", m.name}, {"value", round12(m.value)}});
  j["metrics"] = std::move(ms);
  j["notes"] = r.notes;
  j["witness"] = r.witness ? vector_json(*r.witness, true) : json(nullptr);
  return j;
}

VerificationReport verification_from(const json& j) {
  VerificationReport r;
  r.theorem_id = parse_theorem_id(j.at("theorem").get<std::string>());
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.vacuous = j.at("vacuous").get<bool>();
  r.hypotheses_ok = j.at("hypotheses_ok").get<bool>();
  for (const auto& h : j.at("hypotheses")) {
    r.hypotheses.push_back({h.at("name").get<std::string>(), h.at("ok").get<bool>(), h.at("detail").get<std::string>()});
  }
  r.predicted_lower = optional_from(j.at("predicted_lower"));
  r.predicted_upper = optional_from(j.at("predicted_upper"));
  r.measured = certificate_from(j.at("measured"));
  for (const auto& m : j.at("metrics")) r.metrics.push_back({m.at("name").get<std::string>(), m.at("value").get<double>()});
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (!j.at("witness").is_null()) r.witness = vector_from(j.at("witness"));
  return r;
}

json report_json(const RunReport& r) {
  json j = json::object();
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["command"] = r.command;
  j["input"] = spec_to_json(r.input);
  j["seed"] = r.seed;
  const auto& o = r.input.options;
  j["tolerances"] = json{{"hypothesis", o.hypothesis_tol}, {"conclusion", o.conclusion_tol}, {"psd", o.psd_tol},
                         {"rank", o.rank_tol},          {"sample_slack", o.sample_slack},  {"samples", o.samples}};
  j["certificate"] = certificate_json(r.certificate);
  json es = json::array();
  for (const auto& e : r.expectations) {
    es.push_back(json{{"quantity", e.expected.quantity},
                      {"expected", round12(e.expected.value)},
                      {"tolerance", round12(e.expected.tolerance)},
                      {"source", e.expected.source},
                      {"measured", round12(e.measured)},
                      {"ok", e.ok}});
  }
  j["expectations"] = std::move(es);
  json cs = json::array();
  for (const auto& c : r.claims) {
    cs.push_back(json{{"quantity", c.claim.quantity},
                      {"claimed", round12(c.claim.claimed)},
                      {"measured", round12(c.measured)},
                      {"reproducible", c.reproducible},
                      {"note", c.claim.note},
                      {"witness", json{{"f", vector_json(c.witness.f, true)},
                                       {"k_star_norm_sq", round12(c.witness.k_star_norm_sq)},
                                       {"quadratic_form", round12(c.witness.quadratic_form)},
                                       {"margin", round12(c.witness.margin)}}}});
  }
  j["claims"] = std::move(cs);
  json vs = json::array();
  for (const auto& v : r.verifications) vs.push_back(verification_json(v));
  j["verifications"] = std::move(vs);
  j["timing"] = json{{"elapsed_seconds", round12(r.timing.elapsed_seconds)},
                     {"timestamp", r.timing.timestamp},
                     {"threads", r.threads}};
  return j;
}

/// Canonical fixed-format phase: the entry with the largest modulus becomes real positive.
Vector fix_phase(Vector v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
  if (v.size() == 0 || std::abs(v[best]) == 0.0) return v;
  v *= std::conj(v[best]) / std::abs(v[best]);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

double round12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

ProblemSpec parse_spec(std::string_view text) { return spec_from_json(parse_text(text), text); }

std::string serialize_spec(const ProblemSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

std::string normalize_spec(std::string_view text) { return serialize_spec(parse_spec(text)); }

std::uint64_t resolve_seed(const ProblemSpec& spec, const Overrides& ov) {
  if (ov.seed) return *ov.seed;
  if (spec.options.seed) return *spec.options.seed;
  if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::InvalidConfig, std::string(kSeedEnvVar) + "='" + std::string(s) + "' is not an unsigned integer");
    }
    return v;
  }
  return 1;
}

ProblemSpec apply_overrides(ProblemSpec spec, const Overrides& ov) {
  if (ov.tol) {
    if (!(*ov.tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "--tol must be positive");
    spec.options.hypothesis_tol = *ov.tol;
  }
  if (ov.panels) {
    if (*ov.panels < 1) throw Error(ErrorCode::InvalidConfig, "--panels must be >= 1");
    if (spec.corpus && spec.corpus->name == "example_diagonal_interval") spec.corpus->params.panels = *ov.panels;
    if (spec.measure && spec.measure->kind == MeasureSpace::Kind::Interval) spec.measure->panels = *ov.panels;
  }
  if (ov.seed) spec.options.seed = *ov.seed;
  return spec;
}

Problem build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  std::optional<CorpusEntry> entry;
  if (spec.corpus) {
    CorpusParams p = spec.corpus->params;
    if (!p.seed) p.seed = seed;
    entry = corpus_entry(spec.corpus->name, p);
  } else {
    const MeasureSpace m = build_measure(*spec.measure);
    VectorField x = build_field(*spec.x, m, "/X");
    VectorField y = build_field(*spec.y, m, "/Y");
    if (x.dim() != y.dim()) {
      throw SchemaError("/Y", "dimension " + std::to_string(y.dim()) + " differs from X dimension " +
                                  std::to_string(x.dim()));
    }
    const std::size_t d = x.dim();
    Operator k = spec.k ? build_operator(*spec.k, d, "/K") : Operator::identity(d);
    entry = CorpusEntry{"custom", "", BiframePair(std::move(x), std::move(y), m), std::move(k), {}, {}};
  }
  if (spec.expect) {
    if (spec.expect->a) entry->expected.push_back({"A", *spec.expect->a, spec.expect->tolerance, "document"});
    if (spec.expect->b) entry->expected.push_back({"B", *spec.expect->b, spec.expect->tolerance, "document"});
  }
  const std::size_t d = entry->pair.dim();
  Operator t = spec.t ? build_operator(*spec.t, d, "/T") : Operator::identity(d);
  return {std::move(*entry), std::move(t)};
}

VerifyOptions verify_options(const ProblemSpec& spec, std::uint64_t seed) {
  VerifyOptions v;
  v.hypothesis = spec.options.hypothesis_tol;
  v.conclusion = spec.options.conclusion_tol;
  v.psd = spec.options.psd_tol;
  v.rank = spec.options.rank_tol;
  v.sample_slack = spec.options.sample_slack;
  v.samples = spec.options.samples;
  v.seed = seed;
  return v;
}

namespace {

RunReport certificate_report(const ProblemSpec& input, const Problem& prob, std::uint64_t seed,
                             const VerifyOptions& vo) {
  RunReport r;
  r.input = input;
  r.seed = seed;
  r.threads = kernels::omp::max_threads();
  const Operator s = biframe_operator(prob.entry.pair);
  r.certificate = certify_operator(s, prob.entry.K, vo.certificate());
  r.expectations = check_expectations(prob.entry, vo.certificate());
  for (const auto& claim : prob.entry.claims) {
    ClaimCheck c;
    c.claim = claim;
    c.measured = measure_quantity(prob.entry, claim.quantity, vo.certificate());
    if (claim.quantity == "A") {
      c.reproducible = c.measured >= claim.claimed - vo.hypothesis * std::max(1.0, claim.claimed);
      c.witness = find_witness(s, prob.entry.K, claim.claimed);
      c.witness.f = fix_phase(c.witness.f);
    } else {
      c.reproducible = std::abs(c.measured - claim.claimed) <= vo.hypothesis * std::max(1.0, std::abs(claim.claimed));
    }
    r.claims.push_back(std::move(c));
  }
  return r;
}

}  // namespace

RunReport run_certificate(const ProblemSpec& spec_in, const Overrides& ov) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(spec_in, ov);
  const ProblemSpec spec = apply_overrides(spec_in, ov);
  const VerifyOptions vo = verify_options(spec, seed);
  RunReport r = certificate_report(spec, build_problem(spec, seed), seed, vo);
  r.command = "bounds";
  r.timing = {std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), timestamp_utc()};
  return r;
}

RunReport run_verifiers(const ProblemSpec& spec_in, const std::vector<TheoremId>& selection, const Overrides& ov) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(spec_in, ov);
  const ProblemSpec spec = apply_overrides(spec_in, ov);
  const VerifyOptions vo = verify_options(spec, seed);
  const Problem prob = build_problem(spec, seed);
  RunReport r = certificate_report(spec, prob, seed, vo);
  r.command = "verify";

  std::vector<std::optional<VerificationReport>> slots(selection.size());
  std::vector<std::exception_ptr> errors(selection.size());
  const auto n = static_cast<std::ptrdiff_t>(selection.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx] = verify(selection[idx], prob.t, prob.entry.pair, prob.entry.K, vo);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    r.verifications.push_back(std::move(*slots[i]));
  }
  r.timing = {std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), timestamp_utc()};
  return r;
}

std::vector<TheoremId> parse_selection(const std::vector<std::string>& items) {
  std::vector<TheoremId> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      if (tok.empty()) continue;
      if (tok == "all") {
        out.insert(out.end(), std::begin(kAllTheorems), std::end(kAllTheorems));
      } else {
        out.push_back(parse_theorem_id(tok));
      }
    }
  }
  if (out.empty()) out.assign(std::begin(kAllTheorems), std::end(kAllTheorems));
  return out;
}

int exit_status(const RunReport& r) {
  for (const auto& v : r.verifications)
    if (v.verdict == Verdict::Violated) return 2;
  for (const auto& e : r.expectations)
    if (!e.ok) return 2;
  return 0;
}

std::string to_machine(const RunReport& r) { return report_json(r).dump(2) + "\n"; }

RunReport from_machine(std::string_view text) {
  const json j = parse_text(text);
  RunReport r;
  r.tool = j.at("tool").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.input = spec_from_json(j.at("input"), {});
  r.seed = j.at("seed").get<std::uint64_t>();
  r.certificate = certificate_from(j.at("certificate"));
  for (const auto& e : j.at("expectations")) {
    ExpectationResult x;
    x.expected = {e.at("quantity").get<std::string>(), e.at("expected").get<double>(), e.at("tolerance").get<double>(),
                  e.at("source").get<std::string>()};
    x.measured = e.at("measured").get<double>();
    x.ok = e.at("ok").get<bool>();
    r.expectations.push_back(std::move(x));
  }
  for (const auto& c : j.at("claims")) {
    ClaimCheck x;
    x.claim = {c.at("quantity").get<std::string>(), c.at("claimed").get<double>(), false, c.at("note").get<std::string>()};
    x.measured = c.at("measured").get<double>();
    x.reproducible = c.at("reproducible").get<bool>();
    x.claim.reproducible = x.reproducible;
    const json& w = c.at("witness");
    x.witness.f = vector_from(w.at("f"));
    x.witness.k_star_norm_sq = w.at("k_star_norm_sq").get<double>();
    x.witness.quadratic_form = w.at("quadratic_form").get<double>();
    x.witness.margin = w.at("margin").get<double>();
    r.claims.push_back(std::move(x));
  }
  for (const auto& v : j.at("verifications")) r.verifications.push_back(verification_from(v));
  const json& t = j.at("timing");
  r.timing = {t.at("elapsed_seconds").get<double>(), t.at("timestamp").get<std::string>()};
  r.threads = t.at("threads").get<int>();
  return r;
}

std::string deterministic_part(std::string_view machine_text) {
  json j = parse_text(machine_text);
  j.erase("timing");
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt12(const std::optional<double>& x) { return x ? fmt12(*x) : "-"; }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string describe_input(const ProblemSpec& s) {
  if (!s.corpus) return "custom problem";
  std::string out = "corpus " + s.corpus->name;
  const auto& p = s.corpus->params;
  if (p.d) out += " d=" + std::to_string(*p.d);
  if (p.panels) out += " panels=" + std::to_string(*p.panels);
  if (p.rule) out += " rule=" + std::string(to_string(*p.rule));
  return out;
}

}  // namespace

std::string to_human(const RunReport& r) {
  std::ostringstream o;
  o << r.tool << ' ' << r.version << "  " << r.command << "  " << describe_input(r.input) << "  seed " << r.seed
    << '\n';
  const auto& opt = r.input.options;
  o << "tolerances  hypothesis " << fmt12(opt.hypothesis_tol) << "  conclusion " << fmt12(opt.conclusion_tol)
    << "  psd " << fmt12(opt.psd_tol) << "  rank " << fmt12(opt.rank_tol) << "  samples " << opt.samples << "\n\n";

  const auto& c = r.certificate;
  o << "certificate\n";
  o << "  K-biframe        " << (c.is_k_biframe ? "yes" : "no") << (c.degenerate_k ? " (K = 0)" : "") << '\n';
  o << "  lower A          " << fmt12(c.lower_A) << '\n';
  o << "  upper B          " << fmt12(c.upper_B) << '\n';
  o << "  realness defect  " << fmt12(c.realness_defect) << '\n';

  if (!r.expectations.empty()) {
    o << "\nexpectations\n";
    o << "  " << pad("quantity", 11) << pad("expected", 20) << pad("measured", 20) << pad("tolerance", 14) << "ok\n";
    for (const auto& e : r.expectations) {
      o << "  " << pad(e.expected.quantity, 11) << pad(fmt12(e.expected.value), 20) << pad(fmt12(e.measured), 20)
        << pad(fmt12(e.expected.tolerance), 14) << (e.ok ? "yes" : "NO") << '\n';
    }
  }

  if (!r.claims.empty()) {
    o << "\nclaimed bounds\n";
    for (const auto& cl : r.claims) {
      o << "  " << cl.claim.quantity << " = " << fmt12(cl.claim.claimed) << "  measured " << fmt12(cl.measured)
        << "  " << (cl.reproducible ? "reproduced" : "not reproducible") << '\n';
      if (!cl.reproducible && cl.claim.quantity == "A") {
        o << "    witness: ||K^* f||^2 = " << fmt12(cl.witness.k_star_norm_sq) << ", <S f, f> = "
          << fmt12(cl.witness.quadratic_form) << ", margin " << fmt12(cl.witness.margin) << '\n';
        o << "    f =";
        for (const Scalar& z : cl.witness.f) {
          o << ' ' << fmt12(round12(z.real()));
          if (z.imag() != 0.0) o << (z.imag() < 0 ? "-" : "+") << fmt12(std::abs(z.imag())) << 'i';
        }
        o << '\n';
      }
      if (!cl.claim.note.empty()) o << "    " << cl.claim.note << '\n';
    }
  }

  if (!r.verifications.empty()) {
    o << "\nverifications\n";
    o << "  " << pad("theorem", 26) << pad("verdict", 18) << pad("predicted [lower, upper]", 34) << "measured [A, B]\n";
    for (const auto& v : r.verifications) {
      std::string verdict(to_string(v.verdict));
      if (v.vacuous) verdict += "*";
      o << "  " << pad(std::string(to_string(v.theorem_id)), 26) << pad(verdict, 18)
        << pad("[" + fmt12(v.predicted_lower) + ", " + fmt12(v.predicted_upper) + "]", 34);
      if (v.verdict == Verdict::HypothesesUnmet) {
        o << "-\n";
      } else {
        o << "[" << fmt12(v.measured.lower_A) << ", " << fmt12(v.measured.upper_B) << "]\n";
      }
      for (const auto& h : v.hypotheses) {
        if (!h.ok) o << "      unmet " << h.name << ": " << h.detail << '\n';
      }
      if (v.verdict == Verdict::Violated) {
        for (const auto& n : v.notes) o << "      " << n << '\n';
      }
    }
    if (std::any_of(r.verifications.begin(), r.verifications.end(), [](const auto& v) { return v.vacuous; })) {
      o << "  * premise of the implication fails; confirmed vacuously\n";
    }
  }
  o << "\nelapsed " << fmt12(r.timing.elapsed_seconds) << " s\n";
  return o.str();
}

}  // namespace biframe::cli
