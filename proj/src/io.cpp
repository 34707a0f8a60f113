#include "curlset/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace curlset {

namespace {

void requireObject(const Json& j, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
}

void requireArray(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a JSON array");
}

void checkKeys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  requireObject(j, what);
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(std::string(what) + ": unknown field '" + key + "'");
  }
}

const Json& field(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

int intFrom(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

bool boolFrom(const Json& j, const char* what) {
  if (!j.is_boolean()) throw ParseError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

std::string stringFrom(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<int> intList(const Json& j, const char* what) {
  requireArray(j, what);
  std::vector<int> out;
  for (const auto& x : j) out.push_back(intFrom(x, what));
  return out;
}

Json stringList(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

std::vector<std::string> stringsFrom(const Json& j, const char* what) {
  requireArray(j, what);
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(stringFrom(x, what));
  return out;
}

}  // namespace

Json toJson(const Rational& x) { return formatRational(x); }

Json toJson(const VectorQ& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(formatRational(v(i)));
  return out;
}

Json toJson(const MatrixQ& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(toJson(VectorQ(m.row(i).transpose())));
  return out;
}

Json toJson(const Form& w) { return {{"n", w.dim()}, {"k", w.degree()}, {"coeffs", toJson(w.coeffs())}}; }

Json toJson(const Box& b) { return {{"lower", toJson(b.lower)}, {"upper", toJson(b.upper)}}; }

Json toJson(const BoxDomain& d) {
  Json out = Json::array();
  for (const auto& b : d.boxes()) out.push_back(toJson(b));
  return out;
}

Json toJson(const PAField& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells) {
    Json hs = Json::array();
    for (const auto& h : c.halfspaces) hs.push_back({{"normal", toJson(h.normal)}, {"offset", toJson(h.offset)}});
    cells.push_back({{"halfspaces", hs},
                     {"affine", {{"matrix", toJson(c.map.matrix)}, {"offset", toJson(c.map.offset)}}},
                     {"block", c.block}});
  }
  return {{"n", f.n}, {"cells", cells}, {"domain", toJson(f.domain)}, {"covered_volume", toJson(f.coveredVolume)}};
}

Json toJson(const RicoCertificate& c) {
  Json out{{"inside", c.inside}};
  if (c.inside) out["weights"] = toJson(c.weights);
  else out["separator"] = toJson(c.separator);
  return out;
}

Json toJson(const ClassificationReport& r) {
  Json parts = Json::array();
  for (const auto& p : r.partition) parts.push_back({{"indices", p.indices}, {"line", toJson(p.line)}});
  return {{"n", r.n},
          {"span_dim", r.spanDim},
          {"pairwise_wedge_zero", r.pairwiseWedgeZero},
          {"pairwise_rank_diff_le2", r.pairwiseRankDiffLe2},
          {"contains_zero", r.containsZero},
          {"common_line", r.commonLine ? toJson(*r.commonLine) : Json(nullptr)},
          {"rico", toJson(r.rico)},
          {"verdict", verdictName(r.verdict)},
          {"partition", parts},
          {"notes", stringList(r.notes)}};
}

Json toJson(const VerificationReport& r) {
  Json curls = Json::array();
  for (const auto& c : r.perCellCurl)
    curls.push_back({{"cell", c.cell},
                     {"curl", toJson(c.curl)},
                     {"match", c.match >= 0 ? Json(c.match) : Json(nullptr)},
                     {"volume", toJson(c.volume)}});
  Json measures = Json::array();
  for (const auto& m : r.measures) measures.push_back(toJson(m));
  Json violations = Json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"kind", violationName(v.kind)}, {"cells", v.cells}, {"detail", v.detail}});
  return {{"per_cell_curl", curls},
          {"discarded_cells", r.discardedCells},
          {"membership_ok", r.membershipOk},
          {"continuity_ok", r.continuityOk},
          {"boundary_ok", r.boundaryOk},
          {"disjoint_ok", r.disjointOk},
          {"domain_ok", r.domainOk},
          {"measures_ok", r.measuresOk},
          {"coverage_ok", r.coverageOk},
          {"measures", measures},
          {"covered_volume", toJson(r.coveredVolume)},
          {"domain_volume", toJson(r.domainVolume)},
          {"integral", toJson(r.integral)},
          {"violations", violations},
          {"notes", stringList(r.notes)},
          {"verdict", r.pass ? "PASS" : "FAIL"}};
}

Json toJson(const MapSpec& s) {
  return {{"n", s.n}, {"k", s.k}, {"name", s.name}, {"linear", toJson(s.linear)}, {"offset", toJson(s.offset)}};
}

Json toJson(const ProbeResult& r) {
  return {{"sample_counts", r.sampleCounts},
          {"trajectory", r.trajectory},
          {"stabilized", r.stabilized},
          {"final_dim", r.finalDim}};
}

Json toJson(const ProbeSummary& s) {
  Json hist = Json::object();
  for (const auto& [dim, count] : s.histogram) hist[std::to_string(dim)] = count;
  return {{"probe", s.probe},
          {"n", s.n},
          {"k", s.k},
          {"trials", s.trials},
          {"seed", s.seed},
          {"forbidden", s.forbidden},
          {"histogram", hist},
          {"unstabilized", s.unstabilized},
          {"violations", s.violations},
          {"note", "sampled dimensions are lower bounds; only the forbidden value is asserted absent"}};
}

Rational rationalFromJson(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string or an integer");
  try {
    return parseRational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

VectorQ vectorFromJson(const Json& j, std::optional<int> size) {
  requireArray(j, "vector");
  if (size && static_cast<int>(j.size()) != *size)
    throw ParseError("vector needs " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  VectorQ v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rationalFromJson(j[i]);
  return v;
}

MatrixQ matrixFromJson(const Json& j, int rows, int cols) {
  requireArray(j, "matrix");
  if (static_cast<int>(j.size()) != rows) throw ParseError("matrix needs " + std::to_string(rows) + " rows");
  MatrixQ m(rows, cols);
  for (int i = 0; i < rows; ++i) m.row(i) = vectorFromJson(j[static_cast<std::size_t>(i)], cols).transpose();
  return m;
}

Form formFromJson(const Json& j, std::optional<int> n, std::optional<int> k) {
  checkKeys(j, {"n", "k", "coeffs"}, "form");
  const int fn = intFrom(field(j, "n", "form"), "form n");
  const int fk = intFrom(field(j, "k", "form"), "form k");
  if (n && fn != *n) throw ParseError("form has n = " + std::to_string(fn) + ", expected " + std::to_string(*n));
  if (k && fk != *k) throw ParseError("form has k = " + std::to_string(fk) + ", expected " + std::to_string(*k));
  if (fn < 0 || fn > kMaxDimension || fk < 0 || fk > fn) throw ParseError("form dimension or degree out of range");
  const auto size = static_cast<int>(binomial(fn, fk));
  return Form(fn, fk, vectorFromJson(field(j, "coeffs", "form"), size));
}

Box boxFromJson(const Json& j, std::optional<int> n) {
  checkKeys(j, {"lower", "upper"}, "box");
  Box b{vectorFromJson(field(j, "lower", "box"), n), VectorQ()};
  b.upper = vectorFromJson(field(j, "upper", "box"), static_cast<int>(b.lower.size()));
  return b;
}

BoxDomain domainFromJson(const Json& j, std::optional<int> n) {
  const Json* list = &j;
  if (j.is_object() && j.contains("boxes")) {
    checkKeys(j, {"boxes"}, "domain");
    list = &j["boxes"];
  }
  std::vector<Box> boxes;
  if (list->is_object()) {
    boxes.push_back(boxFromJson(*list, n));
  } else {
    requireArray(*list, "domain");
    for (const auto& b : *list) boxes.push_back(boxFromJson(b, n));
  }
  try {
    return BoxDomain(std::move(boxes));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

PAField fieldFromJson(const Json& j) {
  checkKeys(j, {"n", "cells", "domain", "covered_volume"}, "mesh");
  PAField f;
  f.n = intFrom(field(j, "n", "mesh"), "mesh n");
  if (f.n < 1 || f.n > kMaxDimension) throw ParseError("mesh dimension out of range");
  const Json& cells = field(j, "cells", "mesh");
  requireArray(cells, "cells");
  for (const auto& c : cells) {
    checkKeys(c, {"halfspaces", "affine", "block"}, "cell");
    Cell cell;
    const Json& hs = field(c, "halfspaces", "cell");
    requireArray(hs, "halfspaces");
    for (const auto& h : hs) {
      checkKeys(h, {"normal", "offset"}, "halfspace");
      cell.halfspaces.push_back(
          {vectorFromJson(field(h, "normal", "halfspace"), f.n), rationalFromJson(field(h, "offset", "halfspace"))});
    }
    const Json& affine = field(c, "affine", "cell");
    checkKeys(affine, {"matrix", "offset"}, "affine");
    cell.map.matrix = matrixFromJson(field(affine, "matrix", "affine"), f.n, f.n);
    cell.map.offset = vectorFromJson(field(affine, "offset", "affine"), f.n);
    if (c.contains("block")) cell.block = intFrom(c["block"], "block");
    f.cells.push_back(std::move(cell));
  }
  f.domain = domainFromJson(field(j, "domain", "mesh"), f.n);
  f.coveredVolume = rationalFromJson(field(j, "covered_volume", "mesh"));
  return f;
}

RicoCertificate ricoFromJson(const Json& j, int n) {
  checkKeys(j, {"inside", "weights", "separator"}, "rico");
  RicoCertificate c;
  c.inside = boolFrom(field(j, "inside", "rico"), "rico inside");
  if (c.inside) c.weights = vectorFromJson(field(j, "weights", "rico"));
  else c.separator = formFromJson(field(j, "separator", "rico"), n, 2);
  return c;
}

ClassificationReport classificationFromJson(const Json& j) {
  const char* what = "classification";
  checkKeys(j, {"n", "span_dim", "pairwise_wedge_zero", "pairwise_rank_diff_le2", "contains_zero", "common_line", "rico",
                "verdict", "partition", "notes"},
            what);
  ClassificationReport r;
  r.n = intFrom(field(j, "n", what), "n");
  r.spanDim = intFrom(field(j, "span_dim", what), "span_dim");
  r.pairwiseWedgeZero = boolFrom(field(j, "pairwise_wedge_zero", what), "pairwise_wedge_zero");
  r.pairwiseRankDiffLe2 = boolFrom(field(j, "pairwise_rank_diff_le2", what), "pairwise_rank_diff_le2");
  r.containsZero = boolFrom(field(j, "contains_zero", what), "contains_zero");
  const Json& line = field(j, "common_line", what);
  if (!line.is_null()) r.commonLine = vectorFromJson(line, r.n);
  r.rico = ricoFromJson(field(j, "rico", what), r.n);
  try {
    r.verdict = verdictFromName(stringFrom(field(j, "verdict", what), "verdict"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const Json& parts = field(j, "partition", what);
  requireArray(parts, "partition");
  for (const auto& p : parts) {
    checkKeys(p, {"indices", "line"}, "partition part");
    r.partition.push_back({intList(field(p, "indices", "partition part"), "indices"),
                           vectorFromJson(field(p, "line", "partition part"), r.n)});
  }
  r.notes = stringsFrom(field(j, "notes", what), "notes");
  return r;
}

VerificationReport verificationFromJson(const Json& j) {
  const char* what = "verification";
  checkKeys(j, {"per_cell_curl", "discarded_cells", "membership_ok", "continuity_ok", "boundary_ok", "disjoint_ok",
                "domain_ok", "measures_ok", "coverage_ok", "measures", "covered_volume", "domain_volume", "integral",
                "violations", "notes", "verdict"},
            what);
  VerificationReport r;
  const Json& curls = field(j, "per_cell_curl", what);
  requireArray(curls, "per_cell_curl");
  for (const auto& c : curls) {
    checkKeys(c, {"cell", "curl", "match", "volume"}, "cell curl");
    CellCurl cc{intFrom(field(c, "cell", "cell curl"), "cell"), formFromJson(field(c, "curl", "cell curl")), -1,
                rationalFromJson(field(c, "volume", "cell curl"))};
    const Json& m = field(c, "match", "cell curl");
    if (!m.is_null()) cc.match = intFrom(m, "match");
    r.perCellCurl.push_back(std::move(cc));
  }
  r.discardedCells = intList(field(j, "discarded_cells", what), "discarded_cells");
  r.membershipOk = boolFrom(field(j, "membership_ok", what), "membership_ok");
  r.continuityOk = boolFrom(field(j, "continuity_ok", what), "continuity_ok");
  r.boundaryOk = boolFrom(field(j, "boundary_ok", what), "boundary_ok");
  r.disjointOk = boolFrom(field(j, "disjoint_ok", what), "disjoint_ok");
  r.domainOk = boolFrom(field(j, "domain_ok", what), "domain_ok");
  r.measuresOk = boolFrom(field(j, "measures_ok", what), "measures_ok");
  r.coverageOk = boolFrom(field(j, "coverage_ok", what), "coverage_ok");
  const Json& measures = field(j, "measures", what);
  requireArray(measures, "measures");
  for (const auto& m : measures) r.measures.push_back(rationalFromJson(m));
  r.coveredVolume = rationalFromJson(field(j, "covered_volume", what));
  r.domainVolume = rationalFromJson(field(j, "domain_volume", what));
  r.integral = vectorFromJson(field(j, "integral", what));
  const Json& violations = field(j, "violations", what);
  requireArray(violations, "violations");
  for (const auto& v : violations) {
    checkKeys(v, {"kind", "cells", "detail"}, "violation");
    try {
      r.violations.push_back({violationFromName(stringFrom(field(v, "kind", "violation"), "kind")),
                              intList(field(v, "cells", "violation"), "cells"),
                              stringFrom(field(v, "detail", "violation"), "detail")});
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  r.notes = stringsFrom(field(j, "notes", what), "notes");
  const std::string verdict = stringFrom(field(j, "verdict", what), "verdict");
  if (verdict != "PASS" && verdict != "FAIL") throw ParseError("verdict must be PASS or FAIL");
  r.pass = verdict == "PASS";
  return r;
}

MapSpec mapSpecFromJson(const Json& j) {
  checkKeys(j, {"n", "k", "name", "linear", "offset"}, "map spec");
  MapSpec s;
  s.n = intFrom(field(j, "n", "map spec"), "n");
  s.k = intFrom(field(j, "k", "map spec"), "k");
  if (s.n < 1 || s.n > kMaxDimension || s.k < 0 || s.k > s.n) throw ParseError("map spec dimension out of range");
  if (j.contains("name")) s.name = stringFrom(j["name"], "name");
  const auto rows = static_cast<int>(binomial(s.n, s.k));
  s.linear = matrixFromJson(field(j, "linear", "map spec"), rows, s.n);
  s.offset = vectorFromJson(field(j, "offset", "map spec"), rows);
  return s;
}

ProbeSummary probeSummaryFromJson(const Json& j) {
  const char* what = "probe summary";
  checkKeys(j, {"probe", "n", "k", "trials", "seed", "forbidden", "histogram", "unstabilized", "violations", "note"},
            what);
  ProbeSummary s;
  s.probe = stringFrom(field(j, "probe", what), "probe");
  s.n = intFrom(field(j, "n", what), "n");
  s.k = intFrom(field(j, "k", what), "k");
  s.trials = intFrom(field(j, "trials", what), "trials");
  const Json& seed = field(j, "seed", what);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw ParseError("seed must be an integer");
  s.seed = seed.get<std::uint64_t>();
  s.forbidden = intFrom(field(j, "forbidden", what), "forbidden");
  const Json& hist = field(j, "histogram", what);
  requireObject(hist, "histogram");
  for (const auto& [key, count] : hist.items()) {
    try {
      s.histogram[std::stoi(key)] = intFrom(count, "histogram count");
    } catch (const std::logic_error&) {
      throw ParseError("histogram key '" + key + "' is not an integer");
    }
  }
  s.unstabilized = intFrom(field(j, "unstabilized", what), "unstabilized");
  s.violations = intFrom(field(j, "violations", what), "violations");
  return s;
}

Json parseJsonText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

InstanceFile parseInstance(const std::string& text) {
  const Json j = parseJsonText(text);
  checkKeys(j, {"n", "elements", "partition_hint", "domain", "epsilon"}, "instance");
  const int n = intFrom(field(j, "n", "instance"), "n");
  if (n < 2 || n > kMaxDimension) throw ParseError("instance n must lie in [2, " + std::to_string(kMaxDimension) + "]");
  const Json& elements = field(j, "elements", "instance");
  requireArray(elements, "elements");
  std::vector<Form> forms;
  for (const auto& e : elements) forms.push_back(formFromJson(e, n, 2));
  std::optional<FormSet> set;
  try {
    set.emplace(n, std::move(forms));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  std::optional<PartitionHint> hint;
  if (j.contains("partition_hint") && !j["partition_hint"].is_null()) {
    requireArray(j["partition_hint"], "partition_hint");
    PartitionHint h;
    for (const auto& part : j["partition_hint"]) h.push_back(intList(part, "partition_hint part"));
    try {
      validatePartitionHint(*set, h);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    hint = std::move(h);
  }
  BoxDomain domain = j.contains("domain") ? domainFromJson(j["domain"], n) : BoxDomain::unitCube(n);
  Rational epsilon(1, 100);
  if (j.contains("epsilon")) {
    epsilon = rationalFromJson(j["epsilon"]);
    if (epsilon <= 0 || epsilon >= 1) throw ParseError("epsilon must lie in (0, 1)");
  }
  return InstanceFile{n, std::move(*set), std::move(hint), std::move(domain), epsilon};
}

Json toJson(const InstanceFile& f) {
  Json elements = Json::array();
  for (const auto& e : f.elements.elements()) elements.push_back(toJson(e));
  Json out{{"n", f.n}, {"elements", elements}, {"domain", toJson(f.domain)}, {"epsilon", toJson(f.epsilon)}};
  if (f.partitionHint) out["partition_hint"] = *f.partitionHint;
  return out;
}

std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string digestHex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace curlset
