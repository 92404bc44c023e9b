#include "semired/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "semired/errors.hpp"

namespace semired {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing key '") + key + "'");
  return obj.at(key);
}

std::uint64_t to_count(const json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string("expected a non-negative integer for ") + what);
  return j.get<std::uint64_t>();
}

Rational to_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  bad("expected a rational string, got " + j.dump());
}

QMat to_qmat(const json& j, std::size_t width) {
  if (!j.is_array()) bad("expected a list of rows");
  QMat out(0, width);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != width)
      bad("row " + row.dump() + " should have " + std::to_string(width) + " entries");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(to_rational(x));
    out.append_row(r);
  }
  return out;
}

json from_qmat(const QMat& a) {
  json out = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(format_rational(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

ChainMat to_chainmat(const json& j, std::size_t width) {
  if (!j.is_array()) bad("expected a list of rows");
  ChainMat out(0, width);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != width)
      bad("row " + row.dump() + " should have " + std::to_string(width) + " entries");
    std::vector<mpz_class> r;
    for (const auto& x : row) {
      if (!x.is_string()) bad("expected an integer string, got " + x.dump());
      mpz_class v;
      if (v.set_str(x.get<std::string>(), 10) != 0) bad("malformed integer '" + x.get<std::string>() + "'");
      r.push_back(v);
    }
    out.append_row(r);
  }
  return out;
}

json from_chainmat(const ChainMat& a) {
  json out = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j).get_str());
    out.push_back(std::move(row));
  }
  return out;
}

FpMat to_fpmat(const json& j, std::size_t width, std::uint32_t p) {
  if (!j.is_array()) bad("expected a list of rows");
  FpMat out(0, width);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != width)
      bad("row " + row.dump() + " should have " + std::to_string(width) + " entries");
    std::vector<std::uint32_t> r;
    for (const auto& x : row) {
      const auto v = to_count(x, "a residue");
      if (v >= p) throw Error(ErrorKind::InvalidInput, "residue " + std::to_string(v) + " is not reduced mod p");
      r.push_back(static_cast<std::uint32_t>(v));
    }
    out.append_row(r);
  }
  return out;
}

json from_fpmat(const FpMat& a) {
  json out = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

ChainDims to_dims(const json& j) {
  ChainDims out;
  if (!j.is_array()) bad("expected a list of dimension lists");
  for (const auto& chain : j) {
    if (!chain.is_array()) bad("expected a list of dimensions");
    std::vector<std::size_t> d;
    for (const auto& x : chain) d.push_back(to_count(x, "a dimension"));
    out.push_back(std::move(d));
  }
  return out;
}

Problem problem_from_json(const json& j) {
  Problem pr;
  pr.p = to_count(field(j, "p"), "p");
  if (!is_prime(pr.p)) throw Error(ErrorKind::InvalidInput, "p = " + std::to_string(pr.p) + " is not prime");
  if (pr.p > 0xffff) throw Error(ErrorKind::InvalidInput, "p is too large");
  const std::size_t n = to_count(field(j, "n"), "n");
  if (n == 0) throw Error(ErrorKind::InvalidInput, "n must be positive");
  pr.filtration.n = n;
  const json& chains = field(j, "chains");
  if (!chains.is_array()) bad("'chains' must be a list");
  for (const auto& chain : chains) {
    if (!chain.is_array()) bad("each chain must be a list of subspaces");
    std::vector<KSubspace> steps;
    for (const auto& sub : chain) steps.emplace_back(n, to_qmat(sub, n));
    pr.filtration.chains.push_back(std::move(steps));
  }
  pr.filtration.validate();
  if (j.contains("lattice") && !j.at("lattice").is_null()) {
    QMat basis = to_qmat(j.at("lattice"), n);
    if (basis.rows() != n) throw Error(ErrorKind::InvalidInput, "lattice needs exactly n basis vectors");
    Lattice check(basis);  // throws on a singular basis
    pr.lattice = std::move(basis);
  }
  if (j.contains("caps")) {
    const json& caps = j.at("caps");
    if (!caps.is_object()) bad("'caps' must be an object");
    if (caps.contains("enum")) pr.caps.enumeration = to_count(caps.at("enum"), "caps.enum");
    if (caps.contains("lift")) pr.caps.lift = to_count(caps.at("lift"), "caps.lift");
    if (caps.contains("iter")) pr.caps.iterations = to_count(caps.at("iter"), "caps.iter");
    if (pr.caps.lift == 0) throw Error(ErrorKind::InvalidInput, "caps.lift must be at least 1");
  }
  return pr;
}

json problem_to_json(const Problem& pr) {
  json j;
  j["p"] = pr.p;
  j["n"] = pr.n();
  json chains = json::array();
  for (const auto& chain : pr.filtration.chains) {
    json c = json::array();
    for (const auto& step : chain) c.push_back(from_qmat(step.basis()));
    chains.push_back(std::move(c));
  }
  j["chains"] = std::move(chains);
  if (pr.lattice) j["lattice"] = from_qmat(*pr.lattice);
  j["caps"] = {{"enum", pr.caps.enumeration}, {"lift", pr.caps.lift}, {"iter", pr.caps.iterations}};
  return j;
}

}  // namespace

Problem parse_problem(std::string_view text) { return problem_from_json(parse_json(text)); }

std::string serialize_problem(const Problem& problem) { return problem_to_json(problem).dump(2) + "\n"; }

TraceFile parse_trace(std::string_view text) {
  const json j = parse_json(text);
  TraceFile tf;
  tf.problem = problem_from_json(field(j, "problem"));
  const std::size_t n = tf.problem.n();
  const auto p = static_cast<std::uint32_t>(tf.problem.p);
  const PrimeField f{p};
  const json& steps = field(j, "steps");
  if (!steps.is_array()) bad("'steps' must be a list");
  for (const auto& s : steps) {
    LangtonStep st;
    st.lattice = to_qmat(field(s, "lattice"), n);
    st.residue_dims = to_dims(field(s, "residue_dims"));
    st.destabilizer = FpSubspace(f, n, to_fpmat(field(s, "destabilizer"), n, p));
    const json& slope = field(s, "slope");
    if (!slope.is_string()) bad("'slope' must be a rational string");
    st.slope = parse_rational(slope.get<std::string>());
    st.dim = to_count(field(s, "dim"), "dim");
    st.m = to_count(field(s, "m"), "m");
    const json& w = field(s, "witness");
    st.witness.level = to_count(field(w, "level"), "witness.level");
    st.witness.lifted_basis = to_chainmat(field(w, "lifted_basis"), n);
    st.witness.complement = to_chainmat(field(w, "complement"), n);
    st.witness.graph = to_chainmat(field(w, "graph"), st.witness.complement.rows());
    const json& certs = field(w, "certificates");
    if (!certs.is_array()) bad("'certificates' must be a list");
    for (const auto& chain : certs) {
      if (!chain.is_array()) bad("certificate chains must be lists");
      std::vector<ChainMat> c;
      for (const auto& m : chain) c.push_back(to_chainmat(m, n));
      st.witness.certificates.push_back(std::move(c));
    }
    st.next_lattice = to_qmat(field(s, "next_lattice"), n);
    if (s.contains("no_splitting") && !s.at("no_splitting").is_null()) {
      if (!s.at("no_splitting").is_boolean()) bad("'no_splitting' must be a boolean");
      st.no_splitting = s.at("no_splitting").get<bool>();
    }
    tf.trace.steps.push_back(std::move(st));
  }
  tf.trace.final_lattice = to_qmat(field(j, "final_lattice"), n);
  tf.trace.final_dims = to_dims(field(j, "final_dims"));
  const json& verdict = field(j, "verdict");
  if (!verdict.is_string()) bad("'verdict' must be a string");
  tf.verdict = verdict.get<std::string>();
  return tf;
}

std::string serialize_trace(const TraceFile& tf) {
  json j;
  j["problem"] = problem_to_json(tf.problem);
  json steps = json::array();
  for (const auto& st : tf.trace.steps) {
    json s;
    s["lattice"] = from_qmat(st.lattice);
    s["residue_dims"] = st.residue_dims;
    s["destabilizer"] = from_fpmat(st.destabilizer.basis());
    s["slope"] = format_rational(st.slope);
    s["dim"] = st.dim;
    s["m"] = st.m;
    json certs = json::array();
    for (const auto& chain : st.witness.certificates) {
      json c = json::array();
      for (const auto& m : chain) c.push_back(from_chainmat(m));
      certs.push_back(std::move(c));
    }
    s["witness"] = {{"level", st.witness.level},
                    {"graph", from_chainmat(st.witness.graph)},
                    {"lifted_basis", from_chainmat(st.witness.lifted_basis)},
                    {"complement", from_chainmat(st.witness.complement)},
                    {"certificates", std::move(certs)}};
    s["next_lattice"] = from_qmat(st.next_lattice);
    s["no_splitting"] = st.no_splitting ? json(*st.no_splitting) : json(nullptr);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  j["final_lattice"] = from_qmat(tf.trace.final_lattice);
  j["final_dims"] = tf.trace.final_dims;
  j["verdict"] = tf.verdict;
  return j.dump(2) + "\n";
}

TypeDatum parse_type(std::string_view text) {
  const json j = parse_json(text);
  TypeDatum t;
  if (j.contains("id")) {
    if (!j.at("id").is_string()) bad("'id' must be a string");
    t.id = j.at("id").get<std::string>();
  }
  t.n = to_count(field(j, "n"), "n");
  const json& chains = field(j, "chains");
  if (!chains.is_array()) bad("'chains' must be a list");
  for (const auto& chain : chains) {
    if (!chain.is_array()) bad("each chain must be a list of [j, l] jumps");
    std::vector<std::pair<std::size_t, std::size_t>> js;
    for (const auto& jump : chain) {
      if (!jump.is_array() || jump.size() != 2) bad("jump " + jump.dump() + " must be [j, l]");
      js.emplace_back(to_count(jump[0], "j"), to_count(jump[1], "l"));
    }
    t.jumps.push_back(std::move(js));
  }
  t.validate();
  return t;
}

std::string serialize_type(const TypeDatum& t) {
  json j;
  j["id"] = t.id;
  j["n"] = t.n;
  json chains = json::array();
  for (const auto& js : t.jumps) {
    json c = json::array();
    for (const auto& [a, b] : js) c.push_back({a, b});
    chains.push_back(std::move(c));
  }
  j["chains"] = std::move(chains);
  return j.dump(2) + "\n";
}

QMat parse_matrix(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("expected a non-empty list of rows");
  return to_qmat(j, j[0].size());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << text;
}

}  // namespace semired
