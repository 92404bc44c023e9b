#include "commands.hpp"

#include <iostream>
#include <random>

#include "semired/certificate.hpp"
#include "semired/errors.hpp"
#include "semired/random_instance.hpp"

namespace semired::cli {

namespace {

Problem load(const std::string& input, const Overrides& o) {
  Problem pr = parse_problem(read_text_file(input));
  if (o.prime) {
    if (!is_prime(*o.prime)) throw Error(ErrorKind::InvalidInput, "--prime must be prime");
    pr.p = *o.prime;
  }
  if (o.lattice_file) {
    QMat basis = parse_matrix(read_text_file(*o.lattice_file));
    if (basis.rows() != pr.n() || basis.cols() != pr.n())
      throw Error(ErrorKind::InvalidInput, "--lattice must be an n x n basis");
    Lattice check(basis);
    pr.lattice = std::move(basis);
  }
  if (o.enum_cap) pr.caps.enumeration = *o.enum_cap;
  if (o.lift_cap) pr.caps.lift = *o.lift_cap;
  if (o.max_iter) pr.caps.iterations = *o.max_iter;
  if (pr.caps.lift == 0) throw Error(ErrorKind::InvalidInput, "--lift-cap must be at least 1");
  return pr;
}

std::string vector_name(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (v[i] != 1) out += std::to_string(v[i]);
    out += "e" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string span_name(const FpSubspace& w) {
  std::string out = "span(";
  for (std::size_t r = 0; r < w.dim(); ++r) out += (r ? ", " : "") + vector_name(w.basis().row(r));
  return out + ")";
}

std::string basis_name(const QMat& b) {
  std::string out = "<";
  for (std::size_t r = 0; r < b.rows(); ++r) {
    out += r ? ", (" : "(";
    for (std::size_t c = 0; c < b.cols(); ++c) out += (c ? "," : "") + format_rational(b(r, c));
    out += ")";
  }
  return out + ">";
}

}  // namespace

int report(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (const auto* se = dynamic_cast<const Error*>(&e)) {
    switch (se->kind()) {
      case ErrorKind::Parse:
      case ErrorKind::InvalidInput:
        return kParse;
      case ErrorKind::GenericUnstable:
        return kGenericUnstable;
      case ErrorKind::EnumerationTooLarge:
      case ErrorKind::IterationCapExceeded:
        return kCapExceeded;
      default:
        break;
    }
  }
  return kFailure;
}

int cmd_check(const std::string& input, const Overrides& o, std::ostream& out) {
  const Problem pr = load(input, o);
  const FilteredSpace res = residue_filtration(pr.start_lattice(), pr.filtration, pr.p);
  const Rational mu = slope(res);
  out << "weight " << weight(res) << ", dim " << res.n << ", mu = " << format_rational(mu) << "\n";
  if (is_semistable(res, pr.caps.enumeration).semistable) {
    out << "semistable, mu = " << format_rational(mu) << "\n";
  } else {
    const Destabilizer d = max_destabilizer(res, pr.caps.enumeration);
    out << "unstable, witness " << span_name(d.subspace) << ", mu = " << format_rational(d.slope) << " > "
        << format_rational(mu) << "\n";
  }
  return kOk;
}

int cmd_run(const std::string& input, const Overrides& o, const std::optional<std::string>& trace_out,
            std::ostream& out, std::ostream& err) {
  const Problem pr = load(input, o);
  const LangtonResult r = langton_run(pr.filtration, pr.p, pr.start_lattice(), pr.caps);
  const std::string text = serialize_trace(TraceFile{pr, r.trace, "semistable"});
  if (trace_out)
    write_text_file(*trace_out, text);
  else
    out << text;
  err << r.trace.steps.size() << " step(s);";
  for (const auto& st : r.trace.steps) err << " m=" << st.m;
  err << " final lattice " << basis_name(r.trace.final_lattice) << "\n";
  return kOk;
}

int cmd_verify(const std::string& input, const std::string& trace, const Overrides& o, std::ostream& out,
               std::ostream& err) {
  const Problem pr = load(input, o);
  const TraceFile tf = parse_trace(read_text_file(trace));
  const Verdict v = verify_trace(pr, tf, pr.caps.enumeration);
  if (!v.ok) {
    err << "verification failed: " << v.message() << "\n";
    return kVerification;
  }
  out << "ok, " << tf.trace.steps.size() << " step(s) verified\n";
  return kOk;
}

int cmd_count_flags(const std::vector<std::uint32_t>& qs, const std::string& type_file,
                    std::optional<std::uint64_t> enum_cap, std::ostream& out) {
  const TypeDatum t = parse_type(read_text_file(type_file));
  out << "q,type-id,total,semistable\n";
  for (std::uint32_t q : qs) out << csv_row(q, t, count_semistable(q, t, enum_cap.value_or(kDefaultEnumerationCap))) << "\n";
  return kOk;
}

int cmd_fuzz(std::uint64_t seed, std::size_t count, const Overrides& o, std::ostream& out) {
  std::mt19937_64 rng(seed);
  RandomShape shape;
  if (o.prime) shape.primes = {*o.prime};
  LangtonCaps caps;
  if (o.enum_cap) caps.enumeration = *o.enum_cap;
  if (o.lift_cap) caps.lift = *o.lift_cap;
  if (o.max_iter) caps.iterations = *o.max_iter;
  std::size_t done = 0, steps = 0, rejected = 0, split = 0;
  while (done < count) {
    const auto inst = random_instance(rng, shape);
    if (!inst) continue;
    if (generic_semistability(inst->filtration, inst->p).verdict != GenericStability::Verdict::Semistable) continue;
    Problem pr;
    pr.p = inst->p;
    pr.filtration = inst->filtration;
    pr.lattice = random_lattice_basis(rng, inst->filtration.n, inst->p);
    pr.caps = caps;
    const LangtonResult r = langton_run(pr.filtration, pr.p, pr.start_lattice(), caps);
    const TraceFile tf{pr, r.trace, "semistable"};
    const Verdict v = verify_trace(pr, parse_trace(serialize_trace(tf)), caps.enumeration);
    if (!v.ok) {
      ++rejected;
      out << "instance " << done << ": " << v.message() << "\n";
    }
    for (const auto& st : r.trace.steps)
      if (st.no_splitting && !*st.no_splitting) ++split;
    steps += r.trace.steps.size();
    ++done;
  }
  out << "instances " << done << ", steps " << steps << ", rejected traces " << rejected << ", split steps " << split
      << "\n";
  return rejected || split ? kVerification : kOk;
}

}  // namespace semired::cli
