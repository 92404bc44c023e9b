#include "semired/certificate.hpp"

#include "semired/errors.hpp"

namespace semired {

namespace {

Verdict fail(const char* why, std::optional<std::size_t> step, std::string detail = {}) {
  return {false, why, step, std::move(detail)};
}

bool same_problem(const Problem& a, const Problem& b) {
  if (a.p != b.p || a.n() != b.n()) return false;
  if (a.filtration.chains != b.filtration.chains) return false;
  return a.start_lattice().same_as(b.start_lattice(), a.p);
}

FpMat mod_p(const ChainMat& a, unsigned long p) {
  FpMat out(a.rows(), a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), a(i, j).get_mpz_t(), p);
      out(i, j) = static_cast<std::uint32_t>(r.get_ui());
    }
  return out;
}

// Conditions (1)-(3) on the recorded witness, using module primitives only.
std::string witness_problem(const ReductionSequence& seq, const LiftWitness& w, unsigned long m) {
  const std::size_t n = seq.n(), b = seq.sub_rank(), c = seq.quotient_rank();
  const PrimeField& f = seq.residue.field;
  if (w.level != m) return "witness level " + std::to_string(w.level) + " differs from m";
  if (w.lifted_basis.rows() != b || w.complement.rows() != c) return "witness has the wrong shape";
  if (rank(f, mod_p(vstack(w.lifted_basis, w.complement), seq.p)) != n) return "B~ + G~ is not all of M/p^m";
  if (!(FpSubspace(f, n, mod_p(w.lifted_basis, seq.p)) == seq.destabilizer)) return "B~ does not reduce to B";
  if (w.certificates.size() != seq.saturated.size()) return "certificate count differs from chain count";
  const ChainRing ring(seq.p, m);
  const ChainMat lifted = reduce(ring, w.lifted_basis);
  for (std::size_t i = 0; i < seq.saturated.size(); ++i) {
    if (w.certificates[i].size() != seq.saturated[i].size()) return "certificate steps differ from chain length";
    for (std::size_t j = 0; j < seq.saturated[i].size(); ++j) {
      const QMat& sat = seq.saturated[i][j];
      ChainMat step(sat.rows(), n);
      for (std::size_t r = 0; r < sat.rows(); ++r)
        for (std::size_t k = 0; k < n; ++k) step(r, k) = reduce_mod(sat(r, k), seq.p, m);
      const ChainMat& cert = w.certificates[i][j];
      const std::string where = " (chain " + std::to_string(i + 1) + ", step " + std::to_string(j + 1) + ")";
      if (cert.rows() > 0 && cert.cols() != n) return "certificate has the wrong width" + where;
      for (std::size_t r = 0; r < cert.rows(); ++r) {
        const auto v = reduce(ring, cert).row(r);
        if (!module_contains(ring, step, v)) return "certificate outside Fil~" + where;
        if (!module_contains(ring, lifted, v)) return "certificate outside B~" + where;
      }
      if (!(FpSubspace(f, n, mod_p(cert, seq.p)) == seq.residue_meets[i][j]))
        return "certificates do not reduce onto B ∩ Fil" + where;
    }
  }
  return {};
}

bool liftable_above(const ReductionSequence& seq, unsigned long m, std::uint64_t cap) {
  mpz_class count = 1;
  const mpz_class per = prime_power(seq.p, m);
  for (std::size_t t = 0; t < seq.sub_rank() * seq.quotient_rank(); ++t) count *= per;
  if (count <= mpz_class(std::to_string(cap))) return is_liftable(seq, m + 1, cap).has_value();
  return liftable_at(seq, m + 1).witness.has_value();
}

Verdict check(const Problem& problem, const TraceFile& tf, std::uint64_t enum_cap) {
  if (!same_problem(problem, tf.problem)) return fail(reason::kProblemEcho, std::nullopt);
  const unsigned long p = problem.p;
  const KFiltration& fil = problem.filtration;
  const std::uint64_t cap = problem.caps.enumeration;
  Lattice expected = problem.start_lattice();
  const auto& steps = tf.trace.steps;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const LangtonStep& st = steps[k];
    const Lattice lattice(st.lattice);
    if (!lattice.same_as(expected, p)) return fail(reason::kLatticeChain, k);
    const FilteredSpace res = residue_filtration(lattice, fil, p);
    if (chain_dims(res) != st.residue_dims) return fail(reason::kResidueDims, k);
    if (is_semistable(res, cap).semistable) return fail(reason::kDestabilizer, k, "reduction is already semistable");
    const Destabilizer d = max_destabilizer(res, cap);
    if (!(d.subspace == st.destabilizer) || d.slope != st.slope || d.dim != st.dim)
      return fail(reason::kDestabilizer, k);
    if (st.m < 1) return fail(reason::kWitness, k, "m must be at least 1");
    const ReductionSequence seq = make_reduction_sequence(lattice, fil, st.destabilizer, p);
    if (liftable_above(seq, st.m, enum_cap)) return fail(reason::kLiftableAbove, k);
    if (const std::string why = witness_problem(seq, st.witness, st.m); !why.empty())
      return fail(reason::kWitness, k, why);
    const Lattice next(st.next_lattice);
    if (!elementary_modification(lattice, st.witness.lifted_basis, p, st.m).same_as(next, p))
      return fail(reason::kModification, k);
    if (k > 0 && !lex_less(st.slope, st.dim, steps[k - 1].slope, steps[k - 1].dim)) return fail(reason::kDescent, k);
    expected = next;
  }
  const Lattice final_lattice(tf.trace.final_lattice);
  if (!final_lattice.same_as(expected, p)) return fail(reason::kFinalLattice, std::nullopt);
  const FilteredSpace res = residue_filtration(final_lattice, fil, p);
  if (!is_semistable(res, cap).semistable) return fail(reason::kFinalUnstable, std::nullopt);
  if (chain_dims(res) != tf.trace.final_dims) return fail(reason::kResidueDims, std::nullopt, "final reduction");
  return {};
}

}  // namespace

std::string Verdict::message() const {
  if (ok) return "ok";
  std::string out = reason;
  if (step) out += " at step " + std::to_string(*step + 1);
  if (!detail.empty()) out += ": " + detail;
  return out;
}

Verdict verify_trace(const Problem& problem, const TraceFile& trace, std::uint64_t enum_cap) {
  try {
    return check(problem, trace, enum_cap);
  } catch (const Error& e) {
    return fail(reason::kMalformed, std::nullopt, e.what());
  }
}

}  // namespace semired
