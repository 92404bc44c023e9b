#include "semired/langton.hpp"

#include <stdexcept>

#include "semired/errors.hpp"

namespace semired {

namespace {

FpMat reduce_integral(const QMat& a, unsigned long p) {
  FpMat out(a.rows(), a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = static_cast<std::uint32_t>(reduce_mod(a(i, j), p, 1).get_ui());
  return out;
}

FpMat coefficients(const PrimeField& f, const FpMat& basis, const FpMat& rows) {
  FpMat out(0, basis.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto c = solve_left(f, basis, rows.row(r));
    if (!c) throw std::logic_error("row outside the expected span");
    out.append_row(*c);
  }
  return out;
}

}  // namespace

ChainDims chain_dims(const FilteredSpace& x) {
  ChainDims out;
  for (const auto& chain : x.chains) {
    std::vector<std::size_t> dims;
    for (const auto& step : chain) dims.push_back(step.dim());
    out.push_back(std::move(dims));
  }
  return out;
}

ReversedSequence reversed_sequence(const ReductionSequence& seq, const Lattice& modified, unsigned long m) {
  const std::size_t n = seq.n();
  const unsigned long p = seq.p;
  const PrimeField& f = seq.residue.field;
  ReversedSequence rev;
  rev.modified = residue_filtration(modified, seq.filtration, p);
  const QMat t = seq.lattice.coordinates(modified.basis());
  rev.to_old = reduce_integral(t, p);
  rev.kernel = FpSubspace(f, n, left_kernel(f, rev.to_old));
  rev.image = FpSubspace(f, n, rev.to_old);
  const QMat t_inv = inverse(t);
  const Rational pm(prime_power(p, m));
  QMat g(0, n);
  for (std::size_t q : seq.complement) {
    auto row = t_inv.row(q);
    for (auto& v : row) v *= pm;
    g.append_row(row);
  }
  rev.kernel_basis = reduce_integral(g, p);
  return rev;
}

std::string reversed_filtration_mismatch(const ReductionSequence& seq, const ReversedSequence& rev) {
  const PrimeField& f = seq.residue.field;
  const std::size_t n = seq.n(), c = seq.quotient_rank();
  for (std::size_t i = 0; i < seq.residue.chains.size(); ++i)
    for (std::size_t j = 0; j < seq.residue.chains[i].size(); ++j) {
      const FpMat& step = rev.modified.chains[i][j].basis();
      const std::string where = " (chain " + std::to_string(i + 1) + ", step " + std::to_string(j + 1) + ")";
      if (!(FpSubspace(f, n, mul(f, step, rev.to_old)) == seq.residue_meets[i][j]))
        return "quotient filtration differs from B ∩ Fil" + where;
      const FpMat meet = intersect_rowspaces(f, rev.kernel_basis, step, n);
      const FpSubspace on_g(f, c, coefficients(f, rev.kernel_basis, meet));
      const FpMat& old_step = seq.residue.chains[i][j].basis();
      FpMat images(0, c);
      for (std::size_t r = 0; r < old_step.rows(); ++r)
        images.append_row(quotient_coordinates(f, seq.destabilizer, old_step.row(r)));
      if (!(on_g == FpSubspace(f, c, images))) return "sub filtration differs from image of Fil in G" + where;
    }
  return {};
}

bool verify_no_splitting(const ReversedSequence& rev, std::uint64_t cap) {
  const PrimeField& f = rev.modified.field;
  const std::size_t n = rev.modified.n, b = rev.image.dim(), c = rev.kernel_basis.rows();
  const std::size_t entries = b * c;
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < entries; ++t) {
    if (total > cap / f.p) throw Error(ErrorKind::EnumerationTooLarge, "too many sections to enumerate");
    total *= f.p;
  }
  const FpMat lifts = coefficients(f, rev.to_old, rev.image.basis());

  // Step filtrations on B, in coordinates of B's basis.
  std::vector<std::pair<FpMat, const FpMat*>> checks;
  for (const auto& chain : rev.modified.chains)
    for (const auto& step : chain) {
      const FpMat down = mul(f, step.basis(), rev.to_old);
      checks.emplace_back(coefficients(f, rev.image.basis(), down), &step.basis());
    }

  std::vector<std::uint32_t> digits(entries, 0);
  while (true) {
    FpMat section = lifts;
    for (std::size_t k = 0; k < b; ++k)
      for (std::size_t q = 0; q < c; ++q) {
        const std::uint32_t a = digits[k * c + q];
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          section(k, j) = f.add(section(k, j), f.mul(a, rev.kernel_basis(q, j)));
      }
    bool filtered = true;
    for (const auto& [coeff, target] : checks) {
      const FpMat img = mul(f, coeff, section);
      for (std::size_t r = 0; r < img.rows() && filtered; ++r)
        filtered = rowspace_contains(f, *target, img.row(r));
      if (!filtered) break;
    }
    if (filtered) return false;
    std::size_t i = 0;
    while (i < entries && ++digits[i] == f.p) digits[i++] = 0;
    if (i == entries) break;
  }
  return true;
}

Lattice langton_step(const Lattice& lattice, const KFiltration& fil, unsigned long p, LangtonTrace& trace,
                     const LangtonCaps& caps) {
  const FilteredSpace res = residue_filtration(lattice, fil, p);
  if (is_semistable(res, caps.enumeration).semistable)
    throw Error(ErrorKind::PreconditionViolated, "reduction is already semistable");
  const Destabilizer d = max_destabilizer(res, caps.enumeration);
  const ReductionSequence seq = make_reduction_sequence(lattice, fil, d.subspace, p);
  LiftOrder lo = max_lift_order(seq, caps.lift);
  if (lo.unbounded)
    throw Error(ErrorKind::GenericUnstable, "destabilizing sequence lifts to level " + std::to_string(caps.lift) +
                                                "; the generic fiber is unstable");
  const Lattice next = elementary_modification(lattice, lo.witness.lifted_basis, p, lo.order);

  const ReversedSequence rev = reversed_sequence(seq, next, lo.order);
  const PrimeField& f = res.field;
  if (rev.kernel.dim() != seq.quotient_rank() || !(rev.image == seq.destabilizer) ||
      !(FpSubspace(f, seq.n(), rev.kernel_basis) == rev.kernel))
    throw std::logic_error("reversed residue sequence is not exact");
  if (const std::string why = reversed_filtration_mismatch(seq, rev); !why.empty())
    throw std::logic_error("reversed residue sequence: " + why);

  LangtonStep step;
  step.lattice = lattice.basis();
  step.residue_dims = chain_dims(res);
  step.destabilizer = d.subspace;
  step.slope = d.slope;
  step.dim = d.dim;
  step.m = lo.order;
  step.witness = std::move(lo.witness);
  step.next_lattice = next.basis();
  try {
    step.no_splitting = verify_no_splitting(rev, caps.splitting);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EnumerationTooLarge) throw;
  }
  trace.steps.push_back(std::move(step));
  return next;
}

LangtonResult langton_run(const KFiltration& fil, unsigned long p, std::optional<Lattice> start,
                          const LangtonCaps& caps) {
  fil.validate();
  LangtonResult out{start ? *start : Lattice::standard(fil.n), {}};
  if (out.lattice.dim() != fil.n) throw Error(ErrorKind::InvalidInput, "lattice and filtration dimensions differ");
  while (true) {
    const FilteredSpace res = residue_filtration(out.lattice, fil, p);
    if (is_semistable(res, caps.enumeration).semistable) {
      out.trace.final_lattice = out.lattice.basis();
      out.trace.final_dims = chain_dims(res);
      return out;
    }
    if (out.trace.steps.size() >= caps.iterations)
      throw Error(ErrorKind::IterationCapExceeded,
                  "no semistable reduction after " + std::to_string(caps.iterations) + " steps");
    out.lattice = langton_step(out.lattice, fil, p, out.trace, caps);
    const auto& steps = out.trace.steps;
    if (steps.size() >= 2) {
      const auto& prev = steps[steps.size() - 2];
      const auto& cur = steps.back();
      if (!lex_less(cur.slope, cur.dim, prev.slope, prev.dim))
        throw std::logic_error("(slope, dim) of the destabilizer did not decrease");
    }
  }
}

}  // namespace semired
