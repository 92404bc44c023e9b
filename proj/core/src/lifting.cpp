#include "semired/lifting.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "semired/errors.hpp"

namespace semired {

namespace {

ChainMat reduce_q(const QMat& a, unsigned long p, unsigned long m) {
  ChainMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = reduce_mod(a(i, j), p, m);
  return out;
}

FpMat to_fp(const ChainMat& a, unsigned long p) {
  FpMat out(a.rows(), a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), a(i, j).get_mpz_t(), p);
      out(i, j) = static_cast<std::uint32_t>(r.get_ui());
    }
  return out;
}

ChainMat from_fp(const FpMat& a) {
  ChainMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

std::vector<mpz_class> flatten(const ChainMat& x) { return x.data(); }

ChainMat unflatten(const std::vector<mpz_class>& v, std::size_t b, std::size_t c) {
  ChainMat out(b, c);
  for (std::size_t k = 0; k < b; ++k)
    for (std::size_t l = 0; l < c; ++l) out(k, l) = v[k * c + l];
  return out;
}

ChainMat scaled(const ChainRing& ring, const ChainMat& a, const mpz_class& s) {
  ChainMat out = a;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = ring.mul(out(i, j), s);
  return out;
}

ChainMat residue_graph(const ReductionSequence& seq) {
  const auto& basis = seq.destabilizer.basis();
  ChainMat out(seq.sub_rank(), seq.quotient_rank());
  for (std::size_t k = 0; k < seq.sub_rank(); ++k)
    for (std::size_t l = 0; l < seq.quotient_rank(); ++l) out(k, l) = basis(k, seq.complement[l]);
  return out;
}

// E = f_Q - f_P * X for a step basis f (rows) at the ring's level.
ChainMat graph_defect(const ReductionSequence& seq, const ChainRing& ring, const ChainMat& f, const ChainMat& x) {
  const ChainMat fp = f.select_cols(seq.pivots);
  const ChainMat fq = f.select_cols(seq.complement);
  const ChainMat px = mul(ring, fp, x);
  ChainMat e(f.rows(), seq.quotient_rank());
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t l = 0; l < e.cols(); ++l) e(i, l) = ring.sub(fq(i, l), px(i, l));
  return e;
}

}  // namespace

ReductionSequence make_reduction_sequence(const Lattice& lattice, const KFiltration& fil, const FpSubspace& sub,
                                          unsigned long p) {
  ReductionSequence seq;
  seq.p = p;
  seq.lattice = lattice;
  seq.filtration = fil;
  seq.residue = residue_filtration(lattice, fil, p);
  const std::size_t n = lattice.dim();
  if (sub.ambient_dim() != n || sub.dim() == 0 || sub.dim() == n)
    throw Error(ErrorKind::PreconditionViolated, "destabilizing subspace must be nonzero and proper");
  seq.destabilizer = sub;
  seq.pivots = sub.pivots();
  std::vector<bool> is_piv(n, false);
  for (auto c : seq.pivots) is_piv[c] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_piv[j]) seq.complement.push_back(j);

  const PrimeField& f = seq.residue.field;
  for (std::size_t i = 0; i < fil.chains.size(); ++i) {
    std::vector<QMat> sats;
    std::vector<FpSubspace> meets;
    for (std::size_t j = 0; j < fil.chains[i].size(); ++j) {
      sats.push_back(intersect(lattice, fil.chains[i][j], p).generators);
      meets.emplace_back(f, n, intersect_rowspaces(f, sub.basis(), seq.residue.chains[i][j].basis(), n));
    }
    seq.saturated.push_back(std::move(sats));
    seq.residue_meets.push_back(std::move(meets));
  }
  return seq;
}

ChainMat graph_basis(const ReductionSequence& seq, const ChainRing& ring, const ChainMat& graph) {
  ChainMat out(seq.sub_rank(), seq.n(), mpz_class(0));
  for (std::size_t k = 0; k < seq.sub_rank(); ++k) {
    out(k, seq.pivots[k]) = 1;
    for (std::size_t l = 0; l < seq.quotient_rank(); ++l) out(k, seq.complement[l]) = ring.reduce(graph(k, l));
  }
  return out;
}

std::optional<std::string> lift_conditions_failure(const ReductionSequence& seq, const ChainMat& generators,
                                                   unsigned long m) {
  const ChainRing ring(seq.p, m);
  const std::size_t n = seq.n();
  if (generators.rows() > 0 && generators.cols() != n) return "lift generators have the wrong width";
  const ChainMat gens = minimal_generators(ring, generators, n);
  if (gens.rows() != seq.sub_rank()) return "lift is not free of rank dim B̄";
  for (int e : smith(ring, gens).exponents)
    if (e != 0) return "lift is not a free direct summand";
  const PrimeField& f = seq.residue.field;
  if (!(FpSubspace(f, n, to_fp(gens, seq.p)) == seq.destabilizer)) return "lift does not reduce to B̄";
  for (std::size_t i = 0; i < seq.saturated.size(); ++i)
    for (std::size_t j = 0; j < seq.saturated[i].size(); ++j) {
      const std::size_t need = seq.residue_meets[i][j].dim();
      if (need == 0) continue;
      const ChainMat step = reduce_q(seq.saturated[i][j], seq.p, m);
      const ChainMat meet = intersect_modules(ring, step, gens, n);
      if (meet.rows() == 0 || rank(f, to_fp(meet, seq.p)) < need)
        return "Fil~ ∩ B~ does not surject onto B̄ ∩ Fil̄ (chain " + std::to_string(i + 1) + ", step " +
               std::to_string(j + 1) + ")";
    }
  return std::nullopt;
}

std::optional<LiftWitness> witness_for_graph(const ReductionSequence& seq, const ChainMat& graph, unsigned long m) {
  const ChainRing ring(seq.p, m);
  const PrimeField& f = seq.residue.field;
  const std::size_t n = seq.n(), c = seq.quotient_rank();
  LiftWitness w;
  w.level = m;
  w.graph = reduce(ring, graph);
  w.lifted_basis = graph_basis(seq, ring, w.graph);
  w.complement = ChainMat(c, n, mpz_class(0));
  for (std::size_t l = 0; l < c; ++l) w.complement(l, seq.complement[l]) = 1;

  for (std::size_t i = 0; i < seq.saturated.size(); ++i) {
    std::vector<ChainMat> certs;
    for (std::size_t j = 0; j < seq.saturated[i].size(); ++j) {
      const std::size_t need = seq.residue_meets[i][j].dim();
      ChainMat chosen(0, n);
      if (need > 0) {
        const ChainMat step = reduce_q(seq.saturated[i][j], seq.p, m);
        // c * step ∈ B~  <=>  c * E = 0. Kernel rows with unit coefficients
        // survive reduction mod p.
        const ChainMat kernel = left_kernel(ring, graph_defect(seq, ring, step, w.graph));
        FpMat reduced(0, n);
        for (std::size_t k = 0; k < kernel.rows() && chosen.rows() < need; ++k) {
          const std::vector<mpz_class> v = mul(ring, kernel.row(k), step);
          FpMat one(0, n);
          one.append_row(to_fp(ChainMat::from_rows({v}, n), seq.p).row(0));
          const FpMat trial = vstack(reduced, one);
          if (rank(f, trial) > chosen.rows()) {
            reduced = trial;
            chosen.append_row(v);
          }
        }
        if (chosen.rows() < need) return std::nullopt;
      }
      certs.push_back(std::move(chosen));
    }
    w.certificates.push_back(std::move(certs));
  }
  return w;
}

std::optional<LiftWitness> is_liftable(const ReductionSequence& seq, unsigned long m, std::uint64_t cap) {
  const std::size_t entries = seq.sub_rank() * seq.quotient_rank();
  const mpz_class per_entry = prime_power(seq.p, m - 1);
  mpz_class total = 1;
  for (std::size_t i = 0; i < entries; ++i) total *= per_entry;
  if (total > mpz_class(std::to_string(cap)))
    throw Error(ErrorKind::EnumerationTooLarge,
                "direct lift search needs " + total.get_str() + " candidates (cap " + std::to_string(cap) + ")");
  const ChainMat base = residue_graph(seq);
  const std::uint64_t radix = per_entry.get_ui();
  std::vector<std::uint64_t> digits(entries, 0);
  const ChainRing ring(seq.p, m);
  while (true) {
    ChainMat x = base;
    for (std::size_t t = 0; t < entries; ++t) {
      const std::size_t k = t / seq.quotient_rank(), l = t % seq.quotient_rank();
      x(k, l) = ring.reduce(base(k, l) + mpz_class(seq.p) * mpz_class(std::to_string(digits[t])));
    }
    if (auto w = witness_for_graph(seq, x, m)) return w;
    std::size_t i = 0;
    while (i < entries && ++digits[i] == radix) digits[i++] = 0;
    if (i == entries) break;
  }
  return std::nullopt;
}

ChainMat filtered_hom(const ChainRing& ring, std::size_t b, std::size_t c,
                      const std::vector<HomConstraint>& constraints) {
  const std::size_t width = b * c;
  std::size_t aux = 0, equations = 0;
  for (const auto& con : constraints) {
    aux += con.source.rows() * con.target.rows();
    equations += con.source.rows() * c;
  }
  if (equations == 0) return ChainMat::identity(width, mpz_class(1), mpz_class(0));

  // Variables: phi (b*c), then one coefficient block per (constraint, source row).
  ChainMat system(width + aux, equations, mpz_class(0));
  std::size_t eq = 0, var = width;
  for (const auto& con : constraints) {
    for (std::size_t s = 0; s < con.source.rows(); ++s) {
      for (std::size_t l = 0; l < c; ++l) {
        for (std::size_t k = 0; k < b; ++k) system(k * c + l, eq + l) = con.source(s, k);
        for (std::size_t r = 0; r < con.target.rows(); ++r) system(var + r, eq + l) = ring.neg(con.target(r, l));
      }
      eq += c;
      var += con.target.rows();
    }
  }
  const ChainMat kernel = left_kernel(ring, system);
  ChainMat out(0, width);
  for (std::size_t k = 0; k < kernel.rows(); ++k) {
    const auto row = kernel.row(k);
    out.append_row(std::vector<mpz_class>(row.begin(), row.begin() + static_cast<long>(width)));
  }
  return minimal_generators(ring, out, width);
}

FilteredHomModule hom_filtered(const ChainRing& ring, std::size_t b, std::size_t c,
                               const std::vector<std::vector<HomConstraint>>& constraints_by_chain) {
  FilteredHomModule h;
  h.level = ring.level();
  h.b = b;
  h.c = c;
  h.H = ChainMat::identity(b * c, mpz_class(1), mpz_class(0));
  std::vector<HomConstraint> first, last;
  for (std::size_t i = 0; i < constraints_by_chain.size(); ++i) {
    auto& dst = (i + 1 == constraints_by_chain.size()) ? last : first;
    dst.insert(dst.end(), constraints_by_chain[i].begin(), constraints_by_chain[i].end());
  }
  h.H1 = filtered_hom(ring, b, c, first);
  h.H2 = filtered_hom(ring, b, c, last);
  return h;
}

ChainMat saturated_part(const ChainRing& ring, const ChainMat& gens, std::size_t width, int slack) {
  ChainMat out(0, width);
  if (gens.rows() == 0) return out;
  const SmithForm s = smith(ring, gens);
  const int m = static_cast<int>(ring.level());
  for (std::size_t t = 0; t < s.exponents.size(); ++t) {
    const int e = s.exponents[t];
    if (e == 0) {
      out.append_row(s.V_inv.row(t));
    } else if (e != kZeroDiagonal && e < m - slack) {
      throw Error(ErrorKind::NotSaturated,
                  "module has elementary divisor p^" + std::to_string(e) + " at level " + std::to_string(m));
    }
  }
  return out;
}

ChainMat decomposition_submodule(const ChainRing& ring, std::size_t width, const ChainMat& h1, const ChainMat& h2) {
  const PrimeField f{static_cast<std::uint32_t>(ring.prime())};
  const mpz_class p(ring.prime());
  ChainMat gens(0, width);
  if (h1.rows() > 0) {
    // c * H1 ≡ 0 (mod p) iff c mod p is in the left kernel of H1 mod p.
    const FpMat ker = left_kernel(f, to_fp(h1, ring.prime()));
    for (std::size_t k = 0; k < ker.rows(); ++k) {
      std::vector<mpz_class> coeff(ker.cols());
      for (std::size_t i = 0; i < ker.cols(); ++i) coeff[i] = ker(k, i);
      gens.append_row(mul(ring, coeff, h1));
    }
    gens = vstack(gens, scaled(ring, h1, p));
  }
  gens = vstack(gens, scaled(ring, h2, p));
  return minimal_generators(ring, gens, width);
}

std::vector<int> quotient_decomposition(const ChainRing& ring, std::size_t width, const ChainMat& h1,
                                        const ChainMat& h2) {
  saturated_part(ring, h2, width, 0);  // throws NotSaturated
  const ChainMat n = decomposition_submodule(ring, width, h1, h2);
  const int m = static_cast<int>(ring.level());
  std::vector<int> out(width, m);
  if (n.rows() > 0) {
    const auto e = smith_chain(ring, n);
    for (std::size_t t = 0; t < e.size(); ++t) out[t] = e[t] == kZeroDiagonal ? m : e[t];
  }
  std::sort(out.begin(), out.end());
  return out;
}

QMat single_chain_lift(const ReductionSequence& seq, std::size_t chain) {
  const PrimeField& f = seq.residue.field;
  const std::size_t n = seq.n(), b = seq.sub_rank();
  FpMat chosen_bar(0, n);
  QMat chosen(0, n);
  auto take = [&](const std::vector<std::uint32_t>& target, const std::vector<Rational>& lift) {
    if (rowspace_contains(f, chosen_bar, target)) return;
    chosen_bar.append_row(target);
    chosen.append_row(lift);
  };
  if (chain < seq.saturated.size()) {
    const auto& steps = seq.saturated[chain];
    for (std::size_t j = steps.size(); j-- > 0;) {
      const QMat& basis = steps[j];
      if (basis.rows() == 0) continue;
      const FpMat basis_bar = to_fp(reduce_q(basis, seq.p, 1), seq.p);
      const FpMat& meet = seq.residue_meets[chain][j].basis();
      for (std::size_t r = 0; r < meet.rows(); ++r) {
        const auto coeff = solve_left(f, basis_bar, meet.row(r));
        assert(coeff);
        std::vector<Rational> q(coeff->begin(), coeff->end());
        take(meet.row(r), mul(q, basis));
      }
    }
  }
  const FpMat& sub = seq.destabilizer.basis();
  for (std::size_t r = 0; r < sub.rows(); ++r) {
    const auto row = sub.row(r);
    take(row, std::vector<Rational>(row.begin(), row.end()));
  }
  assert(chosen.rows() == b);
  // Normalise to rows [I | X] in (P, Q) coordinates; the P block is a unit mod p.
  const QMat r_inv = inverse(chosen.select_cols(seq.pivots));
  (void)b;
  return mul(r_inv, chosen.select_cols(seq.complement));
}

LiftCoset single_chain_coset(const ReductionSequence& seq, std::size_t chain, const ChainRing& ring) {
  const std::size_t b = seq.sub_rank(), c = seq.quotient_rank(), width = b * c;
  const PrimeField& f = seq.residue.field;
  const ChainMat x0 = reduce_q(single_chain_lift(seq, chain), seq.p, ring.level());
  const mpz_class p(seq.p);

  std::vector<HomConstraint> constraints;
  if (chain < seq.saturated.size()) {
    for (const QMat& basis : seq.saturated[chain]) {
      if (basis.rows() == 0) continue;
      const ChainMat step = reduce_q(basis, seq.p, ring.level());
      const ChainMat e = graph_defect(seq, ring, step, x0);
      const ChainMat step_p = step.select_cols(seq.pivots);
      // Sources: B~-coordinates of the generators of Fil~ ∩ B~, scaled by p
      // because the perturbation is p * psi.
      const ChainMat meet_coeff = left_kernel(ring, e);
      HomConstraint con;
      con.source = scaled(ring, meet_coeff.rows() ? mul(ring, meet_coeff, step_p) : ChainMat(0, b), p);
      // Target: G~-components of Fil~ ∩ (pB~ ⊕ G~).
      const FpMat pker = left_kernel(f, to_fp(step_p, seq.p));
      con.target = ChainMat(0, c);
      if (pker.rows() > 0) con.target = vstack(con.target, mul(ring, from_fp(pker), e));
      con.target = vstack(con.target, scaled(ring, e, p));
      constraints.push_back(std::move(con));
    }
  }
  LiftCoset out;
  out.point = flatten(x0);
  out.saturated_hom = saturated_part(ring, filtered_hom(ring, b, c, constraints), width, 1);
  out.direction = minimal_generators(ring, scaled(ring, out.saturated_hom, p), width);
  return out;
}

LevelCheck liftable_at(const ReductionSequence& seq, unsigned long m) {
  const ChainRing ring(seq.p, m);
  const std::size_t b = seq.sub_rank(), c = seq.quotient_rank(), width = b * c;
  LevelCheck out;
  const std::size_t s = seq.saturated.size();

  LiftCoset acc = single_chain_coset(seq, 0, ring);
  for (std::size_t k = 1; k < s; ++k) {
    const LiftCoset next = single_chain_coset(seq, k, ring);
    std::vector<mpz_class> diff(width);
    for (std::size_t t = 0; t < width; ++t) diff[t] = ring.sub(next.point[t], acc.point[t]);
    // Lifts for chains < k differ from those for chain k by an element of
    // H1 ∩ pH + pH2; its class in the quotient decides the level.
    const ChainMat n = decomposition_submodule(ring, width, acc.direction, next.saturated_hom);
    const QuotientClass qc = quotient_class(ring, n, diff, width);
    if (qc.order < static_cast<int>(m)) {
      out.failed_chain = k;
      out.reading = qc.order;
      return out;
    }
    const ChainMat stacked = vstack(acc.direction, next.direction);
    const auto y = solve_left(ring, stacked, diff);
    if (!y) throw std::logic_error("coset difference lies in the decomposition submodule but is not solvable");
    for (std::size_t r = 0; r < acc.direction.rows(); ++r)
      for (std::size_t t = 0; t < width; ++t) acc.point[t] = ring.add(acc.point[t], (*y)[r] * acc.direction(r, t));
    acc.direction = intersect_modules(ring, acc.direction, next.direction, width);
  }
  out.witness = witness_for_graph(seq, unflatten(acc.point, b, c), m);
  if (!out.witness) throw std::logic_error("intersected lift coset fails the lifting conditions");
  return out;
}

LiftOrder max_lift_order(const ReductionSequence& seq, unsigned long cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidInput, "lift cap must be at least 1");
  LevelCheck top = liftable_at(seq, cap);
  if (top.witness) return {true, cap, std::move(*top.witness)};

  unsigned long failing = cap;
  auto clamp = [&](int reading) {
    return static_cast<unsigned long>(std::max(1, std::min(reading, static_cast<int>(failing) - 1)));
  };
  unsigned long candidate = clamp(top.reading);
  while (true) {
    LevelCheck at = liftable_at(seq, candidate);
    if (!at.witness) {
      failing = candidate;
      candidate = clamp(at.reading);
      continue;
    }
    LiftOrder best{false, candidate, std::move(*at.witness)};
    for (unsigned long m = candidate + 1; m < failing; ++m) {
      LevelCheck up = liftable_at(seq, m);
      if (!up.witness) break;
      best.order = m;
      best.witness = std::move(*up.witness);
    }
    return best;
  }
}

LiftOrder max_lift_order_bruteforce(const ReductionSequence& seq, unsigned long cap, std::uint64_t enum_cap) {
  LiftOrder best;
  auto first = is_liftable(seq, 1, enum_cap);
  assert(first);
  best.witness = std::move(*first);
  for (unsigned long m = 2; m <= cap; ++m) {
    auto w = is_liftable(seq, m, enum_cap);
    if (!w) return best;
    best.order = m;
    best.witness = std::move(*w);
  }
  best.unbounded = true;
  return best;
}

}  // namespace semired
