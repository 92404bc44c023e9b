#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semired/chain_ring.hpp"
#include "semired/filtration.hpp"
#include "semired/lattice.hpp"

namespace semired {

inline constexpr unsigned long kDefaultLiftCap = 64;

/// 0 -> B̄ -> M̄ -> Ḡ -> 0 for a lattice M with its K-filtration. Everything
/// is in lattice coordinates. B̄ is presented by its rref basis: pivot columns
/// P and the complementary columns Q, so Ḡ is identified with the span of the
/// Q coordinate vectors.
struct ReductionSequence {
  unsigned long p = 2;
  Lattice lattice;
  KFiltration filtration;
  FilteredSpace residue;                  // M̄ with the induced filtration
  FpSubspace destabilizer;                // B̄
  std::vector<std::size_t> pivots;        // P
  std::vector<std::size_t> complement;    // Q
  /// saturated[i][j-1]: O-basis rows of Fil_i^j ∩ M.
  std::vector<std::vector<QMat>> saturated;
  /// residue_meets[i][j-1]: B̄ ∩ Fil̄_i^j.
  std::vector<std::vector<FpSubspace>> residue_meets;

  std::size_t n() const noexcept { return lattice.dim(); }
  std::size_t sub_rank() const noexcept { return pivots.size(); }
  std::size_t quotient_rank() const noexcept { return complement.size(); }
};

/// Throws PreconditionViolated unless B̄ is nonzero and proper.
ReductionSequence make_reduction_sequence(const Lattice& lattice, const KFiltration& fil,
                                          const FpSubspace& sub, unsigned long p);

/// A lift B~ of B̄ to M~ = M / p^m M. B~ is the graph of `graph` over the
/// coordinate splitting: its k-th basis row is e_P[k] + sum_l graph(k, l) e_Q[l].
/// G~ is spanned by the e_Q rows, so M~ = B~ ⊕ G~ by construction.
struct LiftWitness {
  unsigned long level = 1;
  ChainMat graph;        // b x c over Z/p^m
  ChainMat lifted_basis; // b x n rows of B~
  ChainMat complement;   // c x n rows of G~
  /// certificates[i][j-1]: elements of Fil~_i^j ∩ B~ whose reductions form a
  /// basis of B̄ ∩ Fil̄_i^j.
  std::vector<std::vector<ChainMat>> certificates;
};

ChainMat graph_basis(const ReductionSequence& seq, const ChainRing& ring, const ChainMat& graph);

/// Checks the three lifting conditions for arbitrary generators of a
/// candidate B~ at level m: free direct summand of rank dim B̄, reduction
/// equal to B̄, and Fil~ ∩ B~ surjecting onto B̄ ∩ Fil̄ for every step.
/// Returns a failure description, or nullopt when all hold.
std::optional<std::string> lift_conditions_failure(const ReductionSequence& seq, const ChainMat& generators,
                                                   unsigned long m);

/// Witness for the graph matrix if it satisfies the conditions.
std::optional<LiftWitness> witness_for_graph(const ReductionSequence& seq, const ChainMat& graph, unsigned long m);

/// Direct search over every candidate graph X ≡ X̄ (mod p); there are
/// p^((m-1) * b * c) of them. Throws EnumerationTooLarge beyond `cap`.
std::optional<LiftWitness> is_liftable(const ReductionSequence& seq, unsigned long m,
                                       std::uint64_t cap = kDefaultEnumerationCap);

// --- filtered Hom modules ----------------------------------------------------

/// One membership condition on phi in Hom(B~, G~) (phi as a b x c matrix
/// acting on row vectors): w * phi lies in rowspan(target) for every row w of
/// `source`.
struct HomConstraint {
  ChainMat source;  // rows of width b
  ChainMat target;  // rows of width c
};

/// Generators (flattened b*c rows, index k*c + l) of the maps satisfying all
/// constraints.
ChainMat filtered_hom(const ChainRing& ring, std::size_t b, std::size_t c,
                      const std::vector<HomConstraint>& constraints);

struct FilteredHomModule {
  unsigned long level = 1;
  std::size_t b = 0, c = 0;
  ChainMat H;   // all of Hom
  ChainMat H1;  // preserving chains 1..s-1
  ChainMat H2;  // preserving chain s
};

/// constraints_by_chain[i] holds chain i's conditions.
FilteredHomModule hom_filtered(const ChainRing& ring, std::size_t b, std::size_t c,
                               const std::vector<std::vector<HomConstraint>>& constraints_by_chain);

/// Saturated part of a module: the unit-exponent generators from its Smith
/// form. Throws NotSaturated if some other elementary divisor lies strictly
/// between 1 and p^(m - slack).
ChainMat saturated_part(const ChainRing& ring, const ChainMat& gens, std::size_t width, int slack = 0);

/// Exponents a_t (ascending, one per coordinate, each in [0, m]) with
/// H / (H1 ∩ pH + pH2) = ⊕ Z/p^a_t, H = (Z/p^m)^width. H2 must be saturated.
std::vector<int> quotient_decomposition(const ChainRing& ring, std::size_t width, const ChainMat& h1,
                                        const ChainMat& h2);

/// Generators of H1 ∩ pH + pH2, the submodule used above.
ChainMat decomposition_submodule(const ChainRing& ring, std::size_t width, const ChainMat& h1,
                                 const ChainMat& h2);

// --- maximal lift order ------------------------------------------------------

/// Lifts of B̄ compatible with a single chain form the coset point + span(direction).
struct LiftCoset {
  std::vector<mpz_class> point;   // flattened b*c
  ChainMat direction;             // = p * saturated_hom
  ChainMat saturated_hom;         // saturated Hom_{Fil_i}(B~, G~)
};

/// O-level lift of B̄ compatible with chain i (lift a basis of each B̄ ∩ Fil̄^j
/// inside Fil^j, deepest step first), returned as its graph over O.
QMat single_chain_lift(const ReductionSequence& seq, std::size_t chain);

LiftCoset single_chain_coset(const ReductionSequence& seq, std::size_t chain, const ChainRing& ring);

struct LevelCheck {
  std::optional<LiftWitness> witness;
  /// On failure: chains 0..failed_chain cannot be lifted jointly modulo
  /// p^level, and the difference class lies in N + p^reading H.
  std::size_t failed_chain = 0;
  int reading = 0;
};

/// Exact test at a single level by intersecting the single-chain cosets one
/// chain at a time.
LevelCheck liftable_at(const ReductionSequence& seq, unsigned long m);

struct LiftOrder {
  bool unbounded = false;  // liftable at the cap
  unsigned long order = 1;
  LiftWitness witness;
};

/// Largest m <= cap with a lift modulo p^m.
LiftOrder max_lift_order(const ReductionSequence& seq, unsigned long cap = kDefaultLiftCap);

/// Same answer by ascending direct search with is_liftable (oracle).
LiftOrder max_lift_order_bruteforce(const ReductionSequence& seq, unsigned long cap,
                                    std::uint64_t enum_cap = kDefaultEnumerationCap);

}  // namespace semired
