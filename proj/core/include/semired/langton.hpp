#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "semired/lifting.hpp"

namespace semired {

struct LangtonCaps {
  std::uint64_t enumeration = kDefaultEnumerationCap;
  unsigned long lift = 64;
  std::uint64_t iterations = 10'000;
  /// Sections enumerated by verify_no_splitting; steps above it are skipped.
  std::uint64_t splitting = 1u << 16;
};

using ChainDims = std::vector<std::vector<std::size_t>>;

ChainDims chain_dims(const FilteredSpace& x);

struct LangtonStep {
  QMat lattice;           // ambient basis rows before the step
  ChainDims residue_dims;
  FpSubspace destabilizer;
  Rational slope;
  std::size_t dim = 0;
  unsigned long m = 1;
  LiftWitness witness;
  QMat next_lattice;
  std::optional<bool> no_splitting;  // unset when over the section cap
};

struct LangtonTrace {
  std::vector<LangtonStep> steps;
  QMat final_lattice;
  ChainDims final_dims;
};

/// 0 -> G -> M'/pM' -> B -> 0 after a modification, in coordinates of M'.
struct ReversedSequence {
  FilteredSpace modified;   // reduction of M'
  FpMat to_old;             // n x n, reduction mod p of M' coordinates in M
  FpSubspace kernel;        // image of G, i.e. ker(to_old)
  FpMat kernel_basis;       // c x n, images of p^m e_q in q order
  FpSubspace image;         // B as a subspace of the old reduction
};

ReversedSequence reversed_sequence(const ReductionSequence& seq, const Lattice& modified, unsigned long m);

/// Empty string when the filtrations induced on G and B by the new reduction
/// agree with the ones induced by the old reduction; otherwise a description.
std::string reversed_filtration_mismatch(const ReductionSequence& seq, const ReversedSequence& rev);

/// True iff no linear section B -> M'/pM' respects the filtrations.
bool verify_no_splitting(const ReversedSequence& rev, std::uint64_t cap);

Lattice langton_step(const Lattice& lattice, const KFiltration& fil, unsigned long p, LangtonTrace& trace,
                     const LangtonCaps& caps = {});

struct LangtonResult {
  Lattice lattice;
  LangtonTrace trace;
};

LangtonResult langton_run(const KFiltration& fil, unsigned long p, std::optional<Lattice> start = std::nullopt,
                          const LangtonCaps& caps = {});

}  // namespace semired
