#pragma once

#include <vector>

#include "semired/chain_ring.hpp"
#include "semired/dvr.hpp"

namespace semired {

/// A K-subspace of K^n in canonical rref form (rows are basis vectors).
class KSubspace {
 public:
  KSubspace() = default;
  /// Spanning rows need not be independent; they are reduced to rref.
  KSubspace(std::size_t ambient_dim, const QMat& spanning_rows);

  static KSubspace whole(std::size_t n);
  static KSubspace zero(std::size_t n);

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const QMat& basis() const noexcept { return basis_; }
  bool contains(const KSubspace& other) const;

  friend bool operator==(const KSubspace& a, const KSubspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t n_ = 0;
  QMat basis_;
};

/// A full-rank O-lattice in K^n. Basis vectors are the rows of `basis`.
class Lattice {
 public:
  Lattice() = default;
  /// Throws RankDeficient if the rows do not span K^n.
  explicit Lattice(QMat basis);

  static Lattice standard(std::size_t n);

  std::size_t dim() const noexcept { return basis_.rows(); }
  const QMat& basis() const noexcept { return basis_; }
  const QMat& basis_inverse() const noexcept { return inverse_; }

  /// Ambient rows -> lattice coordinates (row c with v = c * basis).
  QMat coordinates(const QMat& ambient_rows) const;
  QMat ambient(const QMat& coordinate_rows) const;

  /// True iff every basis vector of `other` lies in this lattice.
  bool contains(const Lattice& other, unsigned long p) const;
  bool same_as(const Lattice& other, unsigned long p) const {
    return contains(other, p) && other.contains(*this, p);
  }

 private:
  QMat basis_;
  QMat inverse_;
};

/// Submodule of a lattice; generator rows are in parent lattice coordinates
/// with entries in O.
struct Sublattice {
  QMat generators;
  QMat complement;  // set when saturated: generators + complement is an O-basis
  bool saturated = false;

  std::size_t rank() const noexcept { return generators.rows(); }
};

/// S ∩ L, always saturated in L.
Sublattice intersect(const Lattice& lattice, const KSubspace& subspace, unsigned long p);

/// The free module M~ = (Z/p^m)^n in lattice coordinates with the images of
/// each Fil_i^j ∩ M. submodules[i][j-1] holds the image of Fil_i^j.
struct ChainModuleSpace {
  unsigned long level = 1;
  std::size_t rank = 0;
  std::vector<std::vector<ChainMat>> submodules;
};

using KChains = std::vector<std::vector<KSubspace>>;

ChainModuleSpace reduce_lattice(const Lattice& lattice, const KChains& chains, unsigned long p,
                                unsigned long m);

/// M' = {v in M : v mod p^m in B~}. `lifted_submodule` rows generate B~ over
/// Z/p^m in lattice coordinates. Throws RankDeficient if B~ is not a free
/// direct summand of M~ (the quotient would not be flat).
Lattice elementary_modification(const Lattice& lattice, const ChainMat& lifted_submodule,
                                unsigned long p, unsigned long m);

}  // namespace semired
