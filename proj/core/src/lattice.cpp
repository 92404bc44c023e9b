#include "semired/lattice.hpp"

#include <cassert>

#include "semired/errors.hpp"

namespace semired {

KSubspace::KSubspace(std::size_t ambient_dim, const QMat& spanning_rows) : n_(ambient_dim) {
  if (spanning_rows.rows() == 0) {
    basis_ = QMat(0, n_);
    return;
  }
  if (spanning_rows.cols() != n_)
    throw Error(ErrorKind::InvalidInput, "subspace basis width does not match ambient dimension");
  basis_ = rref(spanning_rows).form;
  if (basis_.rows() == 0) basis_ = QMat(0, n_);
}

KSubspace KSubspace::whole(std::size_t n) { return KSubspace(n, identity_q(n)); }
KSubspace KSubspace::zero(std::size_t n) { return KSubspace(n, QMat(0, n)); }

bool KSubspace::contains(const KSubspace& other) const {
  if (other.dim() == 0) return true;
  return rank(vstack(basis_, other.basis_)) == dim();
}

Lattice::Lattice(QMat basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols())
    throw Error(ErrorKind::InvalidInput, "lattice basis must be square");
  inverse_ = inverse(basis_);
}

Lattice Lattice::standard(std::size_t n) { return Lattice(identity_q(n)); }

QMat Lattice::coordinates(const QMat& ambient_rows) const {
  if (ambient_rows.rows() == 0) return QMat(0, dim());
  return mul(ambient_rows, inverse_);
}

QMat Lattice::ambient(const QMat& coordinate_rows) const {
  if (coordinate_rows.rows() == 0) return QMat(0, dim());
  return mul(coordinate_rows, basis_);
}

bool Lattice::contains(const Lattice& other, unsigned long p) const {
  return all_in_valuation_ring(coordinates(other.basis()), p);
}

Sublattice intersect(const Lattice& lattice, const KSubspace& subspace, unsigned long p) {
  assert(subspace.ambient_dim() == lattice.dim());
  const Saturation sat = saturate(lattice.coordinates(subspace.basis()), p);
  return {sat.basis, sat.complement, true};
}

ChainModuleSpace reduce_lattice(const Lattice& lattice, const KChains& chains, unsigned long p,
                                unsigned long m) {
  ChainModuleSpace out;
  out.level = m;
  out.rank = lattice.dim();
  for (const auto& chain : chains) {
    std::vector<ChainMat> images;
    for (const auto& step : chain) {
      const Sublattice sub = intersect(lattice, step, p);
      ChainMat img(sub.generators.rows(), lattice.dim());
      for (std::size_t i = 0; i < img.rows(); ++i)
        for (std::size_t j = 0; j < img.cols(); ++j) img(i, j) = reduce_mod(sub.generators(i, j), p, m);
      images.push_back(std::move(img));
    }
    out.submodules.push_back(std::move(images));
  }
  return out;
}

Lattice elementary_modification(const Lattice& lattice, const ChainMat& lifted_submodule, unsigned long p,
                                unsigned long m) {
  const std::size_t n = lattice.dim();
  const ChainRing ring(p, m);
  if (lifted_submodule.rows() > 0) {
    if (lifted_submodule.cols() != n)
      throw Error(ErrorKind::InvalidInput, "submodule generators have wrong width");
    // Free summand <=> every elementary divisor of a minimal generating set is a unit.
    const ChainMat gens = minimal_generators(ring, lifted_submodule, n);
    for (int e : smith(ring, gens).exponents)
      if (e != 0)
        throw Error(ErrorKind::RankDeficient, "lifted submodule is not a free direct summand");
  }
  QMat stacked(lifted_submodule.rows() + n, n, Rational(0));
  for (std::size_t i = 0; i < lifted_submodule.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = Rational(lifted_submodule(i, j));
  const Rational pm(prime_power(p, m));
  for (std::size_t i = 0; i < n; ++i) stacked(lifted_submodule.rows() + i, i) = pm;
  const DvrEchelon ech = echelon_dvr(stacked, p);
  assert(ech.pivot_cols.size() == n);
  return Lattice(lattice.ambient(ech.E.row_block(0, n)));
}

}  // namespace semired
