#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semired/lattice.hpp"
#include "semired/rational.hpp"
#include "semired/residue_field.hpp"

namespace semired {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Subspace of F_p^n held as its canonical rref basis.
class FpSubspace {
 public:
  FpSubspace() = default;
  FpSubspace(const PrimeField& f, std::size_t n, const FpMat& spanning_rows);

  static FpSubspace whole(const PrimeField& f, std::size_t n);
  static FpSubspace zero(std::size_t n);
  /// Caller guarantees `rref_basis` is already canonical with these pivots.
  static FpSubspace from_rref(std::size_t n, FpMat rref_basis, std::vector<std::size_t> pivots);

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const FpMat& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t n_ = 0;
  FpMat basis_;
  std::vector<std::size_t> pivots_;
};

/// Multi-filtered F_p-space (V = F_p^n, Fil_i^j). chains[i][j-1] = Fil_i^j for
/// j >= 1; Fil^0 = V and the trailing zero step are implicit. Steps may repeat.
struct FilteredSpace {
  PrimeField field{2};
  std::size_t n = 0;
  std::vector<std::vector<FpSubspace>> chains;

  /// Throws InvalidInput if a chain is not decreasing.
  void validate() const;
};

/// Multi-filtration of K^n with the same step convention.
struct KFiltration {
  std::size_t n = 0;
  KChains chains;

  void validate() const;
  std::size_t length_sum() const;
};

/// sum_i sum_j j * dim Gr_i^j, computed as sum_i sum_{j>=1} dim Fil_i^j.
std::size_t weight(const FilteredSpace& x);
/// Weight of the subspace W with its induced filtration, without building it.
std::size_t subspace_weight(const FilteredSpace& x, const FpSubspace& w);
/// Throws ZeroDimensional for n = 0.
Rational slope(const FilteredSpace& x);

/// Filtration on W in coordinates of W's rref basis. Throws NotContained.
FilteredSpace induced_sub(const FilteredSpace& x, const FpSubspace& w);
/// Filtration on V/W; V/W is identified with the coordinates at the non-pivot
/// columns of W's rref basis.
FilteredSpace induced_quotient(const FilteredSpace& x, const FpSubspace& w);
/// Image of v in V/W under the identification used by induced_quotient.
std::vector<std::uint32_t> quotient_coordinates(const PrimeField& f, const FpSubspace& w,
                                                const std::vector<std::uint32_t>& v);

/// Number of d-dimensional subspaces of F_p^n, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(std::uint64_t p, std::size_t n, std::size_t d);

/// Visits every subspace of F_p^n (of dimension d, or of every dimension in
/// increasing order) exactly once, by pivot pattern then free entries.
/// Throws EnumerationTooLarge if the count exceeds cap. The visitor returns
/// false to stop early.
void for_each_subspace(const PrimeField& f, std::size_t n, std::optional<std::size_t> d,
                       std::uint64_t cap, const std::function<bool(const FpSubspace&)>& visit);
std::vector<FpSubspace> enumerate_subspaces(const PrimeField& f, std::size_t n,
                                            std::optional<std::size_t> d,
                                            std::uint64_t cap = kDefaultEnumerationCap);

struct StabilityReport {
  bool semistable = true;
  Rational slope;                       // slope of V
  std::optional<FpSubspace> witness;    // mu(witness) > mu(V) when unstable
  Rational witness_slope;
};

StabilityReport is_semistable(const FilteredSpace& x, std::uint64_t cap = kDefaultEnumerationCap);

struct Destabilizer {
  FpSubspace subspace;
  Rational slope;
  std::size_t dim = 0;
};

/// Maximiser of (slope, dim) over nonzero subspaces; V itself when x is
/// semistable. Throws UniquenessViolation if two subspaces tie.
Destabilizer max_destabilizer(const FilteredSpace& x, std::uint64_t cap = kDefaultEnumerationCap);

/// Lexicographic (slope, dim) comparison.
bool lex_less(const Rational& slope_a, std::size_t dim_a, const Rational& slope_b, std::size_t dim_b);

/// The residue filtration of lattice M: images of Fil_i^j ∩ M in M/pM.
FilteredSpace residue_filtration(const Lattice& lattice, const KFiltration& fil, unsigned long p);

/// Best-effort semistability of the generic fiber V over K.
struct GenericStability {
  enum class Verdict { Semistable, Unstable, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  /// "exact: common adapted basis" or "verified over F_p reduction at p' = q".
  std::string method;
};

GenericStability generic_semistability(const KFiltration& fil, unsigned long p,
                                       std::uint64_t cap = kDefaultEnumerationCap);

/// A basis of K^n such that every chain step is spanned by a subset of it,
/// if the construction for at most two chains (plus verification) finds one.
std::optional<QMat> common_adapted_basis(const KFiltration& fil);

}  // namespace semired
