#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "semired/errors.hpp"
#include "semired/filtration.hpp"
#include "support.hpp"

using namespace semired;
using support::fpmat;
using support::q;

namespace {

const PrimeField F2{2};

FpSubspace sub(const PrimeField& f, std::size_t n, const FpMat& rows) { return FpSubspace(f, n, rows); }

FilteredSpace space(const PrimeField& f, std::size_t n, std::vector<std::vector<FpMat>> chains) {
  FilteredSpace x{f, n, {}};
  for (auto& c : chains) {
    std::vector<FpSubspace> steps;
    for (auto& s : c) steps.push_back(sub(f, n, s));
    x.chains.push_back(std::move(steps));
  }
  return x;
}

FilteredSpace transform(const FilteredSpace& x, const FpMat& g) {
  FilteredSpace out{x.field, x.n, {}};
  for (const auto& c : x.chains) {
    std::vector<FpSubspace> steps;
    for (const auto& s : c) steps.push_back(sub(x.field, x.n, mul(x.field, s.basis(), g)));
    out.chains.push_back(std::move(steps));
  }
  return out;
}

FpMat random_invertible(std::mt19937_64& rng, const PrimeField& f, std::size_t n) {
  while (true) {
    FpMat g = support::random_fp(rng, f.p, n, n);
    if (rank(f, g) == n) return g;
  }
}

}  // namespace

TEST_CASE("weight and slope examples") {
  const auto trivial = space(F2, 2, {{FpMat(0, 2)}});
  CHECK(weight(trivial) == 0);
  CHECK(slope(trivial) == 0);
  const auto one = space(F2, 2, {{fpmat({{1, 0}})}});
  CHECK(weight(one) == 1);
  const auto two = space(F2, 2, {{fpmat({{1, 0}})}, {fpmat({{1, 0}})}});
  CHECK(weight(two) == 2);
  CHECK(slope(two) == 1);
  const auto full = space(F2, 1, {{fpmat({{1}})}});
  CHECK(slope(full) == 1);
  CHECK_THROWS_AS(slope(FilteredSpace{F2, 0, {}}), Error);
  // repeated steps count in every degree they occupy
  const auto repeat = space(F2, 2, {{fpmat({{1, 0}}), fpmat({{1, 0}})}});
  CHECK(weight(repeat) == 2);
}

TEST_CASE("induced sub and quotient examples") {
  const auto x = space(F2, 2, {{fpmat({{1, 0}})}});
  const auto whole = FpSubspace::whole(F2, 2);
  CHECK(weight(induced_sub(x, whole)) == weight(x));
  CHECK(induced_sub(x, FpSubspace::zero(2)).n == 0);
  const auto diag = sub(F2, 2, fpmat({{1, 1}}));
  const auto on_diag = induced_sub(x, diag);
  CHECK(on_diag.n == 1);
  CHECK(weight(on_diag) == 0);
  const auto e1 = sub(F2, 2, fpmat({{1, 0}}));
  const auto quot = induced_quotient(x, e1);
  CHECK(quot.n == 1);
  CHECK(weight(quot) == 0);
  CHECK(weight(induced_quotient(x, FpSubspace::zero(2))) == weight(x));
  CHECK(induced_quotient(x, whole).n == 0);
  CHECK_THROWS_AS(induced_sub(x, FpSubspace::zero(3)), Error);
}

TEST_CASE("subspace enumeration counts") {
  CHECK(enumerate_subspaces(F2, 2, std::nullopt).size() == 5);
  CHECK(enumerate_subspaces(F2, 4, 2).size() == 35);
  CHECK(enumerate_subspaces(PrimeField{3}, 1, std::nullopt).size() == 2);
  CHECK(gaussian_binomial(2, 4, 2) == 35);
  CHECK(gaussian_binomial(3, 3, 1) == 13);
  CHECK_THROWS_AS(enumerate_subspaces(F2, 6, std::nullopt, 100), Error);
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 0; n <= 3; ++n) {
      const PrimeField f{p};
      const auto ours = enumerate_subspaces(f, n, std::nullopt);
      const auto theirs = oracle::all_subspaces(p, n);
      CHECK(ours.size() == theirs.size());
      std::set<oracle::VecSet> seen;
      for (const auto& s : ours) seen.insert(oracle::span(oracle::rows_of(s.basis()), p, n));
      CHECK(seen.size() == ours.size());  // each subspace exactly once
      for (std::size_t d = 0; d <= n; ++d) CHECK(enumerate_subspaces(f, n, d).size() == gaussian_binomial(p, n, d));
    }
}

TEST_CASE("semistability examples") {
  CHECK(is_semistable(space(F2, 2, {{FpMat(0, 2)}})).semistable);
  const auto same = space(F2, 2, {{fpmat({{1, 0}})}, {fpmat({{1, 0}})}});
  const auto rep = is_semistable(same);
  CHECK_FALSE(rep.semistable);
  REQUIRE(rep.witness);
  CHECK(*rep.witness == sub(F2, 2, fpmat({{1, 0}})));
  CHECK(rep.witness_slope == 2);
  CHECK(rep.slope == 1);
  CHECK(is_semistable(space(F2, 2, {{fpmat({{1, 0}})}, {fpmat({{0, 1}})}})).semistable);
}

TEST_CASE("max_destabilizer examples") {
  const auto ss = space(F2, 2, {{fpmat({{1, 0}})}, {fpmat({{0, 1}})}});
  CHECK(max_destabilizer(ss).subspace == FpSubspace::whole(F2, 2));
  const auto same = space(F2, 2, {{fpmat({{1, 0}})}, {fpmat({{1, 0}})}});
  CHECK(max_destabilizer(same).subspace == sub(F2, 2, fpmat({{1, 0}})));
  const auto three = space(F2, 3, {{fpmat({{1, 0, 0}, {0, 1, 0}})}, {fpmat({{1, 0, 0}})}});
  const auto d = max_destabilizer(three);
  CHECK(d.subspace == sub(F2, 3, fpmat({{1, 0, 0}})));
  CHECK(d.slope == 2);
  CHECK(d.dim == 1);
}

TEST_CASE("stability and destabilizer agree with the set oracle") {
  std::mt19937_64 rng(31);
  int unstable = 0;
  for (int it = 0; it < 300; ++it) {
    const std::uint32_t p = it % 3 == 0 ? 3 : 2;
    const std::size_t n = 1 + rng() % (p == 2 ? 4 : 3);
    const auto x = support::random_filtered(rng, p, n, 1 + rng() % 3, 3);
    const auto sx = oracle::from(x);
    const bool ss = oracle::semistable(sx);
    CHECK(is_semistable(x).semistable == ss);
    const oracle::Best best = oracle::max_destabilizer(sx);
    CHECK(best.ties == 1);
    const Destabilizer d = max_destabilizer(x);
    CHECK(oracle::span(oracle::rows_of(d.subspace.basis()), p, n) == best.subspace);
    CHECK(d.slope == q(static_cast<long>(best.weight), static_cast<long>(best.dim)));
    CHECK(d.dim == best.dim);
    if (!ss) ++unstable;
  }
  CHECK(unstable > 30);
}

TEST_CASE("weight additivity") {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 500; ++it) {
    const std::uint32_t p = it % 2 ? 2 : 3;
    const PrimeField f{p};
    const std::size_t n = 1 + rng() % 4;
    const auto x = support::random_filtered(rng, p, n, 1 + rng() % 3, 3);
    const auto w = sub(f, n, support::random_fp(rng, p, rng() % (n + 1), n));
    CHECK(weight(x) == weight(induced_sub(x, w)) + weight(induced_quotient(x, w)));
    CHECK(subspace_weight(x, w) == weight(induced_sub(x, w)));
  }
}

TEST_CASE("basis invariance") {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 200; ++it) {
    const std::uint32_t p = it % 2 ? 2 : 3;
    const PrimeField f{p};
    const std::size_t n = 1 + rng() % 3;
    const auto x = support::random_filtered(rng, p, n, 1 + rng() % 3, 3);
    const FpMat g = random_invertible(rng, f, n);
    const auto y = transform(x, g);
    CHECK(weight(x) == weight(y));
    CHECK(slope(x) == slope(y));
    CHECK(is_semistable(x).semistable == is_semistable(y).semistable);
    const auto dx = max_destabilizer(x), dy = max_destabilizer(y);
    CHECK(dx.slope == dy.slope);
    CHECK(dx.dim == dy.dim);
    CHECK(sub(f, n, mul(f, dx.subspace.basis(), g)) == dy.subspace);
  }
}

TEST_CASE("slope bounds and the destabilizer is semistable") {
  std::mt19937_64 rng(34);
  for (int it = 0; it < 200; ++it) {
    const std::uint32_t p = it % 2 ? 2 : 3;
    const std::size_t n = 1 + rng() % 4;
    const auto x = support::random_filtered(rng, p, n, 1 + rng() % 3, 3);
    std::size_t lengths = 0;
    for (const auto& c : x.chains) lengths += c.size();
    CHECK(slope(x) >= 0);
    CHECK(slope(x) <= Rational(static_cast<long>(lengths)));
    const auto d = max_destabilizer(x);
    CHECK(is_semistable(induced_sub(x, d.subspace)).semistable);
  }
}

TEST_CASE("residue filtration of the standard lattice") {
  KFiltration fil{2, {{KSubspace(2, support::qmat({{1, 0}}))}, {KSubspace(2, support::qmat({{1, 2}}))}}};
  const auto res = residue_filtration(Lattice::standard(2), fil, 2);
  CHECK(res.chains[1][0] == sub(F2, 2, fpmat({{1, 0}})));
  const auto res3 = residue_filtration(Lattice::standard(2), fil, 3);
  CHECK(res3.chains[1][0] == sub(PrimeField{3}, 2, fpmat({{1, 2}})));
  CHECK(is_semistable(res3).semistable);
}

TEST_CASE("generic semistability") {
  using V = GenericStability::Verdict;
  KFiltration a{2, {{KSubspace(2, support::qmat({{1, 0}}))}, {KSubspace(2, support::qmat({{1, 2}}))}}};
  CHECK(generic_semistability(a, 2).verdict == V::Semistable);
  KFiltration same{2, {{KSubspace(2, support::qmat({{1, 0}}))}, {KSubspace(2, support::qmat({{1, 0}}))}}};
  CHECK(generic_semistability(same, 2).verdict == V::Unstable);
  KFiltration trivial{3, {{KSubspace::zero(3)}}};
  CHECK(generic_semistability(trivial, 3).verdict == V::Semistable);
  // three lines in a plane have no common adapted basis
  KFiltration lines{2,
                    {{KSubspace(2, support::qmat({{1, 0}}))},
                     {KSubspace(2, support::qmat({{0, 1}}))},
                     {KSubspace(2, support::qmat({{1, 1}}))}}};
  CHECK_FALSE(common_adapted_basis(lines).has_value());
  CHECK(generic_semistability(lines, 2).verdict == V::Semistable);
}
