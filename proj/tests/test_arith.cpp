#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "semired/chain_ring.hpp"
#include "semired/dvr.hpp"
#include "semired/errors.hpp"
#include "semired/residue_field.hpp"
#include "support.hpp"

using namespace semired;
using support::q;

TEST_CASE("valuation examples") {
  CHECK(valuation(Rational(0), 2) == kInfiniteValuation);
  CHECK(valuation(q(12, 5), 2) == 2);
  CHECK(valuation(q(5, 9), 3) == -2);
  CHECK(in_valuation_ring(q(1, 3), 2));
  CHECK_FALSE(in_valuation_ring(q(1, 2), 2));
  CHECK(in_maximal_ideal(q(6, 7), 3));
}

TEST_CASE("valuation is a valuation") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 1000; ++it) {
    const unsigned long p = it % 2 ? 2 : 3;
    const Rational x = support::random_rational(rng), y = support::random_rational(rng);
    if (x == 0 || y == 0) continue;
    CHECK(valuation(Rational(x * y), p) == valuation(x, p) + valuation(y, p));
    const Rational s = x + y;
    const long vx = valuation(x, p), vy = valuation(y, p);
    if (s != 0) {
      CHECK(valuation(s, p) >= std::min(vx, vy));
      if (vx != vy) CHECK(valuation(s, p) == std::min(vx, vy));
    }
  }
}

TEST_CASE("reduce_mod examples and errors") {
  CHECK(reduce_mod(q(1, 3), 2, 1) == 1);
  CHECK(reduce_mod(q(1, 3), 2, 3) == 3);
  CHECK(reduce_mod(Rational(0), 5, 4) == 0);
  CHECK(reduce_mod(q(-1), 3, 2) == 8);
  CHECK_THROWS_AS(reduce_mod(q(1, 2), 2, 1), Error);
  try {
    reduce_mod(q(3, 4), 2, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeValuation);
  }
}

TEST_CASE("reduce_mod is a ring map compatible with lower levels") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 500; ++it) {
    const unsigned long p = it % 2 ? 2 : 5;
    Rational x = support::random_rational(rng), y = support::random_rational(rng);
    if (!in_valuation_ring(x, p) || !in_valuation_ring(y, p)) continue;
    const unsigned long m = 1 + it % 4;
    const ChainRing r(p, m);
    CHECK(reduce_mod(x + y, p, m) == r.add(reduce_mod(x, p, m), reduce_mod(y, p, m)));
    CHECK(reduce_mod(x * y, p, m) == r.mul(reduce_mod(x, p, m), reduce_mod(y, p, m)));
    for (unsigned long lower = 1; lower < m; ++lower)
      CHECK(ChainRing(p, lower).reduce(reduce_mod(x, p, m)) == reduce_mod(x, p, lower));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-4") == q(-4));
  CHECK(format_rational(q(-2, 4)) == "-1/2");
  CHECK(format_rational(q(7)) == "7");
  for (const char* bad : {"1//2", "", "1/0", "a", "1/-2", "--1", "1.5", " 1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
  try {
    parse_rational("1//2");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("1//2") != std::string::npos);
  }
}

TEST_CASE("F_p rref examples") {
  const PrimeField f{2};
  const auto id = rref(f, support::fpmat({{1, 0}, {0, 1}}));
  CHECK(id.form == support::fpmat({{1, 0}, {0, 1}}));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1});
  const auto ones = rref(f, support::fpmat({{1, 1}, {1, 1}}));
  CHECK(ones.form == support::fpmat({{1, 1}}));  // zero rows are dropped
  CHECK(ones.pivots == std::vector<std::size_t>{0});
  CHECK(rref(f, FpMat(2, 3, 0)).pivots.empty());
}

TEST_CASE("rref is canonical and idempotent") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 300; ++it) {
    const std::uint32_t p = it % 3 == 0 ? 5 : (it % 2 ? 2 : 3);
    const PrimeField f{p};
    const std::size_t n = 1 + rng() % 4, r = rng() % 4;
    const FpMat a = support::random_fp(rng, p, r, n);
    const auto e = rref(f, a);
    CHECK(rref(f, e.form).form == e.form);
    // another basis of the same row space
    const FpMat mix = support::random_fp(rng, p, e.form.rows(), e.form.rows());
    FpMat other = mul(f, mix, e.form);
    if (rank(f, mix) == mix.rows()) CHECK(rref(f, other).form == e.form);
    // set oracle: the row space has p^rank elements
    CHECK(oracle::dim_of(oracle::span(oracle::rows_of(a), p, n), p) == e.pivots.size());
  }
}

TEST_CASE("F_p kernels, solving and intersections against set oracle") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 200; ++it) {
    const std::uint32_t p = it % 2 ? 2 : 3;
    const PrimeField f{p};
    const std::size_t n = 1 + rng() % 3;
    const FpMat a = support::random_fp(rng, p, rng() % 4, n), b = support::random_fp(rng, p, rng() % 4, n);
    const FpMat k = left_kernel(f, a);
    CHECK(k.rows() + rank(f, a) == a.rows());
    if (k.rows() > 0) CHECK(rank(f, mul(f, k, a)) == 0);
    const auto sa = oracle::span(oracle::rows_of(a), p, n), sb = oracle::span(oracle::rows_of(b), p, n);
    const FpMat meet = intersect_rowspaces(f, a, b, n);
    CHECK(oracle::span(oracle::rows_of(meet), p, n) == oracle::meet(sa, sb));
    for (const auto& v : sb) {
      CHECK(rowspace_contains(f, a, v) == (sa.count(v) == 1));
      const auto sol = solve_left(f, a, v);
      CHECK(sol.has_value() == (sa.count(v) == 1));
      if (sol) CHECK(mul(f, FpMat::from_rows({*sol}, a.rows()), a).row(0) == v);
    }
  }
}

TEST_CASE("echelon_dvr examples") {
  const auto e = echelon_dvr(support::qmat({{2, 0}, {0, 3}}), 2);
  std::vector<long> vals;
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) vals.push_back(valuation(e.E(i, e.pivot_cols[i]), 2));
  std::sort(vals.begin(), vals.end());
  CHECK(vals == std::vector<long>{0, 1});
  const auto unit = echelon_dvr(support::qmat({{1, 1}, {1, 2}}), 2);
  for (std::size_t i = 0; i < unit.pivot_cols.size(); ++i) CHECK(valuation(unit.E(i, unit.pivot_cols[i]), 2) == 0);
  const auto zero = echelon_dvr(QMat(2, 2, Rational(0)), 3);
  CHECK(zero.pivot_cols.empty());
  CHECK(zero.E == QMat(2, 2, Rational(0)));
}

TEST_CASE("echelon_dvr transforms are O-unimodular") {
  std::mt19937_64 rng(15);
  for (int it = 0; it < 300; ++it) {
    const unsigned long p = it % 2 ? 2 : 3;
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    QMat a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = support::random_rational(rng, 6);
    const auto e = echelon_dvr(a, p);
    CHECK(all_in_valuation_ring(e.U, p));
    CHECK(valuation(determinant(e.U), p) == 0);
    CHECK(mul(e.U, a) == e.E);
    // pivot entry has minimal valuation in its column below
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      for (std::size_t k = i; k < r; ++k)
        CHECK(valuation(e.E(k, e.pivot_cols[i]), p) >= valuation(e.E(i, e.pivot_cols[i]), p));
  }
}

TEST_CASE("saturation extends to an O-basis") {
  std::mt19937_64 rng(16);
  for (int it = 0; it < 300; ++it) {
    const unsigned long p = it % 2 ? 2 : 3;
    const std::size_t n = 1 + rng() % 4, d = rng() % (n + 1);
    QMat a(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = support::random_rational(rng, 6);
    const auto s = saturate(a, p);
    CHECK(s.basis.rows() == rank(a));
    CHECK(s.basis.rows() + s.complement.rows() == n);
    QMat full = s.basis;
    for (std::size_t i = 0; i < s.complement.rows(); ++i) full.append_row(s.complement.row(i));
    CHECK(all_in_valuation_ring(full, p));
    CHECK(valuation(determinant(full), p) == 0);
    // same K-span
    if (d > 0) CHECK(rref(s.basis.rows() ? s.basis : a).form == rref(a).form);
  }
}

TEST_CASE("smith_chain examples") {
  const ChainRing r8(2, 3);
  CHECK(smith_chain(r8, support::cmat({{1, 0, 0}, {0, 2, 0}, {0, 0, 4}})) == std::vector<int>{0, 1, 2});
  const ChainRing r4(2, 2);
  CHECK(smith_chain(r4, support::cmat({{2, 2}, {2, 2}})) == std::vector<int>{1, kZeroDiagonal});
  for (int e : smith_chain(r4, ChainMat(2, 3, mpz_class(0)))) CHECK(e == kZeroDiagonal);
}

TEST_CASE("smith exponents agree with the counting oracle") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    const unsigned long p = it % 2 ? 2 : 3;
    const unsigned m = 1 + it % (p == 2 ? 4 : 2);
    const ChainRing ring(p, m);
    const std::size_t width = 1 + rng() % 3, rows = rng() % 4;
    const unsigned long modulus = ring.modulus().get_ui();
    const ChainMat a = support::random_chain(rng, modulus, rows, width);
    std::vector<int> ours(width, static_cast<int>(m));
    const auto ex = rows ? smith_chain(ring, a) : std::vector<int>{};
    for (std::size_t t = 0; t < ex.size(); ++t) ours[t] = ex[t] == kZeroDiagonal ? static_cast<int>(m) : ex[t];
    std::sort(ours.begin(), ours.end());
    const auto set = oracle::span(oracle::rows_of(a, modulus), modulus, width);
    CHECK(oracle::divisor_exponents(set, p, m, width) == ours);
    CHECK(static_cast<std::size_t>(module_log_size(ring, a)) == oracle::log_size(set.size(), p));
    if (rows) {
      const SmithForm s = smith(ring, a);
      const ChainMat d = mul(ring, mul(ring, s.U, a), s.V);
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) {
          if (i != j) CHECK(d(i, j) == 0);
          else if (s.exponents[i] == kZeroDiagonal) CHECK(d(i, i) == 0);
          else CHECK(ring.valuation(d(i, i)) == s.exponents[i]);
        }
    }
  }
}

TEST_CASE("module intersection, membership and minimal generators against set oracle") {
  std::mt19937_64 rng(18);
  for (int it = 0; it < 200; ++it) {
    const unsigned long p = 2;
    const unsigned m = 1 + it % 3;
    const ChainRing ring(p, m);
    const unsigned long modulus = ring.modulus().get_ui();
    const std::size_t width = 1 + rng() % 3;
    const ChainMat a = support::random_chain(rng, modulus, rng() % 3, width);
    const ChainMat b = support::random_chain(rng, modulus, rng() % 3, width);
    const auto sa = oracle::span(oracle::rows_of(a, modulus), modulus, width);
    const auto sb = oracle::span(oracle::rows_of(b, modulus), modulus, width);
    const ChainMat meet = intersect_modules(ring, a, b, width);
    CHECK(oracle::span(oracle::rows_of(meet, modulus), modulus, width) == oracle::meet(sa, sb));
    const ChainMat g = minimal_generators(ring, a, width);
    CHECK(oracle::span(oracle::rows_of(g, modulus), modulus, width) == sa);
    CHECK(g.rows() <= width);
    for (const auto& v : sb) {
      std::vector<mpz_class> z(v.begin(), v.end());
      CHECK(module_contains(ring, a, z) == (sa.count(v) == 1));
      const auto sol = solve_left(ring, a, z);
      CHECK(sol.has_value() == (sa.count(v) == 1));
    }
    const ChainMat k = left_kernel(ring, a);
    for (std::size_t r = 0; r < k.rows(); ++r)
      for (const auto& x : mul(ring, k.row(r), a)) CHECK(x == 0);
  }
}

TEST_CASE("quotient_class order") {
  const ChainRing ring(2, 3);
  // N = <2 e1>; H/N = Z/2 + Z/8
  const ChainMat n = support::cmat({{2, 0}});
  CHECK(quotient_class(ring, n, {mpz_class(4), mpz_class(0)}, 2).order == 3);
  CHECK(quotient_class(ring, n, {mpz_class(1), mpz_class(0)}, 2).order == 0);
  CHECK(quotient_class(ring, n, {mpz_class(0), mpz_class(4)}, 2).order == 2);
  CHECK(quotient_class(ring, n, {mpz_class(2), mpz_class(2)}, 2).order == 1);
}
