#pragma once

#include <random>

#include "semired/dvr.hpp"
#include "semired/filtration.hpp"

namespace support {

using namespace semired;

inline Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline QMat qmat(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t width = rows.size() ? rows.begin()->size() : 0;
  QMat out(0, width);
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (long x : r) v.push_back(Rational(x));
    out.append_row(v);
  }
  return out;
}

inline FpMat fpmat(std::initializer_list<std::initializer_list<std::uint32_t>> rows) {
  std::size_t width = rows.size() ? rows.begin()->size() : 0;
  FpMat out(0, width);
  for (const auto& r : rows) out.append_row(std::vector<std::uint32_t>(r));
  return out;
}

inline ChainMat cmat(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t width = rows.size() ? rows.begin()->size() : 0;
  ChainMat out(0, width);
  for (const auto& r : rows) {
    std::vector<mpz_class> v;
    for (long x : r) v.push_back(mpz_class(x));
    out.append_row(v);
  }
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, long bound = 40) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  return q(num(rng), den(rng));
}

inline FpMat random_fp(std::mt19937_64& rng, std::uint32_t p, std::size_t r, std::size_t c) {
  FpMat out(r, c, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = static_cast<std::uint32_t>(rng() % p);
  return out;
}

inline ChainMat random_chain(std::mt19937_64& rng, unsigned long modulus, std::size_t r, std::size_t c) {
  ChainMat out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = static_cast<unsigned long>(rng() % modulus);
  return out;
}

/// Random element of GL_n(O) with small entries: unit-upper times unit-lower
/// triangular, with odd-ish diagonal units.
inline QMat random_unimodular(std::mt19937_64& rng, std::size_t n, unsigned long p) {
  QMat up = identity_q(n), lo = identity_q(n);
  std::uniform_int_distribution<long> e(-3, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      up(i, j) = e(rng);
      lo(j, i) = Rational(e(rng)) * Rational(p);
    }
  for (std::size_t i = 0; i < n; ++i) lo(i, i) = Rational(long(1 + p * (rng() % 3)));
  return mul(up, lo);
}

inline FilteredSpace random_filtered(std::mt19937_64& rng, std::uint32_t p, std::size_t n, std::size_t s,
                                     std::size_t max_len) {
  FilteredSpace x{PrimeField{p}, n, {}};
  for (std::size_t i = 0; i < s; ++i) {
    const FpMat basis = random_fp(rng, p, n, n);
    std::vector<FpSubspace> chain;
    std::size_t d = n;
    const std::size_t len = 1 + rng() % max_len;
    for (std::size_t j = 0; j < len; ++j) {
      d -= std::min<std::size_t>(d, rng() % 2);
      chain.emplace_back(x.field, n, basis.row_block(0, d));  // prefixes nest
    }
    x.chains.push_back(std::move(chain));
  }
  return x;
}

}  // namespace support
