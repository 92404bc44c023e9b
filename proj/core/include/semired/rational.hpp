#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <string_view>

namespace semired {

/// Element of K = Q with the p-adic valuation attached by the caller. The
/// valuation ring O is Z localized at p, its maximal ideal is pO.
using Rational = mpq_class;

/// v_p of zero. Compares above every finite valuation.
inline constexpr long kInfiniteValuation = LONG_MAX;

long valuation(const mpz_class& x, unsigned long p);
long valuation(const Rational& x, unsigned long p);

inline bool in_valuation_ring(const Rational& x, unsigned long p) { return valuation(x, p) >= 0; }
inline bool in_maximal_ideal(const Rational& x, unsigned long p) { return valuation(x, p) >= 1; }

/// p^e as an integer.
mpz_class prime_power(unsigned long p, unsigned long e);

/// Ring map O -> Z/p^m. Throws NegativeValuation if x is not in O.
mpz_class reduce_mod(const Rational& x, unsigned long p, unsigned long m);

/// Parses "a", "-a", "a/b" (b > 0 after sign normalisation). Throws Parse
/// naming the offending token.
Rational parse_rational(std::string_view token);

/// "a/b", or "a" when b = 1; sign on the numerator.
std::string format_rational(const Rational& x);

bool is_prime(unsigned long p);

}  // namespace semired
