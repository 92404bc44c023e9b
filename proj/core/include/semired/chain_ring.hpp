#pragma once

#include <gmpxx.h>

#include <climits>
#include <optional>
#include <vector>

#include "semired/matrix.hpp"

namespace semired {

using ChainMat = Mat<mpz_class>;

/// Exponent reported for a zero diagonal entry of a Smith form ("p^e with
/// e >= m").
inline constexpr int kZeroDiagonal = INT_MAX;

/// The finite chain ring Z/p^m. Elements are mpz_class representatives in
/// [0, p^m).
class ChainRing {
 public:
  ChainRing(unsigned long p, unsigned long m);

  unsigned long prime() const noexcept { return p_; }
  unsigned long level() const noexcept { return m_; }
  const mpz_class& modulus() const noexcept { return modulus_; }

  mpz_class reduce(const mpz_class& x) const;
  mpz_class add(const mpz_class& a, const mpz_class& b) const { return reduce(a + b); }
  mpz_class sub(const mpz_class& a, const mpz_class& b) const { return reduce(a - b); }
  mpz_class mul(const mpz_class& a, const mpz_class& b) const { return reduce(a * b); }
  mpz_class neg(const mpz_class& a) const { return reduce(-a); }

  bool is_unit(const mpz_class& a) const;
  mpz_class inv(const mpz_class& unit) const;

  /// v_p of the representative, m for zero.
  int valuation(const mpz_class& a) const;

  /// a / p^e for a with valuation >= e; exact on representatives.
  mpz_class divide_by_prime_power(const mpz_class& a, int e) const;
  mpz_class prime_power(unsigned long e) const;

 private:
  unsigned long p_;
  unsigned long m_;
  mpz_class modulus_;
};

ChainMat reduce(const ChainRing& r, const ChainMat& a);
ChainMat mul(const ChainRing& r, const ChainMat& a, const ChainMat& b);
std::vector<mpz_class> mul(const ChainRing& r, const std::vector<mpz_class>& x, const ChainMat& a);

/// U * A * V = diag(p^e_0, p^e_1, ...) with U, V invertible over Z/p^m.
struct SmithForm {
  std::vector<int> exponents;  // size min(rows, cols); kZeroDiagonal for zeros
  ChainMat U;
  ChainMat V;
  ChainMat V_inv;
};

/// Valuation-pivot elimination: at each step the remaining entry of least
/// valuation is moved to the diagonal and used to clear its row and column.
SmithForm smith(const ChainRing& r, const ChainMat& a);

/// Elementary divisor exponents e_0 <= e_1 <= ... of A. The cokernel of A
/// acting on rows is the sum of Z/p^min(e,m) plus a free part.
std::vector<int> smith_chain(const ChainRing& r, const ChainMat& a);

/// Generators of {x : x * A = 0}.
ChainMat left_kernel(const ChainRing& r, const ChainMat& a);

/// Some x with x * A = b.
std::optional<std::vector<mpz_class>> solve_left(const ChainRing& r, const ChainMat& a,
                                                 const std::vector<mpz_class>& b);

/// A reduced generating set of the row module of G: rows p^e_t * (V^-1)_t
/// from the Smith form, zero generators dropped. `width` fixes the column
/// count for empty input.
ChainMat minimal_generators(const ChainRing& r, const ChainMat& g, std::size_t width);

/// Row module intersection.
ChainMat intersect_modules(const ChainRing& r, const ChainMat& a, const ChainMat& b,
                           std::size_t width);

bool module_contains(const ChainRing& r, const ChainMat& gens, const std::vector<mpz_class>& v);

/// Number of elements of the row module spanned by G, as log_p.
long module_log_size(const ChainRing& r, const ChainMat& g);

/// Class of A in H / N, H = (Z/p^m)^width, N = rowspan(gens).
struct QuotientClass {
  std::vector<int> exponents;   // H/N = sum Z/p^a_t, one entry per coordinate (a_t in [0, m])
  std::vector<mpz_class> coordinates;  // coordinate of A in each summand (reduced mod p^a_t)
  /// Largest l <= m with A in N + p^l H. Equals m iff A lies in N.
  int order;
};

QuotientClass quotient_class(const ChainRing& r, const ChainMat& gens,
                             const std::vector<mpz_class>& a, std::size_t width);

}  // namespace semired
