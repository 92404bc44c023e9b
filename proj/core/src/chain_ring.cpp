#include "semired/chain_ring.hpp"

#include <algorithm>
#include <cassert>

#include "semired/rational.hpp"

namespace semired {

ChainRing::ChainRing(unsigned long p, unsigned long m) : p_(p), m_(m), modulus_(semired::prime_power(p, m)) {
  assert(m >= 1);
}

mpz_class ChainRing::reduce(const mpz_class& x) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

bool ChainRing::is_unit(const mpz_class& a) const {
  return !mpz_divisible_ui_p(a.get_mpz_t(), p_);
}

mpz_class ChainRing::inv(const mpz_class& unit) const {
  mpz_class out;
  [[maybe_unused]] int ok = mpz_invert(out.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t());
  assert(ok != 0);
  return out;
}

int ChainRing::valuation(const mpz_class& a) const {
  if (a == 0) return static_cast<int>(m_);
  const long v = semired::valuation(a, p_);
  return static_cast<int>(std::min<long>(v, static_cast<long>(m_)));
}

mpz_class ChainRing::divide_by_prime_power(const mpz_class& a, int e) const {
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), prime_power(static_cast<unsigned long>(e)).get_mpz_t());
  return out;
}

mpz_class ChainRing::prime_power(unsigned long e) const {
  if (e >= m_) return 0;
  return semired::prime_power(p_, e);
}

ChainMat reduce(const ChainRing& r, const ChainMat& a) {
  ChainMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = r.reduce(a(i, j));
  return out;
}

ChainMat mul(const ChainRing& r, const ChainMat& a, const ChainMat& b) {
  assert(a.cols() == b.rows());
  ChainMat out(a.rows(), b.cols(), mpz_class(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = r.reduce(acc);
    }
  return out;
}

std::vector<mpz_class> mul(const ChainRing& r, const std::vector<mpz_class>& x, const ChainMat& a) {
  assert(x.size() == a.rows());
  std::vector<mpz_class> out(a.cols(), mpz_class(0));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    mpz_class acc = 0;
    for (std::size_t k = 0; k < a.rows(); ++k) acc += x[k] * a(k, j);
    out[j] = r.reduce(acc);
  }
  return out;
}

SmithForm smith(const ChainRing& r, const ChainMat& input) {
  ChainMat a = reduce(r, input);
  const std::size_t rows = a.rows(), cols = a.cols();
  SmithForm s;
  s.U = ChainMat::identity(rows, mpz_class(1), mpz_class(0));
  s.V = ChainMat::identity(cols, mpz_class(1), mpz_class(0));
  s.V_inv = s.V;
  const std::size_t diag = std::min(rows, cols);
  s.exponents.assign(diag, kZeroDiagonal);

  for (std::size_t k = 0; k < diag; ++k) {
    int best = static_cast<int>(r.level());
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        const int v = r.valuation(a(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == static_cast<int>(r.level())) break;

    a.swap_rows(k, bi);
    s.U.swap_rows(k, bi);
    a.swap_cols(k, bj);
    s.V.swap_cols(k, bj);
    s.V_inv.swap_rows(k, bj);

    const int e = best;
    const mpz_class unit_inv = r.inv(r.divide_by_prime_power(a(k, k), e));
    for (std::size_t j = 0; j < cols; ++j) a(k, j) = r.mul(a(k, j), unit_inv);
    for (std::size_t j = 0; j < rows; ++j) s.U(k, j) = r.mul(s.U(k, j), unit_inv);

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const mpz_class c = r.divide_by_prime_power(a(i, k), e);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = r.sub(a(i, j), c * a(k, j));
      for (std::size_t j = 0; j < rows; ++j) s.U(i, j) = r.sub(s.U(i, j), c * s.U(k, j));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (j == k || a(k, j) == 0) continue;
      const mpz_class c = r.divide_by_prime_power(a(k, j), e);
      // col_j -= c col_k; V_inv: row_k += c row_j
      for (std::size_t i = 0; i < rows; ++i) a(i, j) = r.sub(a(i, j), c * a(i, k));
      for (std::size_t i = 0; i < cols; ++i) s.V(i, j) = r.sub(s.V(i, j), c * s.V(i, k));
      for (std::size_t t = 0; t < cols; ++t) s.V_inv(k, t) = r.add(s.V_inv(k, t), c * s.V_inv(j, t));
    }
    s.exponents[k] = e;
  }
  return s;
}

std::vector<int> smith_chain(const ChainRing& r, const ChainMat& a) {
  auto e = smith(r, a).exponents;
  std::sort(e.begin(), e.end());
  return e;
}

ChainMat left_kernel(const ChainRing& r, const ChainMat& a) {
  const std::size_t rows = a.rows();
  ChainMat out(0, rows);
  if (rows == 0) return out;
  const SmithForm s = smith(r, a);
  const int m = static_cast<int>(r.level());
  for (std::size_t t = 0; t < rows; ++t) {
    int e = t < s.exponents.size() ? s.exponents[t] : kZeroDiagonal;
    if (e == 0) continue;
    std::vector<mpz_class> g = s.U.row(t);
    if (e != kZeroDiagonal) {
      const mpz_class scale = r.prime_power(static_cast<unsigned long>(m - e));
      for (auto& x : g) x = r.mul(x, scale);
    }
    out.append_row(g);
  }
  return out;
}

std::optional<std::vector<mpz_class>> solve_left(const ChainRing& r, const ChainMat& a,
                                                 const std::vector<mpz_class>& b) {
  assert(b.size() == a.cols());
  const std::size_t rows = a.rows(), cols = a.cols();
  if (rows == 0) {
    for (const auto& x : b)
      if (r.reduce(x) != 0) return std::nullopt;
    return std::vector<mpz_class>{};
  }
  const SmithForm s = smith(r, a);
  // x A = b  <=>  y D = b V with x = y U.
  const std::vector<mpz_class> bv = mul(r, b, s.V);
  std::vector<mpz_class> y(rows, mpz_class(0));
  for (std::size_t t = 0; t < cols; ++t) {
    const int e = t < s.exponents.size() ? s.exponents[t] : kZeroDiagonal;
    if (e == kZeroDiagonal) {
      if (bv[t] != 0) return std::nullopt;
      continue;
    }
    if (r.valuation(bv[t]) < e) return std::nullopt;
    y[t] = r.divide_by_prime_power(bv[t], e);
  }
  return mul(r, y, s.U);
}

ChainMat minimal_generators(const ChainRing& r, const ChainMat& g, std::size_t width) {
  ChainMat out(0, width);
  if (g.rows() == 0) return out;
  const SmithForm s = smith(r, g);
  for (std::size_t t = 0; t < s.exponents.size(); ++t) {
    const int e = s.exponents[t];
    if (e == kZeroDiagonal) continue;
    std::vector<mpz_class> row = s.V_inv.row(t);
    const mpz_class scale = r.prime_power(static_cast<unsigned long>(e));
    for (auto& x : row) x = r.mul(x, scale);
    out.append_row(row);
  }
  return out;
}

ChainMat intersect_modules(const ChainRing& r, const ChainMat& a, const ChainMat& b, std::size_t width) {
  if (a.rows() == 0 || b.rows() == 0) return ChainMat(0, width);
  ChainMat stacked = a;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto row = b.row(i);
    for (auto& x : row) x = r.neg(x);
    stacked.append_row(row);
  }
  const ChainMat ker = left_kernel(r, stacked);
  ChainMat out(0, width);
  for (std::size_t k = 0; k < ker.rows(); ++k) {
    const auto row = ker.row(k);
    std::vector<mpz_class> coeff(row.begin(), row.begin() + static_cast<long>(a.rows()));
    out.append_row(mul(r, coeff, a));
  }
  return minimal_generators(r, out, width);
}

bool module_contains(const ChainRing& r, const ChainMat& gens, const std::vector<mpz_class>& v) {
  return solve_left(r, gens, v).has_value();
}

long module_log_size(const ChainRing& r, const ChainMat& g) {
  if (g.rows() == 0) return 0;
  long total = 0;
  for (int e : smith(r, g).exponents)
    if (e != kZeroDiagonal) total += static_cast<long>(r.level()) - e;
  return total;
}

QuotientClass quotient_class(const ChainRing& r, const ChainMat& gens, const std::vector<mpz_class>& a,
                             std::size_t width) {
  const int m = static_cast<int>(r.level());
  QuotientClass q;
  q.exponents.assign(width, m);
  std::vector<mpz_class> coords(a.begin(), a.end());
  for (auto& x : coords) x = r.reduce(x);
  if (gens.rows() > 0) {
    const SmithForm s = smith(r, gens);
    coords = mul(r, coords, s.V);
    for (std::size_t t = 0; t < s.exponents.size(); ++t)
      q.exponents[t] = s.exponents[t] == kZeroDiagonal ? m : s.exponents[t];
  }
  q.order = m;
  for (std::size_t t = 0; t < width; ++t) {
    const int a_t = q.exponents[t];
    const mpz_class mod = semired::prime_power(r.prime(), static_cast<unsigned long>(a_t));
    mpz_class c;
    mpz_mod(c.get_mpz_t(), coords[t].get_mpz_t(), mod.get_mpz_t());
    q.coordinates.push_back(c);
    if (c != 0) q.order = std::min(q.order, r.valuation(c));
  }
  return q;
}

}  // namespace semired
