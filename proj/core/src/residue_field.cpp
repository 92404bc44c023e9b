#include "semired/residue_field.hpp"

#include <cassert>

namespace semired {

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  assert(a % p != 0);
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

EchelonFp rref(const PrimeField& f, const FpMat& a) {
  FpMat m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const std::uint32_t s = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const std::uint32_t factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.row_block(0, r), std::move(pivots)};
}

std::size_t rank(const PrimeField& f, const FpMat& a) { return rref(f, a).pivots.size(); }

FpMat mul(const PrimeField& f, const FpMat& a, const FpMat& b) {
  assert(a.cols() == b.rows());
  FpMat out(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
    }
  return out;
}

FpMat left_kernel(const PrimeField& f, const FpMat& a) {
  // x * a = 0  <=>  a^T x^T = 0: null space of a^T from its rref.
  const FpMat at = a.transposed();
  const auto e = rref(f, at);
  const std::size_t n = a.rows();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  FpMat out(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = f.neg(e.form(k, free));
    out.append_row(v);
  }
  return out;
}

std::optional<std::vector<std::uint32_t>> solve_left(const PrimeField& f, const FpMat& a,
                                                     const std::vector<std::uint32_t>& b) {
  // Row-reduce [a | I] tracking combinations.
  const std::size_t r = a.rows(), c = a.cols();
  assert(b.size() == c);
  FpMat aug(r, c + r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j);
    aug(i, c + i) = 1;
  }
  std::vector<std::uint32_t> target = b;
  std::vector<std::uint32_t> x(r, 0);
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t piv = row;
    while (piv < r && aug(piv, col) == 0) ++piv;
    if (piv == r) continue;
    aug.swap_rows(row, piv);
    const std::uint32_t s = f.inv(aug(row, col));
    for (std::size_t j = 0; j < aug.cols(); ++j) aug(row, j) = f.mul(aug(row, j), s);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || aug(i, col) == 0) continue;
      const std::uint32_t factor = aug(i, col);
      for (std::size_t j = 0; j < aug.cols(); ++j) aug(i, j) = f.sub(aug(i, j), f.mul(factor, aug(row, j)));
    }
    // eliminate from target
    if (target[col] != 0) {
      const std::uint32_t factor = target[col];
      for (std::size_t j = 0; j < c; ++j) target[j] = f.sub(target[j], f.mul(factor, aug(row, j)));
      for (std::size_t i = 0; i < r; ++i) x[i] = f.add(x[i], f.mul(factor, aug(row, c + i)));
    }
    ++row;
  }
  for (auto t : target)
    if (t != 0) return std::nullopt;
  return x;
}

FpMat intersect_rowspaces(const PrimeField& f, const FpMat& a, const FpMat& b, std::size_t n) {
  if (a.rows() == 0 || b.rows() == 0) return FpMat(0, n);
  // (x, y) with x a = y b.
  FpMat stacked = a;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto r = b.row(i);
    for (auto& v : r) v = f.neg(v);
    stacked.append_row(r);
  }
  const FpMat ker = left_kernel(f, stacked);
  FpMat out(0, n);
  for (std::size_t k = 0; k < ker.rows(); ++k) {
    std::vector<std::uint32_t> v(n, 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (ker(k, i) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(ker(k, i), a(i, j)));
    }
    out.append_row(v);
  }
  auto e = rref(f, out);
  if (e.form.rows() == 0) return FpMat(0, n);
  return e.form;
}

bool rowspace_contains(const PrimeField& f, const FpMat& basis, const std::vector<std::uint32_t>& v) {
  if (basis.rows() == 0) {
    for (auto x : v)
      if (x != 0) return false;
    return true;
  }
  return solve_left(f, basis, v).has_value();
}

}  // namespace semired
