#include "semired/dvr.hpp"

#include <cassert>

#include "semired/errors.hpp"

namespace semired {

QMat identity_q(std::size_t n) { return QMat::identity(n, Rational(1), Rational(0)); }

QMat mul(const QMat& a, const QMat& b) {
  assert(a.cols() == b.rows());
  QMat out(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::vector<Rational> mul(const std::vector<Rational>& x, const QMat& a) {
  assert(x.size() == a.rows());
  std::vector<Rational> out(a.cols(), Rational(0));
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[k] * a(k, j);
  }
  return out;
}

EchelonQ rref(const QMat& a) {
  QMat m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const Rational s = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.row_block(0, r), std::move(pivots)};
}

std::size_t rank(const QMat& a) { return rref(a).pivots.size(); }

QMat inverse(const QMat& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  QMat aug(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw Error(ErrorKind::RankDeficient, "matrix is singular");
  QMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = e.form(i, n + j);
  return out;
}

Rational determinant(const QMat& a) {
  assert(a.rows() == a.cols());
  QMat m = a;
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      m.swap_rows(c, piv);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

DvrEchelon echelon_dvr(const QMat& a, unsigned long p) {
  DvrEchelon out{identity_q(a.rows()), a, {}};
  QMat& e = out.E;
  std::size_t r = 0;
  for (std::size_t c = 0; c < e.cols() && r < e.rows(); ++c) {
    std::size_t best = e.rows();
    long best_v = kInfiniteValuation;
    for (std::size_t i = r; i < e.rows(); ++i) {
      const long v = valuation(e(i, c), p);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == e.rows()) continue;
    e.swap_rows(r, best);
    out.U.swap_rows(r, best);
    for (std::size_t i = r + 1; i < e.rows(); ++i) {
      if (e(i, c) == 0) continue;
      const Rational f = e(i, c) / e(r, c);  // valuation >= 0 by pivot choice
      for (std::size_t j = 0; j < e.cols(); ++j) e(i, j) -= f * e(r, j);
      for (std::size_t j = 0; j < out.U.cols(); ++j) out.U(i, j) -= f * out.U(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

Saturation saturate(const QMat& a, unsigned long p) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return {QMat(0, n), identity_q(n)};
  // Columns of A^T span the subspace. U A^T = [R; 0] with U in GL_n(O), so
  // the first d columns of U^-1 are an O-basis of the saturation and the
  // remaining columns complete it.
  const DvrEchelon ech = echelon_dvr(a.transposed(), p);
  const std::size_t d = ech.pivot_cols.size();
  const QMat u_inv_t = inverse(ech.U).transposed();
  return {u_inv_t.row_block(0, d), u_inv_t.row_block(d, n - d)};
}

bool all_in_valuation_ring(const QMat& a, unsigned long p) {
  for (const auto& x : a.data())
    if (!in_valuation_ring(x, p)) return false;
  return true;
}

}  // namespace semired
