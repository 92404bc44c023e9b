#pragma once

#include <optional>
#include <vector>

#include "semired/matrix.hpp"
#include "semired/rational.hpp"

namespace semired {

using QMat = Mat<Rational>;

QMat identity_q(std::size_t n);
QMat mul(const QMat& a, const QMat& b);
std::vector<Rational> mul(const std::vector<Rational>& x, const QMat& a);

struct EchelonQ {
  QMat form;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over Q, zero rows removed.
EchelonQ rref(const QMat& a);
std::size_t rank(const QMat& a);

/// Throws RankDeficient on singular input.
QMat inverse(const QMat& a);
Rational determinant(const QMat& a);

/// E = U * A with U invertible over O. Works column by column: the entry of
/// least valuation among the remaining rows becomes the pivot, so every
/// multiplier used to clear below it lies in O.
struct DvrEchelon {
  QMat U;
  QMat E;
  std::vector<std::size_t> pivot_cols;
};
DvrEchelon echelon_dvr(const QMat& a, unsigned long p);

/// O-basis of (rowspan_K A) ∩ O^n together with a complement that extends it
/// to an O-basis of O^n. Together the two blocks form an O-basis of O^n.
struct Saturation {
  QMat basis;       // d x n
  QMat complement;  // (n - d) x n
};
Saturation saturate(const QMat& a, unsigned long p);

bool all_in_valuation_ring(const QMat& a, unsigned long p);

}  // namespace semired
