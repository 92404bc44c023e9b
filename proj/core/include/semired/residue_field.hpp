#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "semired/matrix.hpp"

namespace semired {

using FpMat = Mat<std::uint32_t>;

/// Arithmetic in F_p for p < 2^31.
struct PrimeField {
  std::uint32_t p;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t from_int(long long x) const {
    long long r = x % static_cast<long long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }
};

struct EchelonFp {
  FpMat form;                        // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // strictly increasing
};

/// Reduced row echelon form with zero rows removed: the canonical basis of
/// the row space.
EchelonFp rref(const PrimeField& f, const FpMat& a);

std::size_t rank(const PrimeField& f, const FpMat& a);

FpMat mul(const PrimeField& f, const FpMat& a, const FpMat& b);

/// Rows x with x * a = 0, as an rref basis.
FpMat left_kernel(const PrimeField& f, const FpMat& a);

/// Some x with x * a = b.
std::optional<std::vector<std::uint32_t>> solve_left(const PrimeField& f, const FpMat& a,
                                                     const std::vector<std::uint32_t>& b);

/// Canonical basis of the intersection of two row spaces of width n.
FpMat intersect_rowspaces(const PrimeField& f, const FpMat& a, const FpMat& b, std::size_t n);

bool rowspace_contains(const PrimeField& f, const FpMat& basis, const std::vector<std::uint32_t>& v);

}  // namespace semired
