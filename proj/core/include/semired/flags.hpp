#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "semired/filtration.hpp"

namespace semired {

/// Chain i drops by l_i: dim Fil_i^j = n - l_i(j). Each table is stored as its
/// jumps (j, l_i(j)) with j increasing; l_i(0) = 0 and the last value is n.
struct TypeDatum {
  std::string id = "t";
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> jumps;

  std::size_t s() const noexcept { return jumps.size(); }
  std::size_t l(std::size_t chain, std::size_t j) const;
  /// dims of Fil^1 .. Fil^{J-1} where J is the last jump.
  std::vector<std::size_t> step_dims(std::size_t chain) const;
  void validate() const;

  static TypeDatum full_flags(std::size_t s, std::size_t n);
};

struct FlagPoint {
  std::vector<std::vector<FpSubspace>> chains;
};

FilteredSpace to_filtered_space(const PrimeField& f, std::size_t n, const FlagPoint& point);

/// Number of F_q points of the product of flag varieties (saturating).
std::uint64_t flag_count(std::uint32_t q, const TypeDatum& t);

void for_each_flag(std::uint32_t q, const TypeDatum& t, std::uint64_t cap,
                   const std::function<void(const FlagPoint&)>& visit);
std::vector<FlagPoint> enumerate_flags(std::uint32_t q, const TypeDatum& t,
                                       std::uint64_t cap = kDefaultEnumerationCap);

struct FlagCount {
  std::uint64_t total = 0;
  std::uint64_t semistable = 0;
};

FlagCount count_semistable(std::uint32_t q, const TypeDatum& t, std::uint64_t cap = kDefaultEnumerationCap);

/// "q,type-id,total,semistable"
std::string csv_row(std::uint32_t q, const TypeDatum& t, const FlagCount& c);

}  // namespace semired
