#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "semired/problem_io.hpp"

namespace semired {

namespace reason {
inline constexpr const char* kProblemEcho = "problem echo mismatch";
inline constexpr const char* kLatticeChain = "lattice chain broken";
inline constexpr const char* kResidueDims = "residue dims mismatch";
inline constexpr const char* kDestabilizer = "destabilizer not optimal";
inline constexpr const char* kLiftableAbove = "liftable at m+1";
inline constexpr const char* kWitness = "lift witness invalid";
inline constexpr const char* kModification = "modification mismatch";
inline constexpr const char* kDescent = "descent violated";
inline constexpr const char* kFinalLattice = "final lattice mismatch";
inline constexpr const char* kFinalUnstable = "final reduction not semistable";
inline constexpr const char* kMalformed = "malformed trace";
}  // namespace reason

struct Verdict {
  bool ok = true;
  std::string reason;            // one of the reason:: strings
  std::optional<std::size_t> step;
  std::string detail;

  std::string message() const;
};

/// Re-derives every claim of the trace from the problem. The m+1 check
/// enumerates candidate lifts when there are at most `enum_cap` of them.
Verdict verify_trace(const Problem& problem, const TraceFile& trace, std::uint64_t enum_cap = 1u << 16);

}  // namespace semired
