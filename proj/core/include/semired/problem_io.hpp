#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "semired/flags.hpp"
#include "semired/langton.hpp"

namespace semired {

struct Problem {
  unsigned long p = 2;
  KFiltration filtration;
  std::optional<QMat> lattice;  // ambient basis rows; standard when absent
  LangtonCaps caps;

  std::size_t n() const noexcept { return filtration.n; }
  Lattice start_lattice() const { return lattice ? Lattice(*lattice) : Lattice::standard(filtration.n); }
};

struct TraceFile {
  Problem problem;
  LangtonTrace trace;
  std::string verdict = "semistable";
};

/// All parsers throw Error(Parse) for malformed text and Error(InvalidInput)
/// for well-formed input that violates an invariant.
Problem parse_problem(std::string_view text);
std::string serialize_problem(const Problem& problem);

TraceFile parse_trace(std::string_view text);
std::string serialize_trace(const TraceFile& trace);

TypeDatum parse_type(std::string_view text);
std::string serialize_type(const TypeDatum& type);

/// Parses a JSON array of rational rows, e.g. [["1","0"],["0","2"]].
QMat parse_matrix(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace semired
