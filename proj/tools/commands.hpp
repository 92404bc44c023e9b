#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semired::cli {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kGenericUnstable = 3,
  kCapExceeded = 4,
  kVerification = 5,
};

struct Overrides {
  std::optional<unsigned long> prime;
  std::optional<std::string> lattice_file;
  std::optional<std::uint64_t> enum_cap;
  std::optional<unsigned long> lift_cap;
  std::optional<std::uint64_t> max_iter;
};

int cmd_check(const std::string& input, const Overrides& o, std::ostream& out);
int cmd_run(const std::string& input, const Overrides& o, const std::optional<std::string>& trace_out,
            std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& input, const std::string& trace, const Overrides& o, std::ostream& out,
               std::ostream& err);
int cmd_count_flags(const std::vector<std::uint32_t>& qs, const std::string& type_file,
                    std::optional<std::uint64_t> enum_cap, std::ostream& out);
int cmd_fuzz(std::uint64_t seed, std::size_t count, const Overrides& o, std::ostream& out);

/// Maps a library error to an exit code and prints it to err.
int report(const std::exception& e, std::ostream& err);

}  // namespace semired::cli
