#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace semired::cli;

int main(int argc, char** argv) {
  CLI::App app{"semistable reduction of multi-filtered lattices over Z_(p)"};
  app.require_subcommand(1);

  Overrides o;
  std::string input, trace, type_file;
  std::optional<std::string> trace_out;
  std::vector<std::uint32_t> qs;
  std::uint64_t seed = 1;
  std::size_t count = 100;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", input, "problem JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--prime", o.prime, "override p");
    sub->add_option("--lattice", o.lattice_file, "JSON basis rows for the starting lattice")->check(CLI::ExistingFile);
    sub->add_option("--enum-cap", o.enum_cap, "subspace enumeration cap");
    sub->add_option("--lift-cap", o.lift_cap, "largest lift level tried");
    sub->add_option("--max-iter", o.max_iter, "modification step cap");
  };

  auto* check = app.add_subcommand("check", "weight, slope and semistability of the reduction");
  common(check);
  auto* run = app.add_subcommand("run", "run the modification loop and emit a trace");
  common(run);
  run->add_option("--trace-out,-o", trace_out, "write the trace here instead of stdout");
  auto* verify = app.add_subcommand("verify", "check a trace against its problem");
  common(verify);
  verify->add_option("--trace,-t", trace, "trace JSON")->required()->check(CLI::ExistingFile);
  auto* flags = app.add_subcommand("count-flags", "count semistable points of a flag type");
  flags->add_option("--prime,-q", qs, "field size(s)")->required();
  flags->add_option("--type", type_file, "type JSON")->required()->check(CLI::ExistingFile);
  flags->add_option("--enum-cap", o.enum_cap, "enumeration cap");
  auto* fuzz = app.add_subcommand("fuzz", "random instances: run, serialize, verify");
  fuzz->add_option("--seed", seed, "RNG seed");
  fuzz->add_option("--count,-n", count, "instances to run");
  fuzz->add_option("--prime", o.prime, "restrict to one prime");
  fuzz->add_option("--enum-cap", o.enum_cap, "subspace enumeration cap");
  fuzz->add_option("--lift-cap", o.lift_cap, "largest lift level tried");
  fuzz->add_option("--max-iter", o.max_iter, "modification step cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*check) return cmd_check(input, o, std::cout);
    if (*run) return cmd_run(input, o, trace_out, std::cout, std::cerr);
    if (*verify) return cmd_verify(input, trace, o, std::cout, std::cerr);
    if (*flags) return cmd_count_flags(qs, type_file, o.enum_cap, std::cout);
    if (*fuzz) return cmd_fuzz(seed, count, o, std::cout);
  } catch (const std::exception& e) {
    return report(e, std::cerr);
  }
  return kFailure;
}
