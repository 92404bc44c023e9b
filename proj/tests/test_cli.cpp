#include <cstdio>
#include <filesystem>
#include <random>
#include <sys/wait.h>

#include "doctest.h"
#include "semired/certificate.hpp"
#include "semired/errors.hpp"
#include "semired/problem_io.hpp"
#include "semired/random_instance.hpp"

using namespace semired;
namespace fs = std::filesystem;

namespace {

const fs::path kProblems = SEMIRED_PROBLEMS_DIR;

struct Ran {
  int code;
  std::string out;
};

Ran run_cli(const std::string& args) {
  const std::string cmd = std::string(SEMIRED_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("semired_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

Problem load(const std::string& name) { return parse_problem(read_text_file(kProblems / name)); }

TraceFile run_trace(const Problem& pr) {
  const auto r = langton_run(pr.filtration, pr.p, pr.start_lattice(), pr.caps);
  return {pr, r.trace, "semistable"};
}

}  // namespace

TEST_CASE("problem parsing") {
  const Problem a = load("instance_a.json");
  CHECK(a.p == 2);
  CHECK(a.n() == 2);
  REQUIRE(a.filtration.chains.size() == 2);
  CHECK(a.filtration.chains[1][0].basis()(0, 1) == 2);
  CHECK_FALSE(a.lattice.has_value());
  CHECK(a.caps.lift == 64);
  CHECK(a.caps.iterations == 10000);
  const Problem t = load("three_chains.json");
  CHECK(t.lattice.has_value());
  CHECK(t.filtration.chains[0].size() == 2);

  auto kind_of = [](const std::string& text) {
    try {
      parse_problem(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::PreconditionViolated;  // no error
  };
  CHECK(kind_of("{") == ErrorKind::Parse);
  CHECK(kind_of(R"({"p": 2, "n": 2, "chains": [[[["1//2", "0"]]]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"p": 4, "n": 2, "chains": []})") == ErrorKind::InvalidInput);
  CHECK(kind_of(R"({"p": 2, "n": 2, "chains": [[[["1"]]]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"p": 2, "n": 2, "chains": [[[["1","0"]], [["0","1"]]]]})") == ErrorKind::InvalidInput);
  CHECK(kind_of(R"({"p": 2, "n": 2, "chains": [], "lattice": [["1","2"],["2","4"]]})") == ErrorKind::RankDeficient);
  try {
    parse_problem("{\n  \"p\": 2,\n  oops\n}");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("problem and trace round trips") {
  std::mt19937_64 rng(61);
  int seen = 0;
  for (int it = 0; it < 400 && seen < 40; ++it) {
    const auto inst = random_instance(rng, {});
    if (!inst) continue;
    if (generic_semistability(inst->filtration, inst->p).verdict != GenericStability::Verdict::Semistable) continue;
    ++seen;
    Problem pr;
    pr.p = inst->p;
    pr.filtration = inst->filtration;
    pr.lattice = random_lattice_basis(rng, inst->filtration.n, inst->p);
    const std::string text = serialize_problem(pr);
    CHECK(serialize_problem(parse_problem(text)) == text);
    const TraceFile tf = run_trace(pr);
    const std::string trace_text = serialize_trace(tf);
    const TraceFile back = parse_trace(trace_text);
    CHECK(serialize_trace(back) == trace_text);
    CHECK(back.trace.steps.size() == tf.trace.steps.size());
    CHECK(verify_trace(pr, back).ok);
  }
  const TypeDatum t = parse_type(read_text_file(kProblems / "full_flags_2_2.json"));
  CHECK(serialize_type(parse_type(serialize_type(t))) == serialize_type(t));
}

TEST_CASE("verify_trace rejects tampered traces") {
  const Problem b = load("instance_b.json");
  const TraceFile good = run_trace(b);
  REQUIRE(good.trace.steps.size() == 1);
  CHECK(verify_trace(b, good).ok);

  TraceFile lower_m = good;
  lower_m.trace.steps[0].m = 1;
  CHECK(verify_trace(b, lower_m).reason == reason::kLiftableAbove);

  TraceFile higher_m = good;
  higher_m.trace.steps[0].m = 3;
  CHECK(verify_trace(b, higher_m).reason == reason::kWitness);

  TraceFile wrong_b = good;
  wrong_b.trace.steps[0].destabilizer = FpSubspace(PrimeField{2}, 2, FpMat::from_rows({{0, 1}}, 2));
  CHECK(verify_trace(b, wrong_b).reason == reason::kDestabilizer);

  TraceFile wrong_final = good;
  wrong_final.trace.final_lattice(1, 1) = 8;
  CHECK(verify_trace(b, wrong_final).reason == reason::kFinalLattice);

  TraceFile wrong_next = good;
  wrong_next.trace.steps[0].next_lattice(1, 1) = 2;
  wrong_next.trace.final_lattice(1, 1) = 2;
  CHECK(verify_trace(b, wrong_next).reason == reason::kModification);

  TraceFile bad_witness = good;
  bad_witness.trace.steps[0].witness.certificates[1][0](0, 1) = 1;
  CHECK(verify_trace(b, bad_witness).reason == reason::kWitness);

  const Problem a = load("instance_a.json");
  CHECK(verify_trace(a, good).reason == reason::kProblemEcho);

  TraceFile truncated = good;
  truncated.trace.steps.clear();
  truncated.trace.final_lattice = good.trace.steps[0].lattice;
  CHECK(verify_trace(b, truncated).reason == reason::kFinalUnstable);
}

TEST_CASE("a two-step trace descends and verifies") {
  const Problem t = load("three_chains.json");
  TraceFile tf = run_trace(t);
  REQUIRE(tf.trace.steps.size() == 2);
  CHECK(verify_trace(t, tf).ok);
  CHECK(lex_less(tf.trace.steps[1].slope, tf.trace.steps[1].dim, tf.trace.steps[0].slope, tf.trace.steps[0].dim));
}

TEST_CASE("cli check") {
  auto a = run_cli("check -i " + (kProblems / "instance_a.json").string());
  CHECK(a.code == 0);
  CHECK(a.out.find("unstable, witness span(e1), mu = 2 > 1") != std::string::npos);
  auto t = run_cli("check -i " + (kProblems / "trivial.json").string());
  CHECK(t.code == 0);
  CHECK(t.out.find("semistable, mu = 0") != std::string::npos);
  auto m = run_cli("check -i " + (kProblems / "malformed.json").string());
  CHECK(m.code == 2);
  CHECK(m.out.find("'1//2'") != std::string::npos);
  auto p = run_cli("check --prime 3 -i " + (kProblems / "instance_a.json").string());
  CHECK(p.out.find("semistable, mu = 1") != std::string::npos);
}

TEST_CASE("cli run and verify") {
  const fs::path dir = scratch_dir();
  const std::string a = (kProblems / "instance_a.json").string();
  const std::string trace = (dir / "a.json").string();
  auto r = run_cli("run -i " + a + " -o " + trace);
  CHECK(r.code == 0);
  CHECK(r.out.find("1 step(s); m=1 final lattice <(1,0), (0,2)>") != std::string::npos);
  CHECK(run_cli("verify -i " + a + " -t " + trace).code == 0);
  const std::string b = (kProblems / "instance_b.json").string();
  auto vb = run_cli("verify -i " + b + " -t " + trace);
  CHECK(vb.code == 5);
  CHECK(vb.out.find("problem echo mismatch") != std::string::npos);

  TraceFile tf = parse_trace(read_text_file(trace));
  tf.trace.steps[0].m = 2;
  write_text_file(dir / "edited.json", serialize_trace(tf));
  auto ve = run_cli("verify -i " + a + " -t " + (dir / "edited.json").string());
  CHECK(ve.code == 5);
  CHECK(ve.out.find("verification failed") != std::string::npos);

  auto u = run_cli("run -i " + (kProblems / "generic_unstable.json").string());
  CHECK(u.code == 3);
  auto cap = run_cli("run --max-iter 0 -i " + a);
  CHECK(cap.code == 4);
  auto semi = run_cli("run -i " + (kProblems / "trivial.json").string());
  CHECK(semi.code == 0);
  CHECK(semi.out.find("\"steps\": []") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli count-flags and fuzz") {
  auto c = run_cli("count-flags -q 2 -q 3 --type " + (kProblems / "full_flags_2_2.json").string());
  CHECK(c.code == 0);
  CHECK(c.out.find("2,full-2-2,9,6") != std::string::npos);
  CHECK(c.out.find("3,full-2-2,16,12") != std::string::npos);
  auto t = run_cli("count-flags -q 2 --type " + (kProblems / "trivial_type.json").string());
  CHECK(t.out.find("2,trivial,1,1") != std::string::npos);
  auto big = run_cli("count-flags -q 5 --enum-cap 10 --type " + (kProblems / "full_flags_2_2.json").string());
  CHECK(big.code == 4);
  auto f = run_cli("fuzz --seed 3 -n 20");
  CHECK(f.code == 0);
  CHECK(f.out.find("instances 20") != std::string::npos);
  CHECK(run_cli("bogus").code == 2);
}
