/*
Copyright 2026 The maxcert Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "maxcert/checker.h"
#include "maxcert/cli.h"
#include "maxcert/optalgs.h"

namespace maxcert {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SolveArgs {
  std::string alg = "msu3";
  std::string cert_mode = "all";
  std::string out_dir;
  std::uint64_t seed = 0;
  std::int64_t conflict_budget = 0;
  bool force = false;
  std::string input;
};

int Solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto alg = ParseAlgorithm(a.alg);
  const auto mode = ParseCertMode(a.cert_mode);
  std::string bytes;
  WcnfInstance inst;
  try {
    bytes = ReadAll(a.input);
    inst = ParseWcnf(bytes);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  RunOptions options;
  options.cert_mode = *mode;
  options.seed = a.seed;
  if (a.conflict_budget > 0) options.conflict_budget = a.conflict_budget;
  RunResult result;
  try {
    result = RunAlgorithm(*alg, inst, options);
  } catch (const SolverLimitError& e) {
    err << "error: " << e.what() << '\n';
    out << "s UNKNOWN\n";
    return kExitInternal;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  if (!a.out_dir.empty()) {
    try {
      WriteBundle(MakeBundle(result, inst, bytes), a.out_dir, a.force);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitInput;
    }
  }
  if (result.optimum) {
    out << "o " << *result.optimum << '\n';
  } else {
    out << "s INFEASIBLE\n";
  }
  return kExitOk;
}

int Oracle(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<int> opt = BruteForceOptimum(ParseWcnf(ReadAll(path)));
    out << (opt ? "o " + std::to_string(*opt) : std::string("s INFEASIBLE")) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

int Gen(const GenParams& p, const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = FormatWcnf(GenerateInstance(p));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) {
    err << "error: cannot write " << out_path << '\n';
    return kExitInput;
  }
  return kExitOk;
}

int Bench(const std::string& corpus, const BenchOptions& options, const std::string& json_path,
          std::ostream& out, std::ostream& err) {
  std::vector<BenchRow> rows;
  try {
    rows = RunBench(corpus, options);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  out << BenchTsv(rows);
  if (!json_path.empty()) {
    std::ofstream f(json_path, std::ios::binary | std::ios::trunc);
    f << BenchJson(rows);
    if (!f) {
      err << "error: cannot write " << json_path << '\n';
      return kExitInput;
    }
  }
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) {
    return r.verdicts_valid && r.ordering_holds;
  });
  return ok ? kExitOk : kExitInvalid;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified partial MaxSAT: solve, check, gen, oracle, bench", "maxcert"};
  app.require_subcommand(1);
  const std::vector<std::string> algs{"lsus", "lssu", "binary", "msu3"};

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a WCNF instance and write a certificate bundle");
  solve_cmd->add_option("--alg", solve.alg, "Algorithm")->check(CLI::IsMember(algs));
  solve_cmd->add_option("--cert-mode", solve.cert_mode, "Certificates to keep")
      ->check(CLI::IsMember({"all", "last"}));
  solve_cmd->add_option("--out", solve.out_dir, "Bundle directory");
  solve_cmd->add_option("--seed", solve.seed, "Solver seed");
  solve_cmd->add_option("--conflict-budget", solve.conflict_budget, "Conflicts per SAT call (0: unlimited)");
  solve_cmd->add_flag("--force", solve.force, "Overwrite bundle files in a non-empty directory");
  solve_cmd->add_option("input", solve.input, "WCNF file")->required();

  int method = 2;
  std::string bundle_dir;
  CLI::App* check_cmd = app.add_subcommand("check", "Validate a certificate bundle");
  check_cmd->add_option("--method", method, "1: every iteration, 2: last two plus minimality")
      ->check(CLI::IsMember({1, 2}));
  check_cmd->add_option("bundle", bundle_dir, "Bundle directory")->required();

  std::string oracle_input;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum (at most 20 variables)");
  oracle_cmd->add_option("input", oracle_input, "WCNF file")->required();

  GenParams gen;
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Random instance with a satisfiable hard part");
  gen_cmd->add_option("--vars", gen.vars, "Variables")->required();
  gen_cmd->add_option("--hard", gen.hard, "Hard clauses")->required();
  gen_cmd->add_option("--soft", gen.soft, "Soft clauses")->required();
  gen_cmd->add_option("--width", gen.width, "Clause width")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out", gen_out, "Output file (default: stdout)");

  BenchOptions bench;
  std::string bench_alg = "lsus";
  std::string bench_corpus;
  std::string bench_json;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time check-all against check-one on a corpus");
  bench_cmd->add_option("--alg", bench_alg, "Algorithm")->check(CLI::IsMember(algs));
  bench_cmd->add_option("--seed", bench.seed, "Solver seed");
  bench_cmd->add_option("--repeat", bench.repeat, "Timing batches (minimum reported)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--json", bench_json, "Also write the report as JSON");
  bench_cmd->add_option("corpus", bench_corpus, "Directory of .wcnf files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (*solve_cmd) return Solve(solve, out, err);
  if (*check_cmd) {
    const Verdict v = CheckBundleDirectory(bundle_dir, method);
    out << VerdictToJson(v, method) << '\n';
    return ExitCode(v);
  }
  if (*oracle_cmd) return Oracle(oracle_input, out, err);
  if (*gen_cmd) return Gen(gen, gen_out, out, err);
  bench.algorithm = *ParseAlgorithm(bench_alg);
  return Bench(bench_corpus, bench, bench_json, out, err);
}

}  // namespace maxcert
