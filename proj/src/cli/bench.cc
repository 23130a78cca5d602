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
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "maxcert/checker.h"
#include "maxcert/cli.h"
#include "maxcert/optalgs.h"

namespace maxcert {

double MinTimeMs(const std::function<void()>& fn, int batches) {
  using Clock = std::chrono::steady_clock;
  constexpr auto kMinBatch = std::chrono::milliseconds(1);
  double best = 0;
  for (int b = 0; b < std::max(batches, 1); ++b) {
    const auto start = Clock::now();
    long calls = 0;
    Clock::time_point now;
    do {
      fn();
      ++calls;
      now = Clock::now();
    } while (now - start < kMinBatch);
    const double per_call =
        std::chrono::duration<double, std::milli>(now - start).count() / static_cast<double>(calls);
    if (b == 0 || per_call < best) best = per_call;
  }
  return best;
}

BenchRow BenchInstance(const std::string& name, const std::string& wcnf_bytes,
                       const BenchOptions& options) {
  const WcnfInstance inst = ParseWcnf(wcnf_bytes);
  BenchRow row;
  row.instance = name;

  RunOptions plain;
  plain.seed = options.seed;
  plain.generate_certificates = false;
  RunOptions cert = plain;
  cert.generate_certificates = true;
  cert.cert_mode = CertMode::kAll;

  RunResult result;
  row.solve_plain_ms =
      MinTimeMs([&] { RunAlgorithm(options.algorithm, inst, plain); }, options.repeat);
  row.solve_cert_ms =
      MinTimeMs([&] { result = RunAlgorithm(options.algorithm, inst, cert); }, options.repeat);
  row.optimum = result.optimum;
  row.iterations = static_cast<int>(result.iterations().size());
  row.unsat_iterations = static_cast<int>(
      std::count_if(result.iterations().begin(), result.iterations().end(),
                    [](const IterationRecord& it) { return it.status == IterationStatus::kUnsatisfiable; }));

  const Bundle bundle = MakeBundle(result, inst, wcnf_bytes);
  Verdict all;
  Verdict one;
  // Batches alternate between the two methods.
  for (int b = 0; b < std::max(options.repeat, 1); ++b) {
    const double t_all = MinTimeMs([&] { all = CheckMethod1(bundle); }, 1);
    const double t_one = MinTimeMs([&] { one = CheckMethod2(bundle); }, 1);
    row.check_all_ms = b == 0 ? t_all : std::min(row.check_all_ms, t_all);
    row.check_one_ms = b == 0 ? t_one : std::min(row.check_one_ms, t_one);
  }
  row.verdicts_valid = all.valid && one.valid;
  row.ordering_holds = row.unsat_iterations <= 1
                            ? std::abs(row.check_one_ms - row.check_all_ms) < 0.2 * row.check_all_ms
                            : row.check_one_ms < row.check_all_ms;
  return row;
}

std::vector<BenchRow> RunBench(const std::filesystem::path& corpus, const BenchOptions& options) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".wcnf" || ext == ".cnf")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchRow> rows;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    rows.push_back(BenchInstance(path.filename().string(), ss.str(), options));
  }
  return rows;
}

std::string BenchTsv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance\toptimum\titerations\tunsat_iterations\tsolve_plain_ms\tsolve_cert_ms"
         "\tcheck_all_ms\tcheck_one_ms\tverdicts\tordering\n";
  out << std::fixed << std::setprecision(4);
  for (const BenchRow& r : rows) {
    out << r.instance << '\t' << (r.optimum ? std::to_string(*r.optimum) : "INFEASIBLE") << '\t'
        << r.iterations << '\t' << r.unsat_iterations << '\t' << r.solve_plain_ms << '\t'
        << r.solve_cert_ms << '\t' << r.check_all_ms << '\t' << r.check_one_ms << '\t'
        << (r.verdicts_valid ? "VALID" : "INVALID") << '\t' << (r.ordering_holds ? "ok" : "VIOLATED")
        << '\n';
  }
  return out.str();
}

std::string BenchJson(const std::vector<BenchRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    j.push_back({{"instance", r.instance},
                 {"optimum", r.optimum ? nlohmann::json(*r.optimum) : nlohmann::json(nullptr)},
                 {"iterations", r.iterations},
                 {"unsat_iterations", r.unsat_iterations},
                 {"solve_plain_ms", r.solve_plain_ms},
                 {"solve_cert_ms", r.solve_cert_ms},
                 {"check_all_ms", r.check_all_ms},
                 {"check_one_ms", r.check_one_ms},
                 {"verdicts_valid", r.verdicts_valid},
                 {"ordering_holds", r.ordering_holds}});
  }
  return j.dump(2) + "\n";
}

}  // namespace maxcert
