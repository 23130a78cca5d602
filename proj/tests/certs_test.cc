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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.h"
#include "maxcert/cardenc.h"
#include "maxcert/certs.h"
#include "maxcert/optalgs.h"

namespace maxcert {
namespace {

namespace fs = std::filesystem;
using testing::FiveCycleText;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("maxcert_certs_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

TEST(Sha256Hex, KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Manifest, JsonRoundTrip) {
  for (Algorithm alg : {Algorithm::kLinearUnsatSat, Algorithm::kLinearSatUnsat,
                        Algorithm::kBinarySearch, Algorithm::kMsu3}) {
    for (CertMode mode : {CertMode::kAll, CertMode::kLast}) {
      const Bundle b = testing::SolveToBundle(FiveCycleText(), alg, mode);
      const std::string text = ManifestToJson(b.manifest);
      EXPECT_EQ(ManifestFromJson(text), b.manifest);
      EXPECT_EQ(ManifestToJson(ManifestFromJson(text)), text);
    }
  }
}

TEST(Manifest, KeysAreSorted) {
  const std::string text = ManifestToJson(testing::SolveToBundle(FiveCycleText(), Algorithm::kMsu3).manifest);
  EXPECT_LT(text.find("\"algorithm\""), text.find("\"cert_mode\""));
  EXPECT_LT(text.find("\"cert_mode\""), text.find("\"encoding\""));
  EXPECT_LT(text.find("\"minimality\""), text.find("\"optimum\""));
  EXPECT_EQ(text.back(), '\n');
}

TEST(Manifest, SchemaViolations) {
  EXPECT_THROW(ManifestFromJson("{"), BundleError);
  EXPECT_THROW(ManifestFromJson("{}"), BundleError);
  std::string text = ManifestToJson(testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat).manifest);
  const auto pos = text.find("\"lsus\"");
  text.replace(pos, 6, "\"wpm1\"");
  try {
    ManifestFromJson(text);
    FAIL();
  } catch (const BundleError& e) {
    EXPECT_EQ(e.kind(), BundleError::Kind::kSchema);
  }
}

TEST(Bundle, FiveCycleAllAndLast) {
  TempDir all;
  WriteBundle(testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat, CertMode::kAll), all.path());
  for (int i = 1; i <= 3; ++i) EXPECT_TRUE(fs::exists(all.path() / ("proof_" + std::to_string(i) + ".drup")));
  EXPECT_EQ(CountCertificates(ReadBundle(all.path()).manifest), 4);

  TempDir last;
  WriteBundle(testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat, CertMode::kLast), last.path());
  const Bundle b = ReadBundle(last.path());
  EXPECT_EQ(CountCertificates(b.manifest), 2);
  EXPECT_EQ(b.proofs.size(), 1u);
  EXPECT_EQ(b.manifest.iterations[2].bound, 2);
  EXPECT_TRUE(b.manifest.iterations[2].proof_file);
}

TEST(Bundle, EmptySoftHasOnlyHardRecord) {
  TempDir dir;
  WriteBundle(testing::SolveToBundle("p wcnf 2 1 2\n2 1 2 0\n", Algorithm::kLinearUnsatSat), dir.path());
  const Bundle b = ReadBundle(dir.path());
  EXPECT_TRUE(b.manifest.iterations.empty());
  EXPECT_TRUE(b.manifest.hard_feasibility.model);
  EXPECT_EQ(b.manifest.optimum, 0);
}

TEST(Bundle, RoundTripPreservesEverything) {
  TempDir dir;
  const Bundle in = testing::SolveToBundle(FiveCycleText(), Algorithm::kMsu3);
  WriteBundle(in, dir.path());
  const Bundle out = ReadBundle(dir.path());
  EXPECT_EQ(out.manifest, in.manifest);
  EXPECT_EQ(out.proofs, in.proofs);
  EXPECT_EQ(out.instance, in.instance);
  EXPECT_EQ(out.instance_bytes, in.instance_bytes);
}

TEST(Bundle, CopiedDirectoryReadsIdentically) {
  TempDir dir;
  WriteBundle(testing::SolveToBundle(FiveCycleText(), Algorithm::kBinarySearch), dir.path());
  const fs::path copy = dir.path().string() + "_copy";
  fs::remove_all(copy);
  fs::copy(dir.path(), copy);
  EXPECT_EQ(ReadBundle(copy).manifest, ReadBundle(dir.path()).manifest);
  fs::remove_all(copy);
}

TEST(Bundle, RefusesNonEmptyDirectoryWithoutForce) {
  TempDir dir;
  const Bundle b = testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat);
  WriteBundle(b, dir.path());
  std::ofstream(dir.path() / "notes.txt") << "keep me";
  try {
    WriteBundle(b, dir.path());
    FAIL();
  } catch (const BundleError& e) {
    EXPECT_EQ(e.kind(), BundleError::Kind::kNotEmpty);
  }
  WriteBundle(testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat, CertMode::kLast), dir.path(),
              true);
  EXPECT_TRUE(fs::exists(dir.path() / "notes.txt"));
  EXPECT_FALSE(fs::exists(dir.path() / "proof_1.drup"));
  EXPECT_EQ(ReadBundle(dir.path()).manifest.cert_mode, CertMode::kLast);
}

TEST(Bundle, DanglingReference) {
  TempDir dir;
  WriteBundle(testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat), dir.path());
  fs::remove(dir.path() / "proof_2.drup");
  try {
    ReadBundle(dir.path());
    FAIL();
  } catch (const BundleError& e) {
    EXPECT_EQ(e.kind(), BundleError::Kind::kDanglingReference);
  }
}

TEST(Bundle, TamperedInstance) {
  TempDir dir;
  WriteBundle(testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat), dir.path());
  std::string text = Slurp(dir.path() / "instance.wcnf");
  text += "c tampered\n";
  std::ofstream(dir.path() / "instance.wcnf", std::ios::binary) << text;
  try {
    ReadBundle(dir.path());
    FAIL();
  } catch (const BundleError& e) {
    EXPECT_EQ(e.kind(), BundleError::Kind::kDigestMismatch);
  }
}

TEST(Bundle, MissingDirectory) {
  try {
    ReadBundle("/nonexistent/maxcert/bundle");
    FAIL();
  } catch (const BundleError& e) {
    EXPECT_EQ(e.kind(), BundleError::Kind::kIo);
  }
}

TEST(Reconstruct, FiveCycleFinalIteration) {
  const Bundle b = testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat);
  const CnfFormula f = ReconstructInstance(b.instance, b.manifest, 4);
  const RelaxedFormula relaxed = BuildAllRelaxed(b.instance);
  const AtMostEncoding enc = EncodeAtMost(relaxed.relaxation, 3, 11);
  ASSERT_EQ(f.clauses.size(), 10 + enc.clauses.size());
  EXPECT_TRUE(std::equal(relaxed.formula.clauses.begin(), relaxed.formula.clauses.end(), f.clauses.begin()));
  EXPECT_TRUE(std::equal(enc.clauses.begin(), enc.clauses.end(), f.clauses.begin() + 10));
  EXPECT_EQ(f.num_vars, enc.next_free_var() - 1);
}

TEST(Reconstruct, BuggyRunSecondIteration) {
  const Bundle b = testing::BuggyMsu3Bundle();
  const CnfFormula f = ReconstructInstance(b.instance, b.manifest, 2);
  // {(x v r1), ()} and r1 <= 1 contributes nothing.
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[0], (Clause{Literal::Positive(1), Literal::Positive(2)}));
  EXPECT_TRUE(f.clauses[1].empty());
  EXPECT_EQ(f.num_vars, 2);
}

TEST(Reconstruct, MinimalityInstance) {
  const IterationInstance mi = BuildMinimalityInstance(ParseWcnf(testing::UnitAndEmptyText()), 2);
  // {(x v r1), (r2)} plus r1 + r2 <= 1.
  EXPECT_EQ(mi.formula.clauses[0], (Clause{Literal::Positive(1), Literal::Positive(2)}));
  EXPECT_EQ(mi.formula.clauses[1], Clause{Literal::Positive(3)});
  EXPECT_EQ(mi.relaxation, (std::vector<Literal>{Literal::Positive(2), Literal::Positive(3)}));
  EXPECT_EQ(mi.formula.clauses.size(), 2u + SequentialCounterClauseCount(2, 1));
}

TEST(Reconstruct, Errors) {
  const Bundle b = testing::SolveToBundle(FiveCycleText(), Algorithm::kLinearUnsatSat);
  EXPECT_THROW(ReconstructInstance(b.instance, b.manifest, 0), ReconstructionError);
  EXPECT_THROW(ReconstructInstance(b.instance, b.manifest, 5), ReconstructionError);
  RunManifest m = b.manifest;
  m.iterations[0].aux_base = 3;
  EXPECT_THROW(ReconstructInstance(b.instance, m, 1), ReconstructionError);

  Bundle buggy = testing::BuggyMsu3Bundle();
  buggy.manifest.iterations[0].newly_relaxed = {7};
  EXPECT_THROW(ReconstructInstance(buggy.instance, buggy.manifest, 2), ReconstructionError);
}

}  // namespace
}  // namespace maxcert
