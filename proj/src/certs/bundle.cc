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

#include <fstream>
#include <sstream>

#include "maxcert/certs.h"

namespace maxcert {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestFile = "manifest.json";

bool IsPlainFileName(const std::string& name) {
  return !name.empty() && name.find('/') == std::string::npos &&
         name.find('\\') == std::string::npos && name != "." && name != "..";
}

bool IsBundleFile(const fs::path& p) {
  const std::string name = p.filename().string();
  if (name == kManifestFile || name == "instance.wcnf") return true;
  return name.starts_with("proof_") && name.ends_with(".drup");
}

std::vector<std::string> ProofReferences(const RunManifest& m) {
  std::vector<std::string> refs;
  if (m.hard_feasibility.proof_file) refs.push_back(*m.hard_feasibility.proof_file);
  for (const IterationRecord& it : m.iterations) {
    if (it.proof_file) refs.push_back(*it.proof_file);
  }
  if (m.minimality) refs.push_back(m.minimality->proof_file);
  return refs;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw BundleError(BundleError::Kind::kIo, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& p, std::string_view bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw BundleError(BundleError::Kind::kIo, "cannot write " + p.string());
}

[[noreturn]] void Structure(const std::string& what) {
  throw BundleError(BundleError::Kind::kSchema, what);
}

}  // namespace

void ValidateBundleStructure(const Bundle& b) {
  const RunManifest& m = b.manifest;
  if (m.format_version != kManifestFormatVersion) Structure("unsupported format_version");
  if (!IsPlainFileName(m.instance_file)) Structure("instance file must be a plain file name");
  if (Sha256Hex(b.instance_bytes) != m.instance_sha256) {
    throw BundleError(BundleError::Kind::kDigestMismatch,
                      "instance digest does not match manifest");
  }
  if (m.num_vars != b.instance.num_vars || m.num_hard != static_cast<int>(b.instance.hard.size()) ||
      m.num_soft != static_cast<int>(b.instance.soft.size())) {
    Structure("manifest instance counts disagree with the instance file");
  }
  if (m.relaxation_base != m.num_vars + 1) Structure("relaxation_base must be num_vars + 1");
  if (m.encoding != "sequential_counter") Structure("unknown encoding '" + m.encoding + "'");

  const HardFeasibilityRecord& h = m.hard_feasibility;
  if (h.status == IterationStatus::kSatisfiable && (!h.model || h.proof_file)) {
    Structure("satisfiable hard_feasibility needs a model and no proof");
  }
  if (h.status == IterationStatus::kUnsatisfiable && (!h.proof_file || h.model)) {
    Structure("unsatisfiable hard_feasibility needs a proof and no model");
  }

  for (std::size_t i = 0; i < m.iterations.size(); ++i) {
    const IterationRecord& it = m.iterations[i];
    if (it.index != static_cast<int>(i) + 1) Structure("iteration indices must be 1, 2, ...");
    if (it.status == IterationStatus::kSatisfiable && it.proof_file) {
      Structure("iteration " + std::to_string(it.index) + ": satisfiable iteration with a proof");
    }
    if (it.status == IterationStatus::kUnsatisfiable && it.model) {
      Structure("iteration " + std::to_string(it.index) + ": unsatisfiable iteration with a model");
    }
    if (it.status == IterationStatus::kSatisfiable && !it.relaxed_true) {
      Structure("iteration " + std::to_string(it.index) + ": satisfiable iteration lacks relaxed_true");
    }
  }

  for (const std::string& ref : ProofReferences(m)) {
    if (!IsPlainFileName(ref)) Structure("proof reference '" + ref + "' is not a plain file name");
    auto it = b.proofs.find(ref);
    if (it == b.proofs.end()) {
      throw BundleError(BundleError::Kind::kDanglingReference, "missing proof file " + ref);
    }
    if (it->second.empty()) Structure("proof file " + ref + " is empty");
  }
}

void WriteBundle(const Bundle& bundle, const fs::path& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) {
      throw BundleError(BundleError::Kind::kIo, dir.string() + " is not a directory");
    }
    if (!fs::is_empty(dir, ec)) {
      if (!force) {
        throw BundleError(BundleError::Kind::kNotEmpty,
                          dir.string() + " is not empty (use force to overwrite)");
      }
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && IsBundleFile(entry.path())) fs::remove(entry.path());
      }
    }
  } else if (!fs::create_directories(dir, ec) || ec) {
    throw BundleError(BundleError::Kind::kIo, "cannot create " + dir.string());
  }

  RunManifest m = bundle.manifest;
  m.instance_sha256 = Sha256Hex(bundle.instance_bytes);
  WriteFile(dir / m.instance_file, bundle.instance_bytes);
  for (const std::string& ref : ProofReferences(m)) {
    auto it = bundle.proofs.find(ref);
    if (it == bundle.proofs.end()) {
      throw BundleError(BundleError::Kind::kDanglingReference, "no text for proof " + ref);
    }
    WriteFile(dir / ref, it->second);
  }
  WriteFile(dir / kManifestFile, ManifestToJson(m));
}

Bundle ReadBundle(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw BundleError(BundleError::Kind::kIo, "bundle directory " + dir.string() + " not found");
  }
  Bundle b;
  b.manifest = ManifestFromJson(ReadFile(dir / kManifestFile));
  if (!IsPlainFileName(b.manifest.instance_file)) Structure("instance file must be a plain file name");
  b.instance_bytes = ReadFile(dir / b.manifest.instance_file);
  if (Sha256Hex(b.instance_bytes) != b.manifest.instance_sha256) {
    throw BundleError(BundleError::Kind::kDigestMismatch,
                      "instance digest does not match manifest");
  }
  try {
    b.instance = ParseWcnf(b.instance_bytes);
  } catch (const ParseError& e) {
    Structure(std::string("instance: ") + e.what());
  }
  for (const std::string& ref : ProofReferences(b.manifest)) {
    if (!IsPlainFileName(ref)) Structure("proof reference '" + ref + "' is not a plain file name");
    if (!fs::is_regular_file(dir / ref, ec)) {
      throw BundleError(BundleError::Kind::kDanglingReference, "missing proof file " + ref);
    }
    b.proofs[ref] = ReadFile(dir / ref);
  }
  ValidateBundleStructure(b);
  return b;
}

}  // namespace maxcert
