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

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "json.hpp"
#include "maxcert/certs.h"

namespace maxcert {

using nlohmann::json;

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kLinearUnsatSat:
      return "lsus";
    case Algorithm::kLinearSatUnsat:
      return "lssu";
    case Algorithm::kBinarySearch:
      return "binary";
    case Algorithm::kMsu3:
      return "msu3";
  }
  return "";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kLinearUnsatSat, Algorithm::kLinearSatUnsat,
                      Algorithm::kBinarySearch, Algorithm::kMsu3}) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view CertModeName(CertMode m) { return m == CertMode::kAll ? "all" : "last"; }

std::optional<CertMode> ParseCertMode(std::string_view name) {
  if (name == "all") return CertMode::kAll;
  if (name == "last") return CertMode::kLast;
  return std::nullopt;
}

int CountCertificates(const RunManifest& m) {
  int n = 0;
  for (const IterationRecord& it : m.iterations) n += it.has_certificate() ? 1 : 0;
  return n;
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

constexpr std::string_view kBinaryLoopGuard = "mu > lambda + 1";

std::string_view StatusName(IterationStatus s) {
  return s == IterationStatus::kSatisfiable ? "SATISFIABLE" : "UNSATISFIABLE";
}

std::string_view BoundKindName(BoundKind k) {
  switch (k) {
    case BoundKind::kLambda:
      return "lambda";
    case BoundKind::kMu:
      return "mu";
    case BoundKind::kTau:
      return "tau";
  }
  return "";
}

[[noreturn]] void SchemaError(const std::string& what) {
  throw BundleError(BundleError::Kind::kSchema, "manifest: " + what);
}

IterationStatus ParseStatus(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "SATISFIABLE") return IterationStatus::kSatisfiable;
  if (s == "UNSATISFIABLE") return IterationStatus::kUnsatisfiable;
  SchemaError("unknown status '" + s + "'");
}

BoundKind ParseBoundKind(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "lambda") return BoundKind::kLambda;
  if (s == "mu") return BoundKind::kMu;
  if (s == "tau") return BoundKind::kTau;
  SchemaError("unknown bound_kind '" + s + "'");
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object()) SchemaError("expected object around '" + std::string(key) + "'");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaError("missing field '" + std::string(key) + "'");
  return *it;
}

int IntField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_number_integer()) SchemaError("field '" + std::string(key) + "' must be an integer");
  return v.get<int>();
}

std::string StringField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_string()) SchemaError("field '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

std::vector<int> IntArray(const json& v, const char* what) {
  if (!v.is_array()) SchemaError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) SchemaError(std::string(what) + " must contain integers");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

std::string ManifestToJson(const RunManifest& m) {
  json j;
  j["format_version"] = m.format_version;
  j["instance"] = {{"file", m.instance_file},
                   {"sha256", m.instance_sha256},
                   {"num_vars", m.num_vars},
                   {"num_hard", m.num_hard},
                   {"num_soft", m.num_soft}};
  j["algorithm"] = AlgorithmName(m.algorithm);
  j["cert_mode"] = CertModeName(m.cert_mode);
  j["encoding"] = m.encoding;
  j["seed"] = m.seed;
  j["layout"] = {{"relaxation_base", m.relaxation_base},
                 {"clause_order", "hard_then_soft"},
                 {"minimality_relaxation", "all_soft_in_id_order"}};
  if (m.algorithm == Algorithm::kBinarySearch) j["loop_guard"] = kBinaryLoopGuard;

  json hard = {{"status", StatusName(m.hard_feasibility.status)}};
  if (m.hard_feasibility.model) hard["model"] = *m.hard_feasibility.model;
  if (m.hard_feasibility.proof_file) hard["proof"] = *m.hard_feasibility.proof_file;
  j["hard_feasibility"] = hard;

  json iterations = json::array();
  for (const IterationRecord& it : m.iterations) {
    json r = {{"index", it.index},
              {"bound_kind", BoundKindName(it.bound_kind)},
              {"bound", it.bound},
              {"status", StatusName(it.status)},
              {"aux_base", it.aux_base},
              {"newly_relaxed", it.newly_relaxed}};
    if (it.relaxed_true) r["relaxed_true"] = *it.relaxed_true;
    if (it.model) {
      r["certificate"] = {{"model", *it.model}};
    } else if (it.proof_file) {
      r["certificate"] = {{"proof", *it.proof_file}};
    } else {
      r["certificate"] = nullptr;
    }
    iterations.push_back(std::move(r));
  }
  j["iterations"] = std::move(iterations);

  if (m.minimality) {
    j["minimality"] = {{"optimum", m.minimality->optimum},
                       {"aux_base", m.minimality->aux_base},
                       {"proof", m.minimality->proof_file}};
  } else {
    j["minimality"] = nullptr;
  }
  j["result"] = m.optimum ? "OPTIMUM" : "INFEASIBLE";
  j["optimum"] = m.optimum ? json(*m.optimum) : json(nullptr);
  return j.dump(2) + "\n";
}

RunManifest ManifestFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    RunManifest m;
    m.format_version = IntField(j, "format_version");
    if (m.format_version != kManifestFormatVersion) {
      SchemaError("unsupported format_version " + std::to_string(m.format_version));
    }
    const json& inst = Field(j, "instance");
    m.instance_file = StringField(inst, "file");
    m.instance_sha256 = StringField(inst, "sha256");
    m.num_vars = IntField(inst, "num_vars");
    m.num_hard = IntField(inst, "num_hard");
    m.num_soft = IntField(inst, "num_soft");

    const auto alg = ParseAlgorithm(StringField(j, "algorithm"));
    if (!alg) SchemaError("unknown algorithm");
    m.algorithm = *alg;
    const auto mode = ParseCertMode(StringField(j, "cert_mode"));
    if (!mode) SchemaError("unknown cert_mode");
    m.cert_mode = *mode;
    m.encoding = StringField(j, "encoding");
    const json& seed = Field(j, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) SchemaError("seed must be an integer");
    m.seed = seed.get<std::uint64_t>();
    m.relaxation_base = IntField(Field(j, "layout"), "relaxation_base");
    if (m.algorithm == Algorithm::kBinarySearch && StringField(j, "loop_guard") != kBinaryLoopGuard) {
      SchemaError("unsupported loop_guard");
    }

    const json& hard = Field(j, "hard_feasibility");
    m.hard_feasibility.status = ParseStatus(Field(hard, "status"));
    if (hard.contains("model")) m.hard_feasibility.model = IntArray(hard["model"], "model");
    if (hard.contains("proof")) m.hard_feasibility.proof_file = StringField(hard, "proof");

    const json& iterations = Field(j, "iterations");
    if (!iterations.is_array()) SchemaError("iterations must be an array");
    for (const json& r : iterations) {
      IterationRecord it;
      it.index = IntField(r, "index");
      it.bound_kind = ParseBoundKind(Field(r, "bound_kind"));
      it.bound = IntField(r, "bound");
      it.status = ParseStatus(Field(r, "status"));
      it.aux_base = IntField(r, "aux_base");
      it.newly_relaxed = IntArray(Field(r, "newly_relaxed"), "newly_relaxed");
      if (r.contains("relaxed_true")) it.relaxed_true = IntField(r, "relaxed_true");
      const json& cert = Field(r, "certificate");
      if (cert.is_object()) {
        if (cert.contains("model")) it.model = IntArray(cert["model"], "model");
        if (cert.contains("proof")) it.proof_file = StringField(cert, "proof");
        if (it.model.has_value() == it.proof_file.has_value()) {
          SchemaError("certificate must hold exactly one of model/proof");
        }
      } else if (!cert.is_null()) {
        SchemaError("certificate must be an object or null");
      }
      m.iterations.push_back(std::move(it));
    }

    const json& mini = Field(j, "minimality");
    if (mini.is_object()) {
      m.minimality = MinimalityRecord{IntField(mini, "optimum"), IntField(mini, "aux_base"),
                                      StringField(mini, "proof")};
    } else if (!mini.is_null()) {
      SchemaError("minimality must be an object or null");
    }

    const std::string result = StringField(j, "result");
    const json& opt = Field(j, "optimum");
    if (result == "OPTIMUM") {
      if (!opt.is_number_integer()) SchemaError("optimum must be an integer");
      m.optimum = opt.get<int>();
    } else if (result == "INFEASIBLE") {
      if (!opt.is_null()) SchemaError("infeasible result carries an optimum");
    } else {
      SchemaError("unknown result '" + result + "'");
    }
    return m;
  } catch (const json::exception& e) {
    SchemaError(e.what());
  }
}

}  // namespace maxcert
