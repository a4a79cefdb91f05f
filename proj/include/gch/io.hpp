#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gch/evolve.hpp"
#include "gch/model.hpp"
#include "gch/residual.hpp"

namespace gch::io {

inline constexpr const char* kToolVersion = "0.1.0";

// Full round-trip decimal formatting (17 significant digits); CSV fixtures
// are diffed bit-exactly.
std::string format_full(double v);

void write_csv(const std::string& path, std::span<const std::string> header,
               std::span<const std::vector<double>> rows);

// SHA-1 of the git blob encoding "blob <size>\0<content>".
std::string git_blob_sha1(std::span<const unsigned char> content);
std::string git_blob_sha1(const std::string& content);

std::string amplitude_report_json(Domain domain, const ModelParams& p,
                                  const AmplitudeSolution& sol);
std::string residual_report_json(const ResidualReport& report);

// Reproduction record for every CLI command: the exact argv plus the inputs
// digest. Serialized with sorted keys.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  ModelParams params;
  std::optional<SolverConfig> config;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<std::string> outputs;
  std::string input_hash;
};

std::string manifest_json(const RunManifest& m);
RunManifest parse_manifest(const std::string& json_text);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace gch::io
