#include "gch/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gch::io {

using nlohmann::json;

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, std::span<const std::string> header,
               std::span<const std::vector<double>> rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << format_full(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
}

std::string git_blob_sha1(std::span<const unsigned char> content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(reinterpret_cast<const char*>(content.data()), content.size());

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

std::string git_blob_sha1(const std::string& content) {
  return git_blob_sha1(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(content.data()), content.size()));
}

namespace {

json params_json(const ModelParams& p) {
  return json{{"k1", p.k1}, {"k2", p.k2}, {"c", p.c}};
}

json config_json(const SolverConfig& c) {
  return json{{"n", c.n},
              {"dt", c.dt},
              {"t_end", c.t_end},
              {"dealias", c.dealias},
              {"filter_strength", c.filter_strength},
              {"cfl_safety", c.cfl_safety},
              {"record_every", c.record_every}};
}

}  // namespace

std::string amplitude_report_json(Domain domain, const ModelParams& p,
                                  const AmplitudeSolution& sol) {
  json j;
  j["domain"] = domain == Domain::Line ? "line" : "circle";
  j["params"] = params_json(p);
  j["roots"] = sol.roots;
  j["discriminant"] = sol.discriminant;
  j["exists"] = sol.exists;
  return j.dump(2) + "\n";
}

std::string residual_report_json(const ResidualReport& report) {
  json j;
  j["max_strong_residual"] = report.max_strong_residual;
  j["weak_residuals"] = report.weak_residuals;
  j["defect_value"] = report.defect_value;
  j["tolerance"] = report.tolerance;
  j["verdict"] = report.certified ? "Certified" : "Rejected";
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["params"] = params_json(m.params);
  if (m.config) j["config"] = config_json(*m.config);
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["outputs"] = m.outputs;
  j["input_hash"] = m.input_hash;
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& json_text) {
  const json j = json::parse(json_text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  const auto& p = j.at("params");
  m.params = ModelParams{p.at("k1").get<double>(), p.at("k2").get<double>(),
                         p.at("c").get<double>()};
  if (j.contains("config")) {
    const auto& c = j.at("config");
    SolverConfig cfg;
    cfg.n = c.at("n").get<int>();
    cfg.dt = c.at("dt").get<double>();
    cfg.t_end = c.at("t_end").get<double>();
    cfg.dealias = c.at("dealias").get<bool>();
    cfg.filter_strength = c.at("filter_strength").get<int>();
    cfg.cfl_safety = c.at("cfl_safety").get<double>();
    cfg.record_every = c.at("record_every").get<int>();
    m.config = cfg;
  }
  m.seed = j.at("seed").get<std::uint64_t>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.input_hash = j.at("input_hash").get<std::string>();
  return m;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gch::io
