#include "spec_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace weylflow::cli {

namespace {

std::vector<std::string> string_list(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence()) throw std::invalid_argument(what + " must be a sequence");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.IsScalar()) throw std::invalid_argument(what + " entries must be expressions");
    out.push_back(item.as<std::string>());
  }
  return out;
}

}  // namespace

RealizationSpec parse_spec_file(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("invalid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("spec file must be a mapping");
  for (const auto& entry : root) {
    auto key = entry.first.as<std::string>();
    if (key != "dimension" && key != "metric" && key != "kmax" && key != "pmax" && key != "phi" && key != "chi") {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }

  RealizationSpec spec;
  try {
    if (!root["dimension"]) throw std::invalid_argument("missing 'dimension'");
    int n = root["dimension"].as<int>();
    if (n <= 0) throw std::invalid_argument("dimension must be positive");
    spec.dimension = static_cast<std::size_t>(n);
    if (root["metric"]) spec.metric = root["metric"].as<std::vector<int>>();
    if (root["kmax"]) spec.kmax = root["kmax"].as<int>();
    if (root["pmax"]) spec.pmax = root["pmax"].as<int>();
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("malformed field: ") + e.what());
  }
  if (spec.kmax && *spec.kmax < 0) throw std::invalid_argument("kmax must be non-negative");
  if (spec.pmax && *spec.pmax < 0) throw std::invalid_argument("pmax must be non-negative");

  const YAML::Node phi = root["phi"];
  if (!phi || !phi.IsSequence()) throw std::invalid_argument("'phi' must be a sequence of rows");
  for (std::size_t a = 0; a < phi.size(); ++a) spec.phi.push_back(string_list(phi[a], "phi row"));
  if (root["chi"]) spec.chi = string_list(root["chi"], "chi");
  return spec;
}

RealizationSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_file(buffer.str());
}

std::string to_yaml(const RealizationSpec& spec) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "dimension" << YAML::Value << spec.dimension;
  if (!spec.metric.empty()) out << YAML::Key << "metric" << YAML::Value << YAML::Flow << spec.metric;
  if (spec.kmax) out << YAML::Key << "kmax" << YAML::Value << *spec.kmax;
  if (spec.pmax) out << YAML::Key << "pmax" << YAML::Value << *spec.pmax;
  out << YAML::Key << "phi" << YAML::Value << YAML::BeginSeq;
  for (const auto& row : spec.phi) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& e : row) out << YAML::DoubleQuoted << e;
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  if (!spec.chi.empty()) {
    out << YAML::Key << "chi" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& e : spec.chi) out << YAML::DoubleQuoted << e;
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace weylflow::cli
