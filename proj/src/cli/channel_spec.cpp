#include "covframe/cli/channel_spec.hpp"

#include <fstream>

namespace covframe::cli {

namespace {

using nlohmann::json;

Complex parse_entry(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw SpecError("matrix entries must be [re, im] pairs of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

ChannelSpec parse_channel_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("channel spec must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw SpecError("channel spec needs an integer \"dim\"");
  if (!doc.contains("kraus") || !doc["kraus"].is_array() || doc["kraus"].empty())
    throw SpecError("channel spec needs a non-empty \"kraus\" array");

  ChannelSpec spec;
  spec.dim = doc["dim"].get<int>();
  if (spec.dim < 1) throw SpecError("\"dim\" must be positive");
  for (const json& op : doc["kraus"]) {
    if (!op.is_array() || static_cast<int>(op.size()) != spec.dim)
      throw SpecError("each Kraus operator must have \"dim\" rows");
    Operator e(spec.dim, spec.dim);
    for (int r = 0; r < spec.dim; ++r) {
      const json& row = op[r];
      if (!row.is_array() || static_cast<int>(row.size()) != spec.dim)
        throw SpecError("each Kraus row must have \"dim\" entries");
      for (int c = 0; c < spec.dim; ++c) e(r, c) = parse_entry(row[c]);
    }
    spec.kraus.push_back(std::move(e));
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw SpecError("\"label\" must be a string");
    spec.label = doc["label"].get<std::string>();
  }
  if (doc.contains("trace_preserving")) {
    if (!doc["trace_preserving"].is_boolean()) throw SpecError("\"trace_preserving\" must be a boolean");
    spec.trace_preserving = doc["trace_preserving"].get<bool>();
  }
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number()) throw SpecError("\"tolerance\" must be a number");
    spec.tolerance = doc["tolerance"].get<double>();
    if (!(spec.tolerance > 0.0)) throw SpecError("\"tolerance\" must be positive");
  }
  return spec;
}

ChannelSpec load_channel_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
  return parse_channel_spec(doc);
}

json to_json(const ChannelSpec& spec) {
  json kraus = json::array();
  for (const auto& e : spec.kraus) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < e.cols(); ++c) row.push_back({e(r, c).real(), e(r, c).imag()});
      rows.push_back(std::move(row));
    }
    kraus.push_back(std::move(rows));
  }
  json doc{{"dim", spec.dim}, {"kraus", std::move(kraus)}};
  if (!spec.label.empty()) doc["label"] = spec.label;
  doc["trace_preserving"] = spec.trace_preserving;
  doc["tolerance"] = spec.tolerance;
  return doc;
}

void save_channel_spec(const ChannelSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(spec).dump(1) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

double trace_preservation_defect(const ChannelSpec& spec) {
  Operator acc = Operator::Zero(spec.dim, spec.dim);
  for (const auto& e : spec.kraus) acc += e.adjoint() * e;
  return (acc - Operator::Identity(spec.dim, spec.dim)).cwiseAbs().maxCoeff();
}

}  // namespace covframe::cli
