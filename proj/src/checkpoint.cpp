#include "aerofuse/checkpoint.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace aerofuse {

namespace {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector json_to_vector(const json& arr) {
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Index>(i)] = arr[i].get<double>();
  return v;
}

Matrix json_to_matrix(const json& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw std::runtime_error("checkpoint shape inconsistency: ragged weight rows");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c].get<double>();
    }
  }
  return m;
}

}  // namespace

void save_checkpoint(const MlpModel& model, const std::filesystem::path& path) {
  model.validate();
  json doc;
  doc["format_version"] = kCheckpointFormatVersion;
  doc["input_dim"] = model.input_dim;
  doc["hidden_dim"] = model.hidden_dim;
  doc["num_hidden_layers"] = model.num_hidden_layers;
  doc["frozen_prefix"] = model.frozen_prefix;
  doc["scaler"] = {{"feature_min", vector_to_json(model.scaler.feature_min())},
                   {"feature_max", vector_to_json(model.scaler.feature_max())}};
  json layers = json::array();
  for (const auto& layer : model.layers) {
    layers.push_back({{"weights", matrix_to_json(layer.weights)},
                      {"bias", vector_to_json(layer.bias)}});
  }
  doc["layers"] = std::move(layers);

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << doc.dump(2) << '\n';
}

MlpModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("checkpoint truncated or malformed: " + path.string() + ": " +
                             e.what());
  }

  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw std::runtime_error("checkpoint version mismatch: got " + std::to_string(version) +
                               ", expected " + std::to_string(kCheckpointFormatVersion));
    }

    MlpModel model;
    model.input_dim = doc.at("input_dim").get<int>();
    model.hidden_dim = doc.at("hidden_dim").get<int>();
    model.num_hidden_layers = doc.at("num_hidden_layers").get<int>();
    model.frozen_prefix = doc.at("frozen_prefix").get<int>();

    const json& scaler = doc.at("scaler");
    const Vector fmin = json_to_vector(scaler.at("feature_min"));
    const Vector fmax = json_to_vector(scaler.at("feature_max"));
    if (fmin.size() != kNumFeatures || fmax.size() != kNumFeatures) {
      throw std::runtime_error("checkpoint shape inconsistency: scaler bounds");
    }
    model.scaler = MinMaxScaler::from_bounds(fmin, fmax);

    for (const json& layer_json : doc.at("layers")) {
      Layer layer;
      layer.weights = json_to_matrix(layer_json.at("weights"));
      layer.bias = json_to_vector(layer_json.at("bias"));
      model.layers.push_back(std::move(layer));
    }

    try {
      model.validate();
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("checkpoint shape inconsistency: ") + e.what());
    }
    return model;
  } catch (const json::exception& e) {
    throw std::runtime_error("checkpoint truncated or malformed: " + path.string() + ": " +
                             e.what());
  }
}

}  // namespace aerofuse
