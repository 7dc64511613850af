#pragma once

#include <json.hpp>

#include "mcauchy/moebius.hpp"

// JSON layout (field names are part of the CLI contract):
//   MoebiusMap    {"A": [[...]], "gamma": g, "a": [...], "b": [...], "epsilon": 0|2}
//   MoebiusChain  {"maps": [map, ...]}   (last element applies first)
//   SphereMoebius {"R": [[...]], "phi": [...]}

namespace mcauchy {

inline nlohmann::json to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json to_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Vec vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw invalid_parameter("json: expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

inline Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw invalid_parameter("json: expected an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw invalid_parameter("json: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

inline nlohmann::json to_json(const MoebiusMap& m) {
  return {{"A", to_json(m.A)},
          {"gamma", m.gamma},
          {"a", to_json(m.a)},
          {"b", to_json(m.b)},
          {"epsilon", m.epsilon}};
}

inline MoebiusMap moebius_map_from_json(const nlohmann::json& j) {
  return MoebiusMap(matrix_from_json(j.at("A")), j.at("gamma").get<double>(),
                    vector_from_json(j.at("a")), vector_from_json(j.at("b")),
                    j.at("epsilon").get<int>());
}

inline nlohmann::json to_json(const MoebiusChain& c) {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : c.maps()) maps.push_back(to_json(m));
  return {{"maps", std::move(maps)}};
}

inline MoebiusChain moebius_chain_from_json(const nlohmann::json& j) {
  if (!j.contains("maps")) return MoebiusChain(moebius_map_from_json(j));  // bare map accepted
  std::vector<MoebiusMap> maps;
  for (const auto& jm : j.at("maps")) maps.push_back(moebius_map_from_json(jm));
  return MoebiusChain(std::move(maps));
}

inline nlohmann::json to_json(const SphereMoebius& s) {
  return {{"R", to_json(s.rotation().matrix())}, {"phi", to_json(s.phi())}};
}

inline SphereMoebius sphere_moebius_from_json(const nlohmann::json& j) {
  return SphereMoebius(Rotation(matrix_from_json(j.at("R"))), vector_from_json(j.at("phi")));
}

}  // namespace mcauchy
