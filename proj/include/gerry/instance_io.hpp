#pragma once

// JSON (de)serialization for instances and partitions.
//
// {"n": int, "edges": [[u,v],...], "graph_class": "path"|"tree"|"general",
//  "candidates": [names], "p": name, "k": int, "weights": [{name: int}, ...]}
//
// Missing weight entries mean 0; present entries must be >= 1.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace gerry {

using json = nlohmann::json;

inline Instance instance_from_json(const json& j) {
  try {
    for (const char* key : {"n", "edges", "graph_class", "candidates", "p", "k", "weights"})
      if (!j.contains(key)) throw Error(std::string("instance is missing field '") + key + "'");
    int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error("each edge must be a [u, v] pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    auto candidates = j.at("candidates").get<std::vector<std::string>>();
    std::vector<std::vector<Weight>> weights;
    const auto& wj = j.at("weights");
    if (!wj.is_array() || static_cast<int>(wj.size()) != n)
      throw Error("weights must list one object per vertex");
    for (const auto& row : wj) {
      if (!row.is_object()) throw Error("each weight entry must be an object");
      std::vector<Weight> w(candidates.size(), 0);
      for (const auto& [name, val] : row.items()) {
        auto it = std::find(candidates.begin(), candidates.end(), name);
        if (it == candidates.end()) throw Error("weight names unknown candidate '" + name + "'");
        Weight x = val.get<Weight>();
        if (x < 1) throw Error("weights must be positive integers");
        w[it - candidates.begin()] = x;
      }
      weights.push_back(std::move(w));
    }
    auto pname = j.at("p").get<std::string>();
    auto pit = std::find(candidates.begin(), candidates.end(), pname);
    if (pit == candidates.end()) throw Error("p names unknown candidate '" + pname + "'");
    Candidate p{static_cast<std::uint32_t>(pit - candidates.begin())};
    return Instance::create(n, std::move(edges),
                            graph_class_from_string(j.at("graph_class").get<std::string>()),
                            std::move(candidates), std::move(weights), p, j.at("k").get<int>());
  } catch (const json::exception& e) {
    throw Error(std::string("malformed instance JSON: ") + e.what());
  }
}

inline json instance_to_json(const Instance& inst) {
  json j;  // nlohmann::json objects keep keys sorted
  j["n"] = inst.n();
  j["edges"] = json::array();
  for (auto [u, v] : inst.edges()) j["edges"].push_back({u, v});
  j["graph_class"] = to_string(inst.graph_class());
  j["candidates"] = inst.candidates();
  j["p"] = inst.candidates()[inst.p().id];
  j["k"] = inst.k();
  j["weights"] = json::array();
  for (int v = 0; v < inst.n(); ++v) {
    json row = json::object();
    for (int c = 0; c < inst.m(); ++c)
      if (Weight w = inst.weights()[v][c]; w > 0) row[inst.candidates()[c]] = w;
    j["weights"].push_back(std::move(row));
  }
  return j;
}

inline std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("cannot parse '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("cannot parse instance: ") + e.what());
  }
  return instance_from_json(j);
}

inline json partition_to_json(const Partition& part) {
  json j = json::array();
  for (const auto& d : part.districts) {
    auto vs = d.vertices;
    std::sort(vs.begin(), vs.end());
    j.push_back(vs);
  }
  return j;
}

inline Partition partition_from_json(const json& j) {
  Partition part;
  for (const auto& d : j) part.districts.push_back({d.get<std::vector<Vertex>>()});
  return part;
}

}  // namespace gerry
