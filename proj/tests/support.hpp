#pragma once

// Small builders shared by the unit tests.

#include <string>
#include <vector>

#include "gerry/gerry.hpp"

namespace testutil {

using namespace gerry;

inline std::vector<std::string> names(int m) {
  std::vector<std::string> out;
  for (int c = 0; c < m; ++c) out.push_back("c" + std::to_string(c));
  return out;
}

/// Path instance with p = c0.
inline Instance path_instance(std::vector<std::vector<Weight>> w, int k) {
  int n = static_cast<int>(w.size());
  int m = static_cast<int>(w.front().size());
  return Instance::create(n, path_edges(n), GraphClass::path, names(m), std::move(w),
                          Candidate{0}, k);
}

inline Instance random_instance(Rng& rng, GraphClass g, int n, int m, int k, int weight_max = 5) {
  GenParams p;
  p.n = n;
  p.m = m;
  p.k = k;
  p.graph_class = g;
  p.weight_max = weight_max;
  p.seed = rng.next();
  return generate_instance(p);
}

inline Partition districts(std::vector<std::vector<int>> ds) {
  Partition part;
  for (auto& d : ds) part.districts.push_back({std::move(d)});
  return part;
}

}  // namespace testutil
