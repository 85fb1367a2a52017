#pragma once

#include <map>
#include <memory>
#include <string>

#include "isoflow/foliation_config.hpp"
#include "isoflow/solvable_model.hpp"

namespace isoflow::testing {

/// Decomposed models are cached; decomposition dominates test runtime otherwise.
inline std::shared_ptr<const SolvableModel> model(const std::string& id) {
  static std::map<std::string, std::shared_ptr<const SolvableModel>> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, std::make_shared<const SolvableModel>(load_model(id))).first;
  return it->second;
}

inline FoliationConfig config(const std::string& id, int k = 1, int b_dim = 0, std::vector<double> offsets = {}) {
  ConfigOptions o;
  o.k = k;
  o.b_dim = b_dim;
  o.offsets = std::move(offsets);
  return make_config(model(id), o);
}

inline Vec unit(int n, int i) { return Vec::Unit(n, i); }

}  // namespace isoflow::testing
