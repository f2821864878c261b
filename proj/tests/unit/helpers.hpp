#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cmv/mvf.hpp"
#include "cmv/scene.hpp"

#ifndef CMV_FIXTURES
#error "CMV_FIXTURES must name the fixture directory"
#endif

namespace th {

using namespace cmv;

inline std::string fixture(const std::string& name) { return std::string(CMV_FIXTURES) + "/" + name; }

inline Scene scene(const std::string& name, bool require_atomic = true) {
  return load_scene(fixture(name), require_atomic);
}

inline ComplexPtr complex(const std::vector<std::vector<Vertex>>& generators) {
  return std::make_shared<const Complex>(Complex::from_simplices(generators));
}

inline SimplexSet set(const Complex& k, const std::vector<Simplex>& simplices) { return k.set_of(simplices); }

// Field with the listed parts; every other simplex is a singleton.
inline MultivectorField field(const ComplexPtr& k, const std::vector<std::vector<Simplex>>& parts) {
  std::vector<std::vector<int>> out;
  SimplexSet covered(k->size());
  for (const auto& part : parts) {
    std::vector<int> ids;
    for (const auto& s : part) {
      ids.push_back(k->index_of(s));
      covered.insert(ids.back());
    }
    out.push_back(ids);
  }
  for (std::size_t i = 0; i < k->size(); ++i)
    if (!covered.contains(static_cast<int>(i))) out.push_back({static_cast<int>(i)});
  return MultivectorField(k, out);
}

inline SimplexSet named(const Scene& sc, const std::string& json) { return parse_set(*sc.complex, sc.names, json); }

}  // namespace th
