#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmv/mvf.hpp"
#include "cmv/zigzag.hpp"

namespace cmv {

// Vertex labels such as "C", "F", "G" and their integer ids.
class NameTable {
 public:
  void add(const std::string& label, Vertex id);
  bool empty() const { return by_label_.empty(); }
  std::optional<Vertex> find(const std::string& label) const;
  // Label of a vertex, or its decimal id when unnamed.
  std::string label(Vertex id) const;
  // "CFG" when every vertex has a one-character label, else "[2,5,6]".
  std::string format(const Simplex& s) const;
  const std::map<std::string, Vertex>& labels() const { return by_label_; }
  bool operator==(const NameTable&) const = default;

 private:
  std::map<std::string, Vertex> by_label_;
  std::map<Vertex, std::string> by_id_;
};

// A complex, a sequence of fields on it, a seed set and optional named sets.
struct Scene {
  NameTable names;
  std::vector<std::vector<Vertex>> maximal;
  ComplexPtr complex;
  std::vector<MultivectorField> fields;
  SimplexSet seed;
  std::map<std::string, SimplexSet> sets;
};

// All loaders throw SchemaError for malformed documents, ValidationFailure
// for invalid fields and NotAtomic for non-atomic consecutive fields.
Scene parse_scene(const std::string& text, bool require_atomic = true, PrimeField field = PrimeField{});
Scene load_scene(const std::string& path, bool require_atomic = true, PrimeField field = PrimeField{});
std::string dump_scene(const Scene& scene);

struct ZigzagFile {
  NameTable names;
  ComplexPtr complex;
  PairZigzag zigzag;
};

// {"vertices", "maximal_simplices", "pairs": [{"P": [...], "E": [...]}]}; P
// and E are closed on load.
ZigzagFile parse_zigzag(const std::string& text);
ZigzagFile load_zigzag(const std::string& path);
std::string dump_zigzag(const ZigzagFile& file);

std::string read_file(const std::string& path);

// A JSON array of simplices in the notation of the scene files.
SimplexSet parse_set(const Complex& k, const NameTable& names, const std::string& text);

// Re-indents a JSON document the way the dump functions do.
std::string pretty_json(const std::string& text);

}  // namespace cmv
