#include "cmv/scene.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cmv {

using json = nlohmann::json;

void NameTable::add(const std::string& label, Vertex id) {
  if (label.empty()) throw SchemaError("empty vertex label");
  if (id < 0) throw SchemaError("vertex '" + label + "' has a negative id");
  if (by_label_.count(label)) throw SchemaError("duplicate vertex label '" + label + "'");
  if (by_id_.count(id)) throw SchemaError("vertex id " + std::to_string(id) + " has two labels");
  by_label_[label] = id;
  by_id_[id] = label;
}

std::optional<Vertex> NameTable::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::string NameTable::label(Vertex id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? std::to_string(id) : it->second;
}

std::string NameTable::format(const Simplex& s) const {
  bool short_labels = true;
  for (Vertex v : s.vertices()) {
    auto it = by_id_.find(v);
    if (it == by_id_.end() || it->second.size() != 1) short_labels = false;
  }
  if (short_labels) {
    std::string out;
    for (Vertex v : s.vertices()) out += by_id_.at(v);
    return out;
  }
  return to_string(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

// Short values stay on one line; long arrays of short values are packed
// into lines of bounded width.
void write_json(std::string& out, const json& j, int indent) {
  constexpr std::size_t width = 96;
  std::string flat = j.dump();
  if (flat.size() + static_cast<std::size_t>(indent) <= width || !j.is_structured() || j.empty()) {
    out += flat;
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + json(it.key()).dump() + ": ";
      write_json(out, it.value(), indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    return;
  }
  bool packable = true;
  for (const auto& e : j) packable = packable && e.dump().size() + pad.size() < width;
  out += "[\n";
  if (packable) {
    std::string line = pad;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::string item = j[i].dump() + (i + 1 < j.size() ? "," : "");
      if (line.size() > pad.size() && line.size() + 1 + item.size() > width) {
        out += line + "\n";
        line = pad;
      }
      line += (line.size() > pad.size() ? " " : "") + item;
    }
    out += line + "\n";
  } else {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write_json(out, j[i], indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
  }
  out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
}

std::string pretty(const json& j) {
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

Vertex vertex_of(const json& j, const NameTable& names) {
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v < 0) throw SchemaError("negative vertex id " + std::to_string(v));
    return static_cast<Vertex>(v);
  }
  if (j.is_string()) {
    auto v = names.find(j.get<std::string>());
    if (!v) throw SchemaError("unknown vertex label '" + j.get<std::string>() + "'");
    return *v;
  }
  throw SchemaError("vertex must be an integer id or a label, got " + j.dump());
}

// Simplices are arrays of ids or labels, or strings: a whole label names a
// vertex, otherwise each character is a one-letter label.
std::vector<Vertex> vertices_of(const json& j, const NameTable& names) {
  std::vector<Vertex> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(vertex_of(x, names));
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (auto v = names.find(s)) {
      out.push_back(*v);
    } else {
      for (char c : s) {
        auto v = names.find(std::string(1, c));
        if (!v) throw SchemaError("unknown vertex label '" + std::string(1, c) + "' in simplex \"" + s + "\"");
        out.push_back(*v);
      }
    }
  } else if (j.is_number_integer()) {
    out.push_back(vertex_of(j, names));
  } else {
    throw SchemaError("simplex must be an array or a string, got " + j.dump());
  }
  if (out.empty()) throw SchemaError("empty simplex");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw SchemaError("repeated vertex in simplex " + j.dump());
  return out;
}

int simplex_index(const Complex& k, const json& j, const NameTable& names) {
  auto v = vertices_of(j, names);
  int i = k.index_of(v);
  if (i < 0) throw SchemaError("simplex " + j.dump() + " is not in the complex");
  return i;
}

SimplexSet set_of(const Complex& k, const json& j, const NameTable& names, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + " must be an array of simplices");
  SimplexSet s(k.size());
  for (const auto& x : j) s.insert(simplex_index(k, x, names));
  return s;
}

NameTable names_of(const json& doc) {
  NameTable names;
  if (!doc.contains("vertices")) return names;
  const json& v = doc.at("vertices");
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!it.value().is_number_integer()) throw SchemaError("vertex id of '" + it.key() + "' must be an integer");
      names.add(it.key(), it.value().get<Vertex>());
    }
  } else if (v.is_array()) {
    // ["A", "B", ...]: labels in id order.
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) throw SchemaError("vertex labels must be strings");
      names.add(v[i].get<std::string>(), static_cast<Vertex>(i));
    }
  } else {
    throw SchemaError("'vertices' must be an object or an array");
  }
  return names;
}

std::vector<std::vector<Vertex>> maximal_of(const json& doc, const NameTable& names) {
  if (!doc.contains("maximal_simplices")) throw SchemaError("missing 'maximal_simplices'");
  const json& m = doc.at("maximal_simplices");
  if (!m.is_array() || m.empty()) throw SchemaError("'maximal_simplices' must be a non-empty array");
  std::vector<std::vector<Vertex>> out;
  for (const auto& s : m) out.push_back(vertices_of(s, names));
  return out;
}

json simplex_json(const Simplex& s, const NameTable& names) {
  if (names.empty()) return s.vertices();
  std::string f = names.format(s);
  if (f.front() != '[') return f;
  json arr = json::array();
  for (Vertex v : s.vertices()) arr.push_back(names.label(v));
  return arr;
}

json set_json(const Complex& k, const SimplexSet& s, const NameTable& names) {
  json arr = json::array();
  for (int i : s.members()) arr.push_back(simplex_json(k.simplex(i), names));
  return arr;
}

json header_json(const NameTable& names, const std::vector<std::vector<Vertex>>& maximal) {
  json doc = json::object();
  if (!names.empty()) {
    json v = json::object();
    for (const auto& [label, id] : names.labels()) v[label] = id;
    doc["vertices"] = v;
  }
  json m = json::array();
  for (const auto& s : maximal) m.push_back(simplex_json(Simplex(s), names));
  doc["maximal_simplices"] = m;
  return doc;
}

MultivectorField field_from(const json& entry, const ComplexPtr& k, const NameTable& names,
                            const MultivectorField* previous, std::size_t index, const PrimeField& prime) {
  const std::string where = "field " + std::to_string(index + 1);
  if (entry.is_array()) {
    std::vector<std::vector<int>> parts;
    std::vector<bool> covered(k->size(), false);
    for (const auto& part : entry) {
      if (!part.is_array()) throw SchemaError(where + ": each multivector must be an array of simplices");
      std::vector<int> members;
      for (const auto& s : part) {
        int i = simplex_index(*k, s, names);
        members.push_back(i);
        if (covered[static_cast<std::size_t>(i)])
          throw ValidationFailure(where + ": simplex " + names.format(k->simplex(i)) + " lies in two multivectors");
        covered[static_cast<std::size_t>(i)] = true;
      }
      if (members.empty()) throw SchemaError(where + ": empty multivector");
      parts.push_back(std::move(members));
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
      if (!covered[i]) parts.push_back({static_cast<int>(i)});
    Report r = validate_field(*k, parts);
    if (!r) {
      // Name offending parts with labels rather than raw ids.
      for (const auto& p : parts) {
        SimplexSet set(k->size(), p);
        if (!k->is_convex(set)) {
          std::string desc;
          for (int i : p) desc += (desc.empty() ? "" : ",") + names.format(k->simplex(i));
          throw ValidationFailure(where + ": multivector {" + desc + "} is not convex");
        }
      }
      throw ValidationFailure(where + ": " + r.summary());
    }
    return MultivectorField(k, std::move(parts), prime);
  }
  if (!entry.is_object() || !entry.contains("op")) throw SchemaError(where + ": expected a partition or an op record");
  if (!previous) throw SchemaError(where + ": an op record needs a preceding field");
  const std::string op = entry.at("op").get<std::string>();
  try {
    if (op == "split") {
      if (!entry.contains("multivector") || !entry.contains("part"))
        throw SchemaError(where + ": split needs 'multivector' and 'part'");
      int id = previous->id_of(simplex_index(*k, entry.at("multivector"), names));
      return split(*previous, id, set_of(*k, entry.at("part"), names, where + " part"));
    }
    if (op == "merge") {
      if (!entry.contains("a") || !entry.contains("b")) throw SchemaError(where + ": merge needs 'a' and 'b'");
      int a = previous->id_of(simplex_index(*k, entry.at("a"), names));
      int b = previous->id_of(simplex_index(*k, entry.at("b"), names));
      return merge(*previous, a, b);
    }
  } catch (const PreconditionViolated& e) {
    throw ValidationFailure(where + ": " + e.what());
  }
  throw SchemaError(where + ": unknown op '" + op + "'");
}

}  // namespace

Scene parse_scene(const std::string& text, bool require_atomic, PrimeField prime) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("scene must be a JSON object");
  Scene scene;
  scene.names = names_of(doc);
  scene.maximal = maximal_of(doc, scene.names);
  try {
    scene.complex = std::make_shared<const Complex>(Complex::from_simplices(scene.maximal));
  } catch (const PreconditionViolated& e) {
    throw SchemaError(e.what());
  }
  const ComplexPtr& k = scene.complex;

  if (!doc.contains("fields") || !doc.at("fields").is_array() || doc.at("fields").empty())
    throw SchemaError("'fields' must be a non-empty array");
  const json& fields = doc.at("fields");
  for (std::size_t i = 0; i < fields.size(); ++i)
    scene.fields.push_back(field_from(fields[i], k, scene.names, i ? &scene.fields.back() : nullptr, i, prime));
  // Repeating a field is allowed; it is tracked as a step without change.
  if (require_atomic)
    for (std::size_t i = 0; i + 1 < scene.fields.size(); ++i) {
      if (scene.fields[i] == scene.fields[i + 1]) continue;
      try {
        classify_rearrangement(scene.fields[i], scene.fields[i + 1]);
      } catch (const NotAtomic& e) {
        throw NotAtomic("fields " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + ": " + e.what());
      }
    }

  scene.seed = doc.contains("seed") ? set_of(*k, doc.at("seed"), scene.names, "seed") : k->empty_set();
  if (doc.contains("sets")) {
    const json& sets = doc.at("sets");
    if (!sets.is_object()) throw SchemaError("'sets' must be an object");
    for (auto it = sets.begin(); it != sets.end(); ++it)
      scene.sets[it.key()] = set_of(*k, it.value(), scene.names, "set '" + it.key() + "'");
  }
  return scene;
}

Scene load_scene(const std::string& path, bool require_atomic, PrimeField prime) {
  return parse_scene(read_file(path), require_atomic, prime);
}

std::string dump_scene(const Scene& scene) {
  const Complex& k = *scene.complex;
  json doc = header_json(scene.names, scene.maximal);
  json fields = json::array();
  for (const auto& f : scene.fields) {
    json parts = json::array();
    for (const auto& p : f.parts()) parts.push_back(set_json(k, SimplexSet(k.size(), p), scene.names));
    fields.push_back(parts);
  }
  doc["fields"] = fields;
  doc["seed"] = set_json(k, scene.seed, scene.names);
  if (!scene.sets.empty()) {
    json sets = json::object();
    for (const auto& [name, s] : scene.sets) sets[name] = set_json(k, s, scene.names);
    doc["sets"] = sets;
  }
  return pretty(doc);
}

ZigzagFile parse_zigzag(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("zigzag file must be a JSON object");
  ZigzagFile out;
  out.names = names_of(doc);
  auto maximal = maximal_of(doc, out.names);
  try {
    out.complex = std::make_shared<const Complex>(Complex::from_simplices(maximal));
  } catch (const PreconditionViolated& e) {
    throw SchemaError(e.what());
  }
  const Complex& k = *out.complex;
  if (!doc.contains("pairs") || !doc.at("pairs").is_array() || doc.at("pairs").empty())
    throw SchemaError("'pairs' must be a non-empty array");
  for (const auto& p : doc.at("pairs")) {
    if (!p.is_object() || !p.contains("P")) throw SchemaError("each pair needs 'P' (and optionally 'E')");
    SimplexSet pp = k.closure(set_of(k, p.at("P"), out.names, "P"));
    SimplexSet ee = p.contains("E") ? k.closure(set_of(k, p.at("E"), out.names, "E")) : k.empty_set();
    if (!ee.is_subset_of(pp)) throw ValidationFailure("pair " + std::to_string(out.zigzag.size() + 1) + ": E is not a subset of P");
    try {
      out.zigzag.append(IndexPair{pp, ee});
    } catch (const PreconditionViolated& e) {
      throw ValidationFailure("pair " + std::to_string(out.zigzag.size() + 1) + ": " + e.what());
    }
  }
  if (doc.contains("heuristic")) out.zigzag.heuristic = doc.at("heuristic").get<bool>();
  return out;
}

SimplexSet parse_set(const Complex& k, const NameTable& names, const std::string& text) {
  return set_of(k, parse_json(text), names, "set");
}

std::string pretty_json(const std::string& text) { return pretty(parse_json(text)); }

ZigzagFile load_zigzag(const std::string& path) { return parse_zigzag(read_file(path)); }

std::string dump_zigzag(const ZigzagFile& file) {
  const Complex& k = *file.complex;
  std::vector<std::vector<Vertex>> maximal;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.cofacets(static_cast<int>(i)).empty()) maximal.push_back(k.simplex(static_cast<int>(i)).vertices());
  json doc = header_json(file.names, maximal);
  json pairs = json::array();
  for (const auto& p : file.zigzag.pairs)
    pairs.push_back({{"P", set_json(k, p.p, file.names)}, {"E", set_json(k, p.e, file.names)}});
  doc["pairs"] = pairs;
  if (file.zigzag.heuristic) doc["heuristic"] = true;
  return pretty(doc);
}

}  // namespace cmv
