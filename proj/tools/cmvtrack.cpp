// cmvtrack: Conley indices and tracking of isolated invariant sets of
// multivector fields from JSON scene files.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmv/dynamics.hpp"
#include "cmv/errors.hpp"
#include "cmv/mvf.hpp"
#include "cmv/scene.hpp"
#include "cmv/tracking.hpp"
#include "cmv/zigzag.hpp"

using namespace cmv;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kUnresolved = 3;

struct Session {
  unsigned prime = 2;
  bool heuristic_g = false;
  std::string format = "text";
  std::string out;
  PrimeField field() const { return PrimeField(prime); }
  bool as_json() const { return format == "json"; }
};

std::string show(const Scene& sc, const SimplexSet& s) {
  std::string out = "{";
  for (int x : s.members()) out += (out.size() > 1 ? "," : "") + sc.names.format(sc.complex->simplex(x));
  return out + "}";
}

json set_json(const Scene& sc, const SimplexSet& s) {
  json a = json::array();
  for (int x : s.members()) a.push_back(sc.names.format(sc.complex->simplex(x)));
  return a;
}

json betti_json(const BettiVector& b) { return json(b.ranks); }

void emit(const Session& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error("cannot write " + cfg.out);
  f << text;
}

// One row per bar, the bar drawn over the zigzag positions.
std::string render_bars(const Barcode& code, const std::vector<FieldSpan>* fields) {
  std::ostringstream os;
  for (const Bar& b : code.bars) {
    os << "Dimension: " << b.dim << "  |";
    for (int i = 1; i <= code.length; ++i) os << (b.birth <= i && i <= b.death ? '#' : '.');
    os << "|  [" << b.birth << "," << b.death << "]";
    if (fields) {
      const FieldSpan& f = (*fields)[static_cast<std::size_t>(&b - code.bars.data())];
      if (f.tagged()) os << "  fields " << f.first + 1 << "-" << f.last + 1;
    }
    os << "\n";
  }
  if (code.bars.empty()) os << "(no bars)\n";
  return os.str();
}

std::string kind_name(const TrackingStep& st) {
  if (st.kind == StepCase::same) return "unchanged";
  return st.rearrangement.kind == RearrangementKind::refinement ? "refinement" : "coarsening";
}

SimplexSet select_set(const Scene& sc, const std::string& selector) {
  if (selector.empty() || selector == "seed") return sc.seed;
  if (auto it = sc.sets.find(selector); it != sc.sets.end()) return it->second;
  if (!selector.empty() && selector.front() == '[') return parse_set(*sc.complex, sc.names, selector);
  throw SchemaError("unknown set '" + selector + "' (use seed, a name from 'sets', or a JSON array of simplices)");
}

int cmd_validate(const Session& cfg, const std::string& path) {
  Scene sc = load_scene(path, true, cfg.field());
  Report r;
  json fields = json::array();
  std::ostringstream os;
  for (std::size_t i = 0; i < sc.fields.size(); ++i) {
    const auto& v = sc.fields[i];
    int critical = 0;
    for (auto id : v.ids()) critical += v.is_critical(id);
    os << "field " << i + 1 << ": " << v.count() << " multivectors, " << critical << " critical\n";
    fields.push_back({{"multivectors", v.count()}, {"critical", critical}});
  }
  const auto& v0 = sc.fields.front();
  if (sc.seed.empty()) {
    r.fail("seed is empty; tracking starts from a nonempty isolated invariant set");
  } else {
    for (int x : sc.seed.members())
      if (!v0.multivector_of(x).is_subset_of(sc.seed)) {
        r.fail("seed is not compatible with field 1: multivector " + show(sc, v0.multivector_of(x)) +
               " is only partly inside it");
        break;
      }
    if (!sc.complex->is_convex(sc.seed)) r.fail("seed is not convex");
    if (invariant_part(v0, sc.seed) != sc.seed)
      r.fail("seed is not invariant under field 1: " + show(sc, sc.seed - invariant_part(v0, sc.seed)) +
             " lies on no essential solution inside it");
  }
  if (cfg.as_json()) {
    json doc{{"fields", fields}, {"ok", r.ok()}, {"problems", r.problems}};
    emit(cfg, pretty_json(doc.dump()));
  } else {
    for (const auto& p : r.problems) os << "error: " << p << "\n";
    os << (r.ok() ? "OK\n" : "FAILED\n");
    emit(cfg, os.str());
  }
  return r.ok() ? kOk : kInvalid;
}

int cmd_conley(const Session& cfg, const std::string& path, const std::string& selector, int field_no) {
  Scene sc = load_scene(path, true, cfg.field());
  if (field_no < 1 || field_no > static_cast<int>(sc.fields.size()))
    throw SchemaError("field " + std::to_string(field_no) + " out of range 1.." + std::to_string(sc.fields.size()));
  const auto& v = sc.fields[static_cast<std::size_t>(field_no - 1)];
  SimplexSet s = select_set(sc, selector);
  BettiVector b = conley_index(v, s);
  const bool isolated = is_isolated_invariant_set(v, s);
  if (cfg.as_json()) {
    json doc{{"set", set_json(sc, s)}, {"field", field_no}, {"conley_index", betti_json(b)},
             {"isolated_invariant", isolated}};
    emit(cfg, pretty_json(doc.dump()));
  } else {
    std::ostringstream os;
    os << "set " << show(sc, s) << " under field " << field_no << "\n";
    os << "Conley index " << to_string(b) << "\n";
    if (!isolated) os << "note: not an isolated invariant set under this field\n";
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_track(const Session& cfg, const std::string& path) {
  Scene sc = load_scene(path, true, cfg.field());
  TrackingOptions opt;
  opt.heuristic_g = cfg.heuristic_g;
  TrackingTrace t = run_protocol(sc.fields, sc.seed, opt);
  std::vector<FieldSpan> spans;
  for (const Bar& b : t.barcode.bars) spans.push_back(t.bar_fields(b));

  if (cfg.as_json()) {
    json steps = json::array();
    for (const auto& st : t.steps) {
      json j{{"from", st.from_field + 1}, {"to", st.from_field + 2}, {"case", std::string(1, case_letter(st.kind))},
             {"rearrangement", kind_name(st)}, {"s_next_size", st.s_next.count()}};
      if (st.connecting) j["pair"] = {{"P", st.connecting->p.count()}, {"E", st.connecting->e.count()}};
      if (!st.segment.empty()) {
        json sizes = json::array();
        for (const auto& p : st.segment.pairs) sizes.push_back({{"P", p.p.count()}, {"E", p.e.count()}});
        j["segment"] = sizes;
      }
      if (st.kind == StepCase::f || st.kind == StepCase::g) j["adjacent"] = st.adjacent;
      if (!st.notes.empty()) j["notes"] = st.notes;
      steps.push_back(j);
    }
    json bars = json::array();
    for (std::size_t i = 0; i < t.barcode.bars.size(); ++i) {
      const Bar& b = t.barcode.bars[i];
      bars.push_back({{"dim", b.dim}, {"birth", b.birth}, {"death", b.death},
                      {"first_field", spans[i].tagged() ? spans[i].first + 1 : 0},
                      {"last_field", spans[i].tagged() ? spans[i].last + 1 : 0}});
    }
    json positions = json::array();
    for (const auto& s : t.zigzag.spans) positions.push_back(s.tagged() ? json{s.first + 1, s.last + 1} : json(nullptr));
    json doc{{"fields", t.fields},
             {"seed", set_json(sc, t.seed)},
             {"seed_conley_index", betti_json(conley_index(sc.fields.front(), t.seed))},
             {"steps", steps},
             {"zigzag_length", t.zigzag.size()},
             {"position_fields", positions},
             {"heuristic", t.zigzag.heuristic},
             {"vanished", t.vanished},
             {"unresolved", t.unresolved},
             {"bars", bars}};
    emit(cfg, pretty_json(doc.dump()));
  } else {
    std::ostringstream os;
    os << "fields: " << t.fields << "\n";
    os << "seed: " << show(sc, t.seed) << "  Conley index " << to_string(conley_index(sc.fields.front(), t.seed))
       << "\n";
    for (const auto& st : t.steps) {
      os << "step " << st.from_field + 1 << "->" << st.from_field + 2 << "  case " << case_letter(st.kind) << "  "
         << kind_name(st) << "  |S'| = " << st.s_next.count();
      if (st.connecting) os << "  pair |P| = " << st.connecting->p.count() << " |E| = " << st.connecting->e.count();
      if (!st.segment.empty()) {
        os << "  segment";
        for (const auto& p : st.segment.pairs) os << " (" << p.p.count() << "," << p.e.count() << ")";
      }
      os << "\n";
      for (const auto& n : st.notes) os << "    " << n << "\n";
    }
    if (t.vanished) os << "the invariant set vanished; tracking stopped\n";
    if (t.unresolved) os << "tracking stopped at an unresolved step (rerun with --heuristic-g to continue)\n";
    if (t.zigzag.heuristic) os << "warning: the zigzag contains heuristic pairs\n";
    os << "barcode over " << t.zigzag.size() << " zigzag positions:\n";
    os << render_bars(t.barcode, &spans);
    emit(cfg, os.str());
  }
  return t.unresolved ? kUnresolved : kOk;
}

int cmd_barcode(const Session& cfg, const std::string& path) {
  ZigzagFile z = load_zigzag(path);
  Barcode code = pair_zigzag_barcode(*z.complex, z.zigzag, cfg.field());
  if (cfg.as_json()) {
    json bars = json::array();
    for (const Bar& b : code.bars) bars.push_back({{"dim", b.dim}, {"birth", b.birth}, {"death", b.death}});
    json arrows = json::array();
    for (auto a : z.zigzag.arrows) arrows.push_back(a == Arrow::forward ? "sub" : "sup");
    json doc{{"length", code.length}, {"arrows", arrows}, {"heuristic", z.zigzag.heuristic},
             {"full", code.is_full()}, {"bars", bars}};
    emit(cfg, pretty_json(doc.dump()));
  } else {
    std::ostringstream os;
    os << "zigzag of " << z.zigzag.size() << " pairs:";
    for (auto a : z.zigzag.arrows) os << (a == Arrow::forward ? " ⊆" : " ⊇");
    os << "\n";
    if (z.zigzag.heuristic) os << "warning: the file marks this zigzag as heuristic\n";
    os << render_bars(code, nullptr);
    os << (code.is_full() ? "full barcode\n" : "barcode is not full\n");
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_rearrange(const Session& cfg, const std::string& path, int from, int to) {
  Scene sc = load_scene(path, false, cfg.field());
  const int n = static_cast<int>(sc.fields.size());
  if (to == 0) to = n;
  if (from < 1 || from > n || to < 1 || to > n) throw SchemaError("field numbers must lie in 1.." + std::to_string(n));
  Scene out = sc;
  out.fields = rearrangement_path(sc.fields[static_cast<std::size_t>(from - 1)], sc.fields[static_cast<std::size_t>(to - 1)]);
  emit(cfg, dump_scene(out));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conley index tracking for multivector fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Session cfg;
  app.add_option("--field-char", cfg.prime, "Prime characteristic of the coefficient field")->default_val(2);
  app.add_flag("--heuristic-g", cfg.heuristic_g, "Continue past non-adjacent steps with the intersection heuristic");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}))->default_val("text");
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

  std::string path, selector;
  int field_no = 1, from = 1, to = 0;
  auto* validate = app.add_subcommand("validate", "Check a scene file and its seed");
  validate->add_option("scene", path)->required()->check(CLI::ExistingFile);
  auto* conley = app.add_subcommand("conley", "Conley index of a set");
  conley->add_option("scene", path)->required()->check(CLI::ExistingFile);
  conley->add_option("--set", selector, "seed, a name from 'sets', or a JSON array of simplices");
  conley->add_option("--field", field_no, "Field number, starting at 1");
  auto* track = app.add_subcommand("track", "Run the tracking protocol from the seed");
  track->add_option("scene", path)->required()->check(CLI::ExistingFile);
  auto* barcode = app.add_subcommand("barcode", "Barcode of a zigzag file");
  barcode->add_option("zigzag", path)->required()->check(CLI::ExistingFile);
  auto* rearrange = app.add_subcommand("rearrange-path", "Atomic rearrangement path between two fields");
  rearrange->add_option("scene", path)->required()->check(CLI::ExistingFile);
  rearrange->add_option("--from", from, "First field number (default 1)");
  rearrange->add_option("--to", to, "Last field number (default the last field)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (!is_prime(cfg.prime)) throw PreconditionViolated("--field-char must be prime");
    if (*validate) return cmd_validate(cfg, path);
    if (*conley) return cmd_conley(cfg, path, selector, field_no);
    if (*track) return cmd_track(cfg, path);
    if (*barcode) return cmd_barcode(cfg, path);
    if (*rearrange) return cmd_rearrange(cfg, path, from, to);
  } catch (const ValidationFailure& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const NotAtomic& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const SchemaError& e) {
    std::cerr << "invalid file: " << e.what() << "\n";
    return kInvalid;
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
