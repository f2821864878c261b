#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmv/dynamics.hpp"
#include "cmv/mvf.hpp"
#include "cmv/zigzag.hpp"

namespace cmv {

// Smallest convex V-compatible superset of X.
SimplexSet hull(const MultivectorField& v, const SimplexSet& x);

// Protocol cases. Continuation is impossible exactly when the step is f or
// g; the step then carries a note saying so. `same` marks two identical
// consecutive fields, where S carries over unchanged.
enum class StepCase { a, b, c, d, f, g, same };

char case_letter(StepCase c);

struct TrackingStep {
  StepCase kind = StepCase::a;
  int from_field = 0;  // V_i -> V_{i+1}, 0-based
  AtomicRearrangement rearrangement;
  SimplexSet s;
  SimplexSet s_next;
  std::optional<SimplexSet> hull;        // cases d, f, g
  std::optional<IndexPair> connecting;   // cases a-d
  bool adjacent = false;                 // case f
  PairZigzag segment;                    // case f, and case g with the heuristic; fields 0 and 1
  std::vector<std::string> notes;
};

struct TrackingOptions {
  bool heuristic_g = false;
};

TrackingStep track_step(const MultivectorField& v, const MultivectorField& v_next, const SimplexSet& s,
                        const TrackingOptions& options = {});

// The index pair shared by S and S' in cases a-d.
IndexPair continuation_pairs(const TrackingStep& step);

// (cl S, mo S) ⊆ (pf(cl S, P), pf(mo S, P)) ⊇ (P ∩ pf(cl S, P), E ∩ pf(mo S, P)) ⊆ (P, E)
// for an index pair (P, E) of S. Every position is checked to be an index
// pair for S and tagged with `field`.
PairZigzag canonical_to_pair(const MultivectorField& v, const SimplexSet& s, const IndexPair& pair, int field = -1);
// The same four pairs in reverse order, ending at (cl S, mo S).
PairZigzag connect_pair_to_canonical(const MultivectorField& v, const SimplexSet& s, const IndexPair& pair,
                                     int field = -1);

// Zigzag through a sequence of connecting pairs: sets[i] under fields[i],
// pairs[i] connecting sets[i] and sets[i+1]. Begins at (cl S_1, mo S_1) and
// ends at (cl S_n, mo S_n).
PairZigzag continuation_to_zigzag(const std::vector<MultivectorField>& fields, const std::vector<SimplexSet>& sets,
                                  const std::vector<IndexPair>& pairs);

// Five pairs from (cl S, mo S) to (cl S', mo S') through push-forwards in
// B = cl S ∪ cl S'. Throws NotAdjacent unless B isolates both sets.
PairZigzag adjacency_zigzag(const MultivectorField& v, const MultivectorField& v_next, const SimplexSet& s,
                            const SimplexSet& s_next, int field = -1);

// P1 ⊇ P1 ∩ P2 ⊆ P2; the middle is in general not an index pair, so the
// result is flagged heuristic.
PairZigzag naive_intersection_zigzag(const IndexPair& first, const IndexPair& second, int field = -1);
PairZigzag naive_intersection_zigzag(const Complex& k, const SimplexSet& s, const SimplexSet& s_next,
                                     int field = -1);

struct TrackingTrace {
  SimplexSet seed;
  std::vector<TrackingStep> steps;
  PairZigzag zigzag;
  Barcode barcode;
  int fields = 0;
  bool vanished = false;    // stopped at S' = ∅
  bool unresolved = false;  // stopped at case g

  // Protocol fields covered by a bar, from the tagged positions inside it.
  FieldSpan bar_fields(const Bar& bar) const;
};

TrackingTrace run_protocol(const std::vector<MultivectorField>& fields, const SimplexSet& seed,
                           const TrackingOptions& options = {});

}  // namespace cmv
