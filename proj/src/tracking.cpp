#include "cmv/tracking.hpp"

#include <algorithm>

namespace cmv {

SimplexSet hull(const MultivectorField& v, const SimplexSet& x) {
  const Complex& k = v.complex();
  SimplexSet cur = x;
  while (true) {
    SimplexSet next = cur;
    for (int s : cur.members()) next |= v.multivector_of(s);
    next = k.convex_closure(next);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

char case_letter(StepCase c) {
  switch (c) {
    case StepCase::a: return 'a';
    case StepCase::b: return 'b';
    case StepCase::c: return 'c';
    case StepCase::d: return 'd';
    case StepCase::f: return 'f';
    case StepCase::g: return 'g';
    case StepCase::same: return '=';
  }
  return '?';
}

namespace {

void require_index_pair(const MultivectorField& v, const IndexPair& pair, const SimplexSet& s, const char* what) {
  Report r = validate_index_pair(v, pair, s);
  if (!r) throw ValidationFailure(std::string(what) + ": " + r.summary());
}

}  // namespace

TrackingStep track_step(const MultivectorField& v, const MultivectorField& v_next, const SimplexSet& s,
                        const TrackingOptions& options) {
  const Complex& k = v.complex();
  if (s.empty()) throw PreconditionViolated("track_step: S is empty");
  if (!is_isolated_invariant_set(v, s)) throw PreconditionViolated("track_step: S is not an isolated invariant set");

  TrackingStep step;
  step.s = s;
  if (v == v_next) {
    step.kind = StepCase::same;
    step.s_next = s;
    step.connecting = IndexPair{k.closure(s), k.mouth(s)};
    return step;
  }
  step.rearrangement = classify_rearrangement(v, v_next);
  const SimplexSet& merged = step.rearrangement.whole;

  if (step.rearrangement.kind == RearrangementKind::refinement) {
    step.kind = StepCase::a;
  } else if (merged.is_subset_of(s)) {
    step.kind = StepCase::b;
  } else if (!merged.intersects(s)) {
    step.kind = StepCase::c;
  } else {
    SimplexSet a = hull(v_next, s | merged);
    step.hull = a;
    step.s_next = invariant_part(v_next, a);
    if (invariant_part(v, a) == s) {
      step.kind = StepCase::d;
      step.connecting = IndexPair{k.closure(a), k.mouth(a)};
    } else {
      step.notes.push_back("continuation impossible: inv(A) under the old field differs from S");
      SimplexSet b = k.closure(s) | k.closure(step.s_next);
      step.adjacent = isolates(v, b, s) && isolates(v_next, b, step.s_next);
      if (step.adjacent) {
        step.kind = StepCase::f;
        step.segment = adjacency_zigzag(v, v_next, s, step.s_next, 0);
      } else {
        step.kind = StepCase::g;
        step.notes.push_back("S and S' are not adjacent");
        if (options.heuristic_g) {
          step.segment = naive_intersection_zigzag(k, s, step.s_next, 0);
          step.notes.push_back("heuristic intersection zigzag used; its middle pair need not be an index pair");
        }
      }
    }
  }

  if (!step.connecting) {
    if (step.kind == StepCase::a || step.kind == StepCase::b || step.kind == StepCase::c) {
      step.s_next = invariant_part(v_next, s);
      step.connecting = IndexPair{k.closure(s), k.mouth(s)};
    }
  }
  if (step.connecting) {
    require_index_pair(v, *step.connecting, step.s, "connecting pair under the old field");
    require_index_pair(v_next, *step.connecting, step.s_next, "connecting pair under the new field");
  }
  if (step.s_next.empty()) step.notes.push_back("invariant set vanished");
  return step;
}

IndexPair continuation_pairs(const TrackingStep& step) {
  if (!step.connecting) throw PreconditionViolated("continuation_pairs: step is not a continuation");
  return *step.connecting;
}

PairZigzag canonical_to_pair(const MultivectorField& v, const SimplexSet& s, const IndexPair& pair, int field) {
  const Complex& k = v.complex();
  const FieldSpan span = field >= 0 ? FieldSpan::at(field) : FieldSpan{};
  const SimplexSet cl = k.closure(s), mo = k.mouth(s);
  const SimplexSet pf_cl = push_forward(v, cl, pair.p);
  const SimplexSet pf_mo = push_forward(v, mo, pair.p);
  PairZigzag z;
  z.extend(IndexPair{cl, mo}, span);
  z.extend(IndexPair{pf_cl, pf_mo}, span);
  z.extend(IndexPair{pair.p & pf_cl, pair.e & pf_mo}, span);
  z.extend(pair, span);
  for (const auto& p : z.pairs) require_index_pair(v, p, s, "continuation zigzag");
  return z;
}

PairZigzag connect_pair_to_canonical(const MultivectorField& v, const SimplexSet& s, const IndexPair& pair,
                                     int field) {
  PairZigzag forward = canonical_to_pair(v, s, pair, field);
  PairZigzag z;
  for (std::size_t i = forward.size(); i-- > 0;) z.extend(forward.pairs[i], forward.spans[i]);
  return z;
}

PairZigzag continuation_to_zigzag(const std::vector<MultivectorField>& fields, const std::vector<SimplexSet>& sets,
                                  const std::vector<IndexPair>& pairs) {
  if (fields.size() != sets.size() || pairs.size() + 1 != sets.size())
    throw PreconditionViolated("continuation_to_zigzag: expected n fields, n sets and n-1 pairs");
  PairZigzag z;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int here = static_cast<int>(i);
    PairZigzag out = canonical_to_pair(fields[i], sets[i], pairs[i], here);
    out.spans.back() = FieldSpan::between(here, here + 1);
    z.append(out);
    PairZigzag back = connect_pair_to_canonical(fields[i + 1], sets[i + 1], pairs[i], here + 1);
    back.spans.front() = FieldSpan::between(here, here + 1);
    z.append(back);
  }
  if (pairs.empty() && !sets.empty()) {
    const Complex& k = fields[0].complex();
    z.append(IndexPair{k.closure(sets[0]), k.mouth(sets[0])}, FieldSpan::at(0));
  }
  return z;
}

PairZigzag adjacency_zigzag(const MultivectorField& v, const MultivectorField& v_next, const SimplexSet& s,
                            const SimplexSet& s_next, int field) {
  const Complex& k = v.complex();
  const SimplexSet b = k.closure(s) | k.closure(s_next);
  if (!isolates(v, b, s) || !isolates(v_next, b, s_next))
    throw NotAdjacent("cl(S) ∪ cl(S') does not isolate both invariant sets");
  const SimplexSet cl = k.closure(s), mo = k.mouth(s);
  const SimplexSet cl2 = k.closure(s_next), mo2 = k.mouth(s_next);
  IndexPair left{push_forward(v, cl, b), push_forward(v, mo, b)};
  IndexPair right{push_forward(v_next, cl2, b), push_forward(v_next, mo2, b)};
  IndexPair middle = intersect(left, right);

  Report r = validate_index_pair_in_n(v, left, b, s);
  if (!r) throw ValidationFailure("adjacency zigzag, left pair: " + r.summary());
  r = validate_index_pair_in_n(v_next, right, b, s_next);
  if (!r) throw ValidationFailure("adjacency zigzag, right pair: " + r.summary());
  MultivectorField common = intersect_fields(v, v_next);
  r = validate_index_pair_in_n(common, middle, b, invariant_part(common, middle.p - middle.e));
  if (!r) throw ValidationFailure("adjacency zigzag, middle pair: " + r.summary());

  const FieldSpan here = field >= 0 ? FieldSpan::at(field) : FieldSpan{};
  const FieldSpan next = field >= 0 ? FieldSpan::at(field + 1) : FieldSpan{};
  PairZigzag z;
  z.extend(IndexPair{cl, mo}, here);
  z.extend(left, here);
  z.extend(middle);
  z.extend(right, next);
  z.extend(IndexPair{cl2, mo2}, next);
  return z;
}

PairZigzag naive_intersection_zigzag(const IndexPair& first, const IndexPair& second, int field) {
  PairZigzag z;
  z.heuristic = true;
  z.extend(first, field >= 0 ? FieldSpan::at(field) : FieldSpan{});
  z.extend(intersect(first, second));
  z.extend(second, field >= 0 ? FieldSpan::at(field + 1) : FieldSpan{});
  return z;
}

PairZigzag naive_intersection_zigzag(const Complex& k, const SimplexSet& s, const SimplexSet& s_next, int field) {
  return naive_intersection_zigzag(IndexPair{k.closure(s), k.mouth(s)},
                                   IndexPair{k.closure(s_next), k.mouth(s_next)}, field);
}

FieldSpan TrackingTrace::bar_fields(const Bar& bar) const {
  FieldSpan out;
  for (int i = bar.birth; i <= bar.death; ++i) {
    const FieldSpan& s = zigzag.spans[static_cast<std::size_t>(i - 1)];
    if (!s.tagged()) continue;
    out.first = out.tagged() ? std::min(out.first, s.first) : s.first;
    out.last = std::max(out.last, s.last);
  }
  return out;
}

TrackingTrace run_protocol(const std::vector<MultivectorField>& fields, const SimplexSet& seed,
                           const TrackingOptions& options) {
  if (fields.empty()) throw PreconditionViolated("run_protocol: no fields");
  const Complex& k = fields[0].complex();
  TrackingTrace trace;
  trace.seed = seed;
  trace.fields = static_cast<int>(fields.size());

  if (seed.empty() || !is_isolated_invariant_set(fields[0], seed))
    throw PreconditionViolated("run_protocol: seed is not a nonempty isolated invariant set");

  SimplexSet s = seed;
  std::optional<IndexPair> pending;
  int at = 0;
  trace.zigzag.append(IndexPair{k.closure(s), k.mouth(s)}, FieldSpan::at(0));

  auto close_pending = [&](int field) {
    if (!pending) return;
    PairZigzag back = connect_pair_to_canonical(fields[static_cast<std::size_t>(field)], s, *pending, field);
    back.spans.front() = trace.zigzag.spans.back();
    trace.zigzag.append(back);
    pending.reset();
  };

  for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
    const int here = static_cast<int>(i);
    TrackingStep step = track_step(fields[i], fields[i + 1], s, options);
    step.from_field = here;

    if (step.connecting) {
      close_pending(here);
      PairZigzag out = canonical_to_pair(fields[i], s, *step.connecting, here);
      out.spans.back() = FieldSpan::between(here, here + 1);
      trace.zigzag.append(out);
      pending = step.connecting;
    } else if (step.kind == StepCase::f || options.heuristic_g) {
      close_pending(here);
      PairZigzag seg = step.segment;
      for (auto& span : seg.spans)
        if (span.tagged()) span = {span.first + here, span.last + here};
      trace.zigzag.append(seg);
    } else {
      close_pending(here);
      trace.unresolved = true;
      trace.steps.push_back(std::move(step));
      break;
    }

    s = step.s_next;
    at = here + 1;
    trace.steps.push_back(std::move(step));
    if (s.empty()) {
      close_pending(at);
      trace.vanished = true;
      break;
    }
  }
  close_pending(at);
  trace.barcode = pair_zigzag_barcode(k, trace.zigzag, fields[0].field());
  return trace;
}

}  // namespace cmv
