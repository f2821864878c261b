#include "cmv/dynamics.hpp"

#include <algorithm>
#include <deque>

namespace cmv {

namespace {

// Successors of sigma in G_X, excluding sigma itself.
template <class Fn>
void for_each_successor(const MultivectorField& v, const SimplexSet& x, int sigma, Fn&& fn) {
  for (int f : v.complex().faces(sigma))
    if (x.contains(f)) fn(f);
  for (int m : v.members(v.id_of(sigma)))
    if (m != sigma && x.contains(m)) fn(m);
}

// Predecessors of tau in G_X: cofaces of tau and other members of [tau].
// Built explicitly since the complex stores only cofacets.
std::vector<std::vector<int>> reverse_edges(const MultivectorField& v, const SimplexSet& x,
                                            const std::vector<int>& nodes) {
  std::vector<std::vector<int>> rev(v.complex().size());
  for (int s : nodes) for_each_successor(v, x, s, [&](int t) { rev[static_cast<std::size_t>(t)].push_back(s); });
  return rev;
}

// Tarjan's algorithm, iterative. Returns component id per simplex (-1 outside).
std::vector<int> strong_components(const MultivectorField& v, const SimplexSet& x, const std::vector<int>& nodes) {
  const std::size_t n = v.complex().size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> succ(n);
  for (int s : nodes) for_each_successor(v, x, s, [&](int t) { succ[static_cast<std::size_t>(s)].push_back(t); });

  int counter = 0, ncomp = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int root : nodes) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [u, next] = call.back();
      const auto su = static_cast<std::size_t>(u);
      if (next == 0 && index[su] < 0) {
        index[su] = low[su] = counter++;
        stack.push_back(u);
        on_stack[su] = 1;
      }
      if (next < succ[su].size()) {
        int w = succ[su][next++];
        const auto sw = static_cast<std::size_t>(w);
        if (index[sw] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[sw]) {
          low[su] = std::min(low[su], index[sw]);
        }
        continue;
      }
      if (low[su] == index[su]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = ncomp;
          if (w == u) break;
        }
        ++ncomp;
      }
      int finished = u;
      call.pop_back();
      if (!call.empty()) {
        auto parent = static_cast<std::size_t>(call.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return comp;
}

SimplexSet reach(const MultivectorField& v, const SimplexSet& x, const SimplexSet& from) {
  SimplexSet seen = from;
  std::deque<int> queue;
  for (int s : from.members()) queue.push_back(s);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for_each_successor(v, x, s, [&](int t) {
      if (!seen.contains(t)) {
        seen.insert(t);
        queue.push_back(t);
      }
    });
  }
  return seen;
}

}  // namespace

bool is_path(const MultivectorField& v, const Path& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!v.fmap(path[i]).contains(path[i + 1])) return false;
  return true;
}

SimplexSet invariant_part(const MultivectorField& v, const SimplexSet& a) {
  const Complex& k = v.complex();
  const std::vector<int> nodes = a.members();
  if (nodes.empty()) return k.empty_set();

  std::vector<int> comp = strong_components(v, a, nodes);
  // First multivector seen per component; -2 once a second one appears.
  std::vector<int> comp_mv(nodes.size(), -1);
  for (int s : nodes) {
    int& slot = comp_mv[static_cast<std::size_t>(comp[static_cast<std::size_t>(s)])];
    int mv = v.id_of(s);
    if (slot == -1) slot = mv;
    else if (slot != mv) slot = -2;
  }
  SimplexSet core(k.size());
  for (int s : nodes)
    if (v.is_critical_at(s) || comp_mv[static_cast<std::size_t>(comp[static_cast<std::size_t>(s)])] == -2)
      core.insert(s);
  if (core.empty()) return core;

  SimplexSet forward = reach(v, a, core);
  // Backward reachability over reversed edges.
  auto rev = reverse_edges(v, a, nodes);
  SimplexSet backward = core;
  std::deque<int> queue;
  for (int s : core.members()) queue.push_back(s);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : rev[static_cast<std::size_t>(s)])
      if (!backward.contains(p)) {
        backward.insert(p);
        queue.push_back(p);
      }
  }
  return forward & backward;
}

bool is_invariant(const MultivectorField& v, const SimplexSet& s) { return invariant_part(v, s) == s; }

bool is_v_compatible(const MultivectorField& v, const SimplexSet& s) {
  for (int x : s.members())
    if (!v.multivector_of(x).is_subset_of(s)) return false;
  return true;
}

bool is_isolated_invariant_set(const MultivectorField& v, const SimplexSet& s) {
  return v.complex().is_convex(s) && is_v_compatible(v, s) && is_invariant(v, s);
}

bool isolates(const MultivectorField& v, const SimplexSet& n, const SimplexSet& s) {
  const Complex& k = v.complex();
  if (!k.is_closed(n)) return false;
  SimplexSet image = v.fmap(s);
  if (!image.is_subset_of(n)) return false;
  SimplexSet exits = image - s;
  if (exits.empty()) return true;
  return !reach(v, n, exits).intersects(s);
}

SimplexSet push_forward(const MultivectorField& v, const SimplexSet& a, const SimplexSet& n) {
  if (!a.is_subset_of(n)) throw PreconditionViolated("push_forward: A is not a subset of N");
  return reach(v, n, a);
}

IndexPair IndexPair::make(const Complex& k, SimplexSet p, SimplexSet e) {
  if (!k.is_closed(p)) throw PreconditionViolated("index pair: P is not closed");
  if (!k.is_closed(e)) throw PreconditionViolated("index pair: E is not closed");
  if (!e.is_subset_of(p)) throw PreconditionViolated("index pair: E is not a subset of P");
  return IndexPair{std::move(p), std::move(e)};
}

IndexPair intersect(const IndexPair& a, const IndexPair& b) { return IndexPair{a.p & b.p, a.e & b.e}; }

namespace {

void check_pair_shape(const Complex& k, const SimplexSet& p, const SimplexSet& e, Report& r) {
  if (!k.is_closed(p)) r.fail("P is not closed");
  if (!k.is_closed(e)) r.fail("E is not closed");
  if (!e.is_subset_of(p)) r.fail("E is not a subset of P");
}

}  // namespace

Report validate_index_pair(const MultivectorField& v, const SimplexSet& p, const SimplexSet& e,
                           const SimplexSet& s) {
  Report r;
  check_pair_shape(v.complex(), p, e, r);
  const SimplexSet diff = p - e;
  if (!v.fmap(diff).is_subset_of(p)) r.fail("F(P \\ E) is not contained in P");
  if (!(v.fmap(e) & p).is_subset_of(e)) r.fail("F(E) ∩ P is not contained in E");
  if (invariant_part(v, diff) != s) r.fail("inv(P \\ E) differs from S");
  return r;
}

Report validate_index_pair_in_n(const MultivectorField& v, const SimplexSet& p, const SimplexSet& e,
                                const SimplexSet& n, const SimplexSet& s) {
  Report r;
  check_pair_shape(v.complex(), p, e, r);
  const SimplexSet diff = p - e;
  if (!v.fmap(diff).is_subset_of(n)) r.fail("F(P \\ E) is not contained in N");
  if (!(v.fmap(e) & n).is_subset_of(e)) r.fail("F(E) ∩ N is not contained in E");
  if (!(v.fmap(p) & n).is_subset_of(p)) r.fail("F(P) ∩ N is not contained in P");
  if (invariant_part(v, diff) != s) r.fail("inv(P \\ E) differs from S");
  return r;
}

IndexPair canonical_index_pair(const MultivectorField& v, const SimplexSet& a) {
  const Complex& k = v.complex();
  if (!k.is_convex(a)) throw PreconditionViolated("canonical_index_pair: set is not convex");
  if (!is_v_compatible(v, a)) throw PreconditionViolated("canonical_index_pair: set is not V-compatible");
  return IndexPair{k.closure(a), k.mouth(a)};
}

BettiVector conley_index(const MultivectorField& v, const SimplexSet& s) {
  const Complex& k = v.complex();
  if (!k.is_convex(s)) throw PreconditionViolated("conley_index: set is not convex");
  return relative_homology(k, k.closure(s), k.mouth(s), v.field());
}

}  // namespace cmv
