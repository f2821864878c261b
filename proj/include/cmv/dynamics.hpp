#pragma once

#include <vector>

#include "cmv/mvf.hpp"

namespace cmv {

// A finite path: steps[i+1] ∈ F_V(steps[i]).
using Path = std::vector<int>;

bool is_path(const MultivectorField& v, const Path& path);

// inv_V(A): simplices of A on some essential solution contained in A.
//
// Works on the graph G_A with edges sigma -> tau for tau ∈ F_V(sigma) ∩ A.
// The core is every simplex of a critical multivector together with every
// simplex whose strongly connected component meets two multivectors; the
// result is everything that is reachable from the core and reaches it.
SimplexSet invariant_part(const MultivectorField& v, const SimplexSet& a);

bool is_invariant(const MultivectorField& v, const SimplexSet& s);
bool is_v_compatible(const MultivectorField& v, const SimplexSet& s);
// Invariant, convex and V-compatible.
bool is_isolated_invariant_set(const MultivectorField& v, const SimplexSet& s);

// N closed, F_V(S) ⊆ N, and no path in N leaves S and comes back.
bool isolates(const MultivectorField& v, const SimplexSet& n, const SimplexSet& s);

// pf_V(A, N): simplices of N reachable from A by paths in N. Throws
// PreconditionViolated unless A ⊆ N.
SimplexSet push_forward(const MultivectorField& v, const SimplexSet& a, const SimplexSet& n);

struct IndexPair {
  SimplexSet p;
  SimplexSet e;

  // Checks closedness and E ⊆ P.
  static IndexPair make(const Complex& k, SimplexSet p, SimplexSet e);

  bool operator==(const IndexPair&) const = default;
  bool is_subpair_of(const IndexPair& o) const { return p.is_subset_of(o.p) && e.is_subset_of(o.e); }
};

IndexPair intersect(const IndexPair& a, const IndexPair& b);

Report validate_index_pair(const MultivectorField& v, const SimplexSet& p, const SimplexSet& e,
                           const SimplexSet& s);
inline Report validate_index_pair(const MultivectorField& v, const IndexPair& pair, const SimplexSet& s) {
  return validate_index_pair(v, pair.p, pair.e, s);
}

Report validate_index_pair_in_n(const MultivectorField& v, const SimplexSet& p, const SimplexSet& e,
                                const SimplexSet& n, const SimplexSet& s);
inline Report validate_index_pair_in_n(const MultivectorField& v, const IndexPair& pair, const SimplexSet& n,
                                       const SimplexSet& s) {
  return validate_index_pair_in_n(v, pair.p, pair.e, n, s);
}

// (cl A, mo A) for a convex V-compatible A.
IndexPair canonical_index_pair(const MultivectorField& v, const SimplexSet& a);

// Conley index H(cl S, mo S).
BettiVector conley_index(const MultivectorField& v, const SimplexSet& s);

}  // namespace cmv
