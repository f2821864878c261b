#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cmv/algebra.hpp"
#include "cmv/complex.hpp"

namespace cmv {

// A multivector is identified by its lexicographically smallest simplex,
// which is its smallest simplex index.
using MultivectorId = int;

// Checks that `parts` partitions K into convex sets. Connectivity is not
// required.
Report validate_field(const Complex& k, const std::vector<std::vector<int>>& parts);

// Partition of a complex into convex multivectors. Immutable; criticality of
// every multivector is computed once at construction.
class MultivectorField {
 public:
  // Throws ValidationFailure naming the offending part.
  MultivectorField(ComplexPtr complex, std::vector<std::vector<int>> parts, PrimeField field = PrimeField{});

  static MultivectorField singletons(ComplexPtr complex, PrimeField field = PrimeField{});
  static MultivectorField whole(ComplexPtr complex, PrimeField field = PrimeField{});

  const Complex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const PrimeField& field() const { return field_; }

  std::size_t count() const { return parts_.size(); }
  // Ids in ascending order.
  std::vector<MultivectorId> ids() const;
  // [sigma]_V
  MultivectorId id_of(int simplex) const { return parts_[slot_[static_cast<std::size_t>(simplex)]].front(); }
  const std::vector<int>& members(MultivectorId id) const { return parts_[slot_of(id)]; }
  const SimplexSet& members_set(MultivectorId id) const { return sets_[slot_of(id)]; }
  const SimplexSet& multivector_of(int simplex) const { return sets_[slot_[static_cast<std::size_t>(simplex)]]; }
  bool same_multivector(int a, int b) const { return slot_[static_cast<std::size_t>(a)] == slot_[static_cast<std::size_t>(b)]; }
  bool is_multivector(const SimplexSet& s) const;

  bool is_critical(MultivectorId id) const { return critical_[slot_of(id)]; }
  bool is_critical_at(int simplex) const { return critical_[slot_[static_cast<std::size_t>(simplex)]]; }

  // F_V(sigma) = cl(sigma) ∪ [sigma]_V
  SimplexSet fmap(int simplex) const;
  // F_V(A) = ∪ F_V(sigma)
  SimplexSet fmap(const SimplexSet& a) const;

  // Sorted parts, each sorted, ordered by id.
  const std::vector<std::vector<int>>& parts() const { return parts_; }

  bool operator==(const MultivectorField& o) const;

 private:
  std::size_t slot_of(MultivectorId id) const;

  ComplexPtr complex_;
  PrimeField field_;
  std::vector<std::vector<int>> parts_;
  std::vector<SimplexSet> sets_;
  std::vector<std::size_t> slot_;  // simplex -> part slot
  std::vector<bool> critical_;
};

// H(cl V, mo V) for a multivector V.
BettiVector multivector_index(const Complex& k, const SimplexSet& v, const PrimeField& f);

enum class RearrangementKind { refinement, coarsening };

// One multivector of the coarser field split into two parts of the finer one.
// `source_is_coarse` is true for refinements (V -> V' splits) and false for
// coarsenings (V -> V' merges).
struct AtomicRearrangement {
  RearrangementKind kind;
  SimplexSet whole;   // W for a refinement, merged V for a coarsening
  SimplexSet part_a;  // the part containing the smallest simplex of whole
  SimplexSet part_b;
};

// Throws NotAtomic unless V' is an atomic refinement or coarsening of V.
AtomicRearrangement classify_rearrangement(const MultivectorField& from, const MultivectorField& to);

// Field with multivector `id` split into `part` and its complement.
MultivectorField split(const MultivectorField& v, MultivectorId id, const SimplexSet& part);
// Field with two multivectors merged.
MultivectorField merge(const MultivectorField& v, MultivectorId a, MultivectorId b);

// V = V_1, ..., V_n = singleton field; each step splits the smallest
// non-singleton multivector at its smallest maximal element.
std::vector<MultivectorField> refinement_path(const MultivectorField& v);
// refinement_path(V) followed by reversed refinement_path(V').
std::vector<MultivectorField> rearrangement_path(const MultivectorField& from, const MultivectorField& to);

// Common refinement {V1 ∩ V2} without empty parts.
MultivectorField intersect_fields(const MultivectorField& a, const MultivectorField& b);

}  // namespace cmv
