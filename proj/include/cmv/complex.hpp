#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cmv/errors.hpp"

namespace cmv {

using Vertex = int;

// A simplex is its strictly increasing, non-empty vertex list.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices)
      : Simplex(std::vector<Vertex>(vertices)) {}

  const std::vector<Vertex>& vertices() const { return vertices_; }
  int dim() const { return static_cast<int>(vertices_.size()) - 1; }

  auto operator<=>(const Simplex&) const = default;

 private:
  std::vector<Vertex> vertices_;
};

// sigma <= tau iff the vertices of sigma are a subset of those of tau.
bool face_leq(const Simplex& sigma, const Simplex& tau);

std::string to_string(const Simplex& s);

// Subset of the simplices of one complex, stored as a bitset over simplex
// indices. Set algebra requires both operands to share a universe.
class SimplexSet {
 public:
  SimplexSet() = default;
  explicit SimplexSet(std::size_t universe);
  SimplexSet(std::size_t universe, std::span<const int> members);

  std::size_t universe() const { return universe_; }
  std::size_t count() const;
  bool empty() const;
  bool contains(int i) const {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }
  void insert(int i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::vector<int> members() const;
  int first() const;  // -1 when empty

  SimplexSet& operator|=(const SimplexSet& o);
  SimplexSet& operator&=(const SimplexSet& o);
  SimplexSet& operator-=(const SimplexSet& o);
  friend SimplexSet operator|(SimplexSet a, const SimplexSet& b) { return a |= b; }
  friend SimplexSet operator&(SimplexSet a, const SimplexSet& b) { return a &= b; }
  friend SimplexSet operator-(SimplexSet a, const SimplexSet& b) { return a -= b; }

  bool is_subset_of(const SimplexSet& o) const;
  bool intersects(const SimplexSet& o) const;

  bool operator==(const SimplexSet&) const = default;
  // Total order (by universe, then bit pattern) for use in ordered containers.
  bool operator<(const SimplexSet& o) const;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Finite simplicial complex. Simplices are stored explicitly and indexed in
// lexicographic order of their vertex lists, so the index order is the
// lexicographic order. Immutable after construction.
class Complex {
 public:
  // Closes the given simplices under taking faces.
  static Complex from_simplices(const std::vector<std::vector<Vertex>>& generators);

  std::size_t size() const { return simplices_.size(); }
  int dim() const { return dim_; }
  const Simplex& simplex(int i) const { return simplices_[static_cast<std::size_t>(i)]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  int dim_of(int i) const { return simplex(i).dim(); }
  Vertex max_vertex() const { return max_vertex_; }

  // -1 when absent.
  int index_of(const Simplex& s) const;
  int index_of(const std::vector<Vertex>& vertices) const;

  // Codimension-one faces; entry j drops vertex j, so the boundary sign of
  // entry j is (-1)^j.
  std::span<const int> facets(int i) const { return facets_[static_cast<std::size_t>(i)]; }
  std::span<const int> cofacets(int i) const { return cofacets_[static_cast<std::size_t>(i)]; }
  // All proper faces.
  std::span<const int> faces(int i) const { return faces_[static_cast<std::size_t>(i)]; }
  // Simplex indices of a given dimension, ascending.
  std::span<const int> of_dim(int d) const;

  SimplexSet empty_set() const { return SimplexSet(size()); }
  SimplexSet full_set() const;
  SimplexSet set_of(const std::vector<Simplex>& simplices) const;  // throws if absent

  SimplexSet closure(const SimplexSet& a) const;
  SimplexSet closure_of(int i) const;
  SimplexSet star(const SimplexSet& a) const;  // upward closure
  SimplexSet mouth(const SimplexSet& a) const { return closure(a) - a; }
  bool is_closed(const SimplexSet& a) const { return closure(a) == a; }
  // A is convex iff cl(A) ∩ star(A) ⊆ A; the left side is the smallest
  // convex superset.
  bool is_convex(const SimplexSet& a) const;
  SimplexSet convex_closure(const SimplexSet& a) const { return closure(a) & star(a); }

  std::vector<Simplex> to_simplices(const SimplexSet& a) const;
  // Closed subset as a standalone complex.
  Complex subcomplex(const SimplexSet& closed) const;

 private:
  std::vector<Simplex> simplices_;
  std::map<std::vector<Vertex>, int> index_;
  std::vector<std::vector<int>> facets_;
  std::vector<std::vector<int>> cofacets_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<int>> by_dim_;
  int dim_ = -1;
  Vertex max_vertex_ = -1;
};

using ComplexPtr = std::shared_ptr<const Complex>;

}  // namespace cmv
