#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmv/algebra.hpp"
#include "cmv/dynamics.hpp"

namespace cmv {

// forward: pairs[i] ⊆ pairs[i+1]; backward: pairs[i] ⊇ pairs[i+1].
enum class Arrow { forward, backward };

// Range of protocol fields (0-based) under which a zigzag position is an
// index pair. Untagged positions (intersections, heuristic middles) keep -1.
struct FieldSpan {
  int first = -1;
  int last = -1;

  bool tagged() const { return first >= 0; }
  static FieldSpan at(int field) { return {field, field}; }
  static FieldSpan between(int a, int b) { return {a, b}; }
  bool operator==(const FieldSpan&) const = default;
};

struct PairZigzag {
  std::vector<IndexPair> pairs;
  std::vector<Arrow> arrows;
  std::vector<FieldSpan> spans;
  // Set when some position is known not to be an index pair.
  bool heuristic = false;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  const IndexPair& back() const { return pairs.back(); }

  // Appends a pair, inferring the arrow from the inclusion. Throws
  // PreconditionViolated when the pairs are not nested.
  void append(IndexPair pair, FieldSpan span = {});
  // Like append, but a pair equal to the current last one is merged into it
  // and the two spans are joined.
  void extend(IndexPair pair, FieldSpan span = {});
  // Extends by every pair of another zigzag.
  void append(const PairZigzag& other);
};

// Direction of the inclusion between two pairs; throws when not nested.
Arrow inclusion_arrow(const IndexPair& a, const IndexPair& b);

// Abstract zigzag of vector spaces. maps[i] is dims[i+1] x dims[i] for a
// forward arrow and dims[i] x dims[i+1] for a backward one.
struct ZigzagModule {
  std::vector<std::size_t> dims;
  std::vector<Arrow> arrows;
  std::vector<Matrix> maps;
};

// Interval decomposition; 1-based closed intervals [birth, death].
std::vector<std::pair<int, int>> decompose(const ZigzagModule& m, const PrimeField& f);

struct Bar {
  int dim;
  int birth;
  int death;

  auto operator<=>(const Bar&) const = default;
};

struct Barcode {
  int length = 0;
  std::vector<Bar> bars;  // sorted

  std::vector<Bar> in_dim(int k) const;
  // Number of bars containing position i (1-based) in dimension k.
  int count_at(int k, int i) const;
  bool is_full() const;
  bool operator==(const Barcode&) const = default;
};

// Homology module in dimension k of the zigzag of coned pairs.
ZigzagModule homology_module(const Complex& k, const PairZigzag& z, int dim, const PrimeField& f);

// Barcode over dimensions 0..dim(K). Positions are processed in parallel.
Barcode pair_zigzag_barcode(const Complex& k, const PairZigzag& z, const PrimeField& f = PrimeField{});
// Same result, single-threaded throughout; reference for the parallel path.
Barcode pair_zigzag_barcode_serial(const Complex& k, const PairZigzag& z, const PrimeField& f = PrimeField{});

// Rank, per dimension 0..dim(K), of the map induced by the inclusion between
// two nested pairs (smaller into larger).
std::vector<int> induced_map_rank(const Complex& k, const IndexPair& a, const IndexPair& b,
                                  const PrimeField& f = PrimeField{});

}  // namespace cmv
