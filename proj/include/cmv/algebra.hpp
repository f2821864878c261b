#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmv/complex.hpp"

namespace cmv {

using Scalar = std::uint32_t;

// Arithmetic modulo a fixed prime p.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 2);

  std::uint32_t prime() const { return p_; }
  Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((a + static_cast<std::uint64_t>(b)) % p_); }
  Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((a + static_cast<std::uint64_t>(p_ - b)) % p_); }
  Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;
  // Image of a signed integer.
  Scalar from_int(long long v) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

// Dense row-major matrix over a prime field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar* row(std::size_t r) { return data_.data() + r * cols_; }
  const Scalar* row(std::size_t r) const { return data_.data() + r * cols_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& f);

// Rank by Gaussian elimination. The row updates below each pivot run as an
// OpenMP parallel loop once the trailing block is large enough.
std::size_t rank(Matrix m, const PrimeField& f);
// Single-threaded column reduction; reference for rank().
std::size_t rank_serial(const Matrix& m, const PrimeField& f);

// Basis of {x : M x = 0}, each vector of length m.cols().
std::vector<std::vector<Scalar>> null_space(const Matrix& m, const PrimeField& f);
// X with A X = B for square invertible A. Throws PreconditionViolated when A
// is singular.
Matrix solve(const Matrix& a, const Matrix& b, const PrimeField& f);

// Betti numbers indexed by homology dimension.
struct BettiVector {
  std::vector<int> ranks;

  int operator[](std::size_t k) const { return k < ranks.size() ? ranks[k] : 0; }
  bool is_zero() const;
  int total() const;
  bool operator==(const BettiVector&) const = default;
};

std::string to_string(const BettiVector& b);

// Homology of the quotient chain complex C(P)/C(E). P and E must be closed
// with E ⊆ P; the result has dim(K)+1 entries.
BettiVector relative_homology(const Complex& k, const SimplexSet& p, const SimplexSet& e,
                              const PrimeField& f = PrimeField{});

// Reduced homology of a closed subset of a complex (the whole complex when
// `closed` is omitted). Entries 0..max_dim.
BettiVector reduced_homology(const Complex& k, const SimplexSet& closed, int max_dim,
                             const PrimeField& f = PrimeField{});
BettiVector reduced_homology(const Complex& k, const PrimeField& f = PrimeField{});

// Boundary matrix of dimension-d simplices of `chains` into dimension d-1
// simplices of `chains`; faces outside `chains` are dropped. With `augment`,
// d = 0 maps every vertex to the single augmentation row.
Matrix boundary_matrix(const Complex& k, const SimplexSet& chains, int d, const PrimeField& f,
                       bool augment);

// The complex K ∪ w ∗ K for an apex w not in K. A pair (P, E) embeds as
// P ∪ {w} ∪ w ∗ E, whose reduced homology is H(P, E). One embedding is shared
// by every pair of a zigzag so pair inclusions become subcomplex inclusions.
class ConeEmbedding {
 public:
  explicit ConeEmbedding(const Complex& base, std::optional<Vertex> apex = std::nullopt);

  const Complex& universe() const { return universe_; }
  Vertex apex() const { return apex_; }
  int base_index(int i) const { return base_[static_cast<std::size_t>(i)]; }
  int coned_index(int i) const { return coned_[static_cast<std::size_t>(i)]; }
  SimplexSet embed(const SimplexSet& p, const SimplexSet& e) const;

 private:
  Vertex apex_;
  Complex universe_;
  std::vector<int> base_;
  std::vector<int> coned_;
  int apex_index_ = -1;
};

struct ConedPair {
  Complex complex;
  Vertex apex;
};

// P ∪ {w} ∪ w ∗ E as a standalone complex. The default apex is
// max vertex id + 1; an explicit apex must not be a vertex of K.
ConedPair cone_pair(const Complex& k, const SimplexSet& p, const SimplexSet& e,
                    std::optional<Vertex> apex = std::nullopt);

}  // namespace cmv
