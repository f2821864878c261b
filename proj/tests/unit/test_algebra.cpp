#include "doctest.h"

#include "../generators.hpp"
#include "../oracles.hpp"
#include "cmv/algebra.hpp"
#include "helpers.hpp"

using namespace cmv;

namespace {

Matrix random_matrix(gen::Rng& rng, std::size_t r, std::size_t c, const PrimeField& f, double density) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (gen::coin(rng, density)) m.at(i, j) = static_cast<Scalar>(gen::uniform(rng, 1, static_cast<int>(f.prime()) - 1));
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.mul(3, f.inv(3)) == 1);
  CHECK(f.from_int(-1) == 4);
  CHECK(is_prime(2));
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS(PrimeField(4));
}

TEST_CASE("rank examples") {
  PrimeField f;
  CHECK(rank(Matrix(3, 4), f) == 0);
  CHECK(rank(Matrix::identity(5), f) == 5);
  auto k = th::complex({{0, 1, 2}});
  // The 3x1 boundary of a triangle.
  Matrix d2 = boundary_matrix(*k, k->full_set(), 2, f, false);
  CHECK(d2.rows() == 3);
  CHECK(d2.cols() == 1);
  CHECK(rank(d2, f) == 1);
}

TEST_CASE("rank matches the serial reference") {
  gen::Rng rng(21);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    PrimeField f(p);
    for (int t = 0; t < 60; ++t) {
      const std::size_t r = static_cast<std::size_t>(gen::uniform(rng, 1, 90));
      const std::size_t c = static_cast<std::size_t>(gen::uniform(rng, 1, 90));
      Matrix m = random_matrix(rng, r, c, f, gen::coin(rng) ? 0.05 : 0.4);
      CHECK(rank(m, f) == rank_serial(m, f));
    }
  }
}

TEST_CASE("rank of a product of full-rank factors") {
  gen::Rng rng(22);
  PrimeField f(3);
  for (int t = 0; t < 30; ++t) {
    // Lower unitriangular times upper with a chosen number of unit pivots.
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 40));
    const std::size_t want = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(n)));
    Matrix l = Matrix::identity(n), u(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) l.at(i, j) = static_cast<Scalar>(gen::uniform(rng, 0, 2));
    for (std::size_t i = 0; i < want; ++i) {
      u.at(i, i) = 1;
      for (std::size_t j = i + 1; j < n; ++j) u.at(i, j) = static_cast<Scalar>(gen::uniform(rng, 0, 2));
    }
    CHECK(rank(multiply(l, u, f), f) == want);
  }
}

TEST_CASE("null_space and solve") {
  gen::Rng rng(23);
  PrimeField f(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = static_cast<std::size_t>(gen::uniform(rng, 1, 12));
    const std::size_t c = static_cast<std::size_t>(gen::uniform(rng, 1, 12));
    Matrix m = random_matrix(rng, r, c, f, 0.5);
    auto basis = null_space(m, f);
    CHECK(basis.size() + rank(m, f) == c);
    for (const auto& v : basis) {
      Matrix x(c, 1);
      for (std::size_t i = 0; i < c; ++i) x.at(i, 0) = v[i];
      CHECK(rank(multiply(m, x, f), f) == 0);
    }
  }
  Matrix a = Matrix::identity(3);
  a.at(0, 1) = 2;
  a.at(2, 0) = 4;
  Matrix b(3, 2);
  b.at(0, 0) = 1;
  b.at(1, 1) = 3;
  b.at(2, 0) = 2;
  Matrix x = solve(a, b, f);
  Matrix ax = multiply(a, x, f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(ax.at(i, j) == b.at(i, j));
  CHECK_THROWS_AS(solve(Matrix(2, 2), Matrix(2, 1), f), PreconditionViolated);
}

TEST_CASE("relative homology examples") {
  auto k = th::complex({{0, 1, 2}});
  SimplexSet t = th::set(*k, {{0, 1, 2}});
  CHECK(relative_homology(*k, k->closure(t), k->mouth(t)) == BettiVector{{0, 0, 1}});
  SimplexSet v = th::set(*k, {{0}});
  CHECK(relative_homology(*k, v, k->empty_set()) == BettiVector{{1, 0, 0}});
  CHECK(relative_homology(*k, k->full_set(), k->full_set()).is_zero());
  CHECK_THROWS_AS(relative_homology(*k, t, k->empty_set()), PreconditionViolated);
  CHECK_THROWS_AS(relative_homology(*k, v, th::set(*k, {{1}})), PreconditionViolated);
}

TEST_CASE("relative homology of the seed multivector in the seven-triangle scene") {
  Scene sc = th::scene("fig1.json");
  SimplexSet s1 = sc.sets.at("S1");
  CHECK(relative_homology(*sc.complex, sc.complex->closure(s1), sc.complex->mouth(s1)) == BettiVector{{0, 1, 0}});
}

TEST_CASE("reduced homology of spheres and disks") {
  auto circle = th::complex({{0, 1}, {1, 2}, {0, 2}});
  CHECK(reduced_homology(*circle) == BettiVector{{0, 1}});
  auto disk = th::complex({{0, 1, 2}});
  CHECK(reduced_homology(*disk).is_zero());
  auto sphere = th::complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(reduced_homology(*sphere) == BettiVector{{0, 0, 1}});
  auto two_points = th::complex({{0}, {1}});
  CHECK(reduced_homology(*two_points) == BettiVector{{1}});
}

TEST_CASE("cone_pair examples") {
  auto k = th::complex({{0, 1}});
  SimplexSet p = k->full_set();
  SimplexSet ends = th::set(*k, {{0}, {1}});
  ConedPair empty = cone_pair(*k, p, k->empty_set());
  CHECK(empty.complex.size() == k->size() + 1);
  CHECK(empty.complex.index_of(std::vector<Vertex>{empty.apex}) >= 0);
  ConedPair c = cone_pair(*k, p, ends);
  CHECK(c.complex.size() == 6);
  CHECK(reduced_homology(c.complex) == BettiVector{{0, 1}});
  CHECK(relative_homology(*k, p, ends) == BettiVector{{0, 1}});
  CHECK_THROWS_AS(cone_pair(*k, p, ends, 1), PreconditionViolated);
}

TEST_CASE("cone embedding is monotone and matches relative homology") {
  gen::Rng rng(24);
  for (int t = 0; t < 80; ++t) {
    auto k = gen::complex(rng, 25);
    ConeEmbedding emb(*k);
    SimplexSet p = k->closure(gen::subset(rng, *k, 0.4));
    SimplexSet e = k->closure(gen::subset(rng, *k, 0.2)) & p;
    SimplexSet p2 = p | k->closure(gen::subset(rng, *k, 0.2));
    SimplexSet e2 = e | (k->closure(gen::subset(rng, *k, 0.1)) & p2);
    CHECK(emb.embed(p, e).is_subset_of(emb.embed(p2, e2)));
    BettiVector rel = relative_homology(*k, p, e);
    BettiVector coned = reduced_homology(emb.universe(), emb.embed(p, e), k->dim());
    for (int d = 0; d <= k->dim(); ++d) CHECK(rel[static_cast<std::size_t>(d)] == coned[static_cast<std::size_t>(d)]);
  }
}

TEST_CASE("Euler characteristic of a pair equals the alternating Betti sum") {
  gen::Rng rng(25);
  for (std::uint32_t prime : {2u, 3u}) {
    PrimeField f(prime);
    for (int t = 0; t < 100; ++t) {
      auto k = gen::complex(rng, 30);
      SimplexSet p = k->closure(gen::subset(rng, *k, 0.5));
      SimplexSet e = k->closure(gen::subset(rng, *k, 0.3)) & p;
      CHECK(oracle::euler_from_counts(*k, p, e) == oracle::euler_from_betti(relative_homology(*k, p, e, f)));
    }
  }
}

TEST_CASE("H(P, P) vanishes") {
  gen::Rng rng(26);
  for (int t = 0; t < 50; ++t) {
    auto k = gen::complex(rng, 30);
    SimplexSet p = k->closure(gen::subset(rng, *k, 0.5));
    CHECK(relative_homology(*k, p, p).is_zero());
  }
}
