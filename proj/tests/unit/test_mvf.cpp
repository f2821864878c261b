#include "doctest.h"

#include "../generators.hpp"
#include "../oracles.hpp"
#include "cmv/mvf.hpp"
#include "helpers.hpp"

using namespace cmv;

TEST_CASE("validate_field examples") {
  auto k = th::complex({{0, 1, 2}});
  std::vector<std::vector<int>> singles;
  for (std::size_t i = 0; i < k->size(); ++i) singles.push_back({static_cast<int>(i)});
  CHECK(validate_field(*k, singles).ok());
  CHECK(validate_field(*k, {k->full_set().members()}).ok());

  const int v0 = k->index_of(Simplex{0}), t = k->index_of(Simplex{0, 1, 2});
  std::vector<std::vector<int>> bad{{v0, t}};
  for (std::size_t i = 0; i < k->size(); ++i)
    if (static_cast<int>(i) != v0 && static_cast<int>(i) != t) bad.push_back({static_cast<int>(i)});
  Report r = validate_field(*k, bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.summary().find(to_string(k->simplex(t))) != std::string::npos);
  CHECK(r.summary().find("not convex") != std::string::npos);
  CHECK_THROWS_AS(MultivectorField(k, bad), ValidationFailure);

  CHECK_FALSE(validate_field(*k, {{v0}}).ok());                 // not covering
  CHECK_FALSE(validate_field(*k, {k->full_set().members(), {v0}}).ok());  // overlapping
}

TEST_CASE("disconnected multivectors are accepted") {
  auto k = th::complex({{0}, {1}, {2, 3}});
  auto v = th::field(k, {{{0}, {1}}});
  CHECK(v.count() == k->size() - 1);
  CHECK(v.same_multivector(k->index_of(Simplex{0}), k->index_of(Simplex{1})));
}

TEST_CASE("fmap examples") {
  auto k = th::complex({{0, 1, 2}});
  auto w = MultivectorField::singletons(k);
  const int t = k->index_of(Simplex{0, 1, 2});
  CHECK(w.fmap(t) == k->closure_of(t));

  auto v = th::field(k, {{{0, 1}, {0, 1, 2}}});
  const int e = k->index_of(Simplex{0, 1});
  CHECK(v.fmap(e) == (k->closure_of(e) | th::set(*k, {{0, 1, 2}})));
  for (std::size_t i = 0; i < k->size(); ++i) CHECK(v.fmap(static_cast<int>(i)).contains(static_cast<int>(i)));
}

TEST_CASE("fmap grows under coarsening") {
  gen::Rng rng(31);
  int checked = 0;
  while (checked < 200) {
    auto k = gen::complex(rng, 25);
    auto v = gen::field(rng, k);
    auto next = gen::atomic_neighbour(rng, v, false, true);
    if (!next) continue;
    ++checked;
    for (std::size_t i = 0; i < k->size(); ++i) CHECK(v.fmap(static_cast<int>(i)).is_subset_of(next->fmap(static_cast<int>(i))));
  }
}

TEST_CASE("criticality examples") {
  auto k = th::complex({{0, 1, 2}});
  auto w = MultivectorField::singletons(k);
  for (int id : w.ids()) CHECK(w.is_critical(id));
  auto v = th::field(k, {{{0}, {0, 1}}});
  CHECK_FALSE(v.is_critical_at(k->index_of(Simplex{0})));
  CHECK(multivector_index(*k, th::set(*k, {{0}, {0, 1}}), PrimeField{}).is_zero());
  CHECK(v.is_critical_at(k->index_of(Simplex{0, 1, 2})));

  Scene sc = th::scene("fig1.json");
  const MultivectorField& v1 = sc.fields.front();
  SimplexSet s1 = sc.sets.at("S1");
  CHECK(v1.is_multivector(s1));
  CHECK(v1.is_critical_at(s1.first()));
  CHECK(multivector_index(*sc.complex, s1, PrimeField{}) == BettiVector{{0, 1, 0}});
}

TEST_CASE("classify_rearrangement examples") {
  auto k = th::complex({{0, 1, 2}});
  auto v = th::field(k, {{{0}, {0, 1}}, {{1, 2}, {0, 1, 2}}});
  CHECK_THROWS_AS(classify_rearrangement(v, v), NotAtomic);

  const int top = v.id_of(k->index_of(Simplex{1, 2}));
  auto finer = split(v, top, th::set(*k, {{0, 1, 2}}));
  AtomicRearrangement r = classify_rearrangement(v, finer);
  CHECK(r.kind == RearrangementKind::refinement);
  CHECK(r.whole == th::set(*k, {{1, 2}, {0, 1, 2}}));
  CHECK((r.part_a | r.part_b) == r.whole);
  CHECK_FALSE(r.part_a.intersects(r.part_b));
  CHECK(r.part_a.contains(k->index_of(Simplex{0, 1, 2})));
  AtomicRearrangement back = classify_rearrangement(finer, v);
  CHECK(back.kind == RearrangementKind::coarsening);
  CHECK(back.whole == r.whole);

  // Swap the vertex and the triangle between two parts.
  auto swapped = th::field(k, {{{0}, {0, 2}}, {{0, 1}, {0, 1, 2}}});
  CHECK_THROWS_AS(classify_rearrangement(v, swapped), NotAtomic);
}

TEST_CASE("split and merge reject bad arguments") {
  auto k = th::complex({{0, 1}});
  auto v = th::field(k, {{{0}, {0, 1}}});
  const int a = k->index_of(Simplex{0});
  CHECK_THROWS_AS(split(v, a, v.members_set(a)), PreconditionViolated);
  CHECK_THROWS_AS(split(v, a, k->empty_set()), PreconditionViolated);
  CHECK_THROWS_AS(merge(v, a, a), PreconditionViolated);
}

TEST_CASE("refinement_path examples") {
  auto k = th::complex({{0, 1}});
  auto w = MultivectorField::singletons(k);
  CHECK(refinement_path(w).size() == 1);
  auto v = th::field(k, {{{0}, {0, 1}}});
  auto path = refinement_path(v);
  REQUIRE(path.size() == 2);
  CHECK(path.front() == v);
  CHECK(path.back() == w);
}

TEST_CASE("refinement paths on random fields") {
  gen::Rng rng(32);
  for (int t = 0; t < 150; ++t) {
    auto k = gen::complex(rng, 30);
    auto v = gen::field(rng, k);
    auto path = refinement_path(v);
    CHECK(path.size() == k->size() - v.count() + 1);
    CHECK(path.front() == v);
    CHECK(path.back() == MultivectorField::singletons(k));
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      CHECK(classify_rearrangement(path[i], path[i + 1]).kind == RearrangementKind::refinement);
  }
}

TEST_CASE("rearrangement_path examples") {
  auto k = th::complex({{0, 1, 2}});
  auto w = MultivectorField::singletons(k);
  CHECK(rearrangement_path(w, w).size() == 1);
  auto v = th::field(k, {{{0}, {0, 1}}, {{1, 2}, {0, 1, 2}}});
  auto loop = rearrangement_path(v, v);
  CHECK(loop.size() == 2 * (k->size() - v.count()) + 1);
  CHECK(loop[k->size() - v.count()] == w);
  CHECK(loop.back() == v);
}

TEST_CASE("intersect_fields") {
  gen::Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    auto k = gen::complex(rng, 25);
    auto a = gen::field(rng, k);
    auto b = gen::field(rng, k);
    auto w = MultivectorField::singletons(k);
    CHECK(intersect_fields(a, a) == a);
    CHECK(intersect_fields(a, w) == w);
    auto ab = intersect_fields(a, b);
    CHECK(ab == intersect_fields(b, a));
    for (std::size_t i = 0; i < k->size(); ++i) {
      const int s = static_cast<int>(i);
      CHECK(ab.multivector_of(s) == (a.multivector_of(s) & b.multivector_of(s)));
    }
    if (auto finer = gen::atomic_neighbour(rng, a, true, false)) CHECK(intersect_fields(a, *finer) == *finer);
  }
}

TEST_CASE("criticality of large fields matches multivector_index") {
  gen::Rng rng(34);
  // A grid strip large enough for the parallel branch.
  std::vector<std::vector<Vertex>> tris;
  for (int c = 0; c < 40; ++c) {
    tris.push_back({c, c + 1, c + 42});
    tris.push_back({c, c + 41, c + 42});
  }
  auto k = th::complex(tris);
  for (int t = 0; t < 5; ++t) {
    auto v = gen::field(rng, k, 0.3);
    REQUIRE(v.count() > 64);
    for (int id : v.ids())
      CHECK(v.is_critical(id) == !multivector_index(*k, v.members_set(id), PrimeField{}).is_zero());
  }
}
