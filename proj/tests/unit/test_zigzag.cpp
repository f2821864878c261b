#include "doctest.h"

#include "../generators.hpp"
#include "../oracles.hpp"
#include "cmv/zigzag.hpp"
#include "helpers.hpp"

using namespace cmv;

namespace {

ZigzagModule line(std::vector<std::size_t> dims, std::vector<Arrow> arrows, std::vector<Matrix> maps) {
  return ZigzagModule{std::move(dims), std::move(arrows), std::move(maps)};
}

Matrix mat(std::size_t r, std::size_t c, std::vector<Scalar> entries) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entries[i * c + j];
  return m;
}

std::vector<Bar> bars(const Barcode& b, int dim) { return b.in_dim(dim); }

}  // namespace

TEST_CASE("decompose small modules") {
  PrimeField f;
  // k -> k -> k with identities: one full interval.
  auto full = decompose(line({1, 1, 1}, {Arrow::forward, Arrow::forward}, {mat(1, 1, {1}), mat(1, 1, {1})}), f);
  CHECK(full == std::vector<std::pair<int, int>>{{1, 3}});
  // k <- k -> 0: the zero map kills at 2.
  auto cut = decompose(line({1, 1, 0}, {Arrow::backward, Arrow::forward}, {mat(1, 1, {1}), Matrix(0, 1)}), f);
  CHECK(cut == std::vector<std::pair<int, int>>{{1, 2}});
  // k -> k <- k with a zero left map.
  auto split = decompose(line({1, 1, 1}, {Arrow::forward, Arrow::backward}, {mat(1, 1, {0}), mat(1, 1, {1})}), f);
  CHECK(oracle::count_intervals(split) == std::map<std::pair<int, int>, int>{{{1, 1}, 1}, {{2, 3}, 1}});
  // k^2 -> k -> k^2 via (1 1) and (1 1)^T.
  auto mid = decompose(line({2, 1, 2}, {Arrow::forward, Arrow::forward}, {mat(1, 2, {1, 1}), mat(2, 1, {1, 1})}), f);
  CHECK(oracle::count_intervals(mid) ==
        std::map<std::pair<int, int>, int>{{{1, 1}, 1}, {{1, 3}, 1}, {{3, 3}, 1}});
}

TEST_CASE("decompose matches the rank oracle on random modules") {
  gen::Rng rng(51);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    for (int t = 0; t < 60; ++t) {
      const int n = gen::uniform(rng, 1, 6);
      ZigzagModule m;
      for (int i = 0; i < n; ++i) m.dims.push_back(static_cast<std::size_t>(gen::uniform(rng, 0, 3)));
      for (int i = 0; i + 1 < n; ++i) {
        Arrow a = gen::coin(rng) ? Arrow::forward : Arrow::backward;
        const std::size_t from = a == Arrow::forward ? m.dims[i] : m.dims[i + 1];
        const std::size_t to = a == Arrow::forward ? m.dims[i + 1] : m.dims[i];
        Matrix x(to, from);
        for (std::size_t r = 0; r < to; ++r)
          for (std::size_t c = 0; c < from; ++c) x.at(r, c) = static_cast<Scalar>(gen::uniform(rng, 0, static_cast<int>(p) - 1));
        m.arrows.push_back(a);
        m.maps.push_back(x);
      }
      auto got = oracle::count_intervals(decompose(m, f));
      auto want = oracle::interval_multiplicities(m, f);
      std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
      CHECK(got == want);
    }
  }
}

TEST_CASE("arrows are inferred from inclusions") {
  auto k = th::complex({{0, 1, 2}});
  IndexPair small{th::set(*k, {{0}}), k->empty_set()};
  IndexPair big{k->full_set(), th::set(*k, {{0}})};
  IndexPair other{th::set(*k, {{1}}), th::set(*k, {{1}})};
  CHECK(inclusion_arrow(small, big) == Arrow::forward);
  CHECK(inclusion_arrow(big, small) == Arrow::backward);
  CHECK_THROWS_AS(inclusion_arrow(small, other), PreconditionViolated);

  PairZigzag z;
  z.append(small, FieldSpan::at(0));
  z.append(big, FieldSpan::at(1));
  z.append(big, FieldSpan::at(2));
  CHECK(z.size() == 3);
  CHECK(z.arrows == std::vector<Arrow>{Arrow::forward, Arrow::forward});
  CHECK_THROWS_AS(z.append(other), PreconditionViolated);

  PairZigzag y;
  y.extend(small, FieldSpan::at(0));
  y.extend(big, FieldSpan::at(1));
  y.extend(big, FieldSpan::at(2));
  CHECK(y.size() == 2);
  CHECK(y.spans.back() == FieldSpan::between(1, 2));
}

TEST_CASE("constant zigzag has a full barcode") {
  Scene sc = th::scene("fig1.json");
  const MultivectorField& v = sc.fields.front();
  IndexPair canon = canonical_index_pair(v, sc.sets.at("S1"));
  PairZigzag z;
  for (int i = 0; i < 4; ++i) z.append(canon, FieldSpan::at(i));
  Barcode b = pair_zigzag_barcode(*sc.complex, z);
  CHECK(b.length == 4);
  CHECK(b.is_full());
  CHECK(b.bars == std::vector<Bar>{{1, 1, 4}});
}

TEST_CASE("zigzag fixtures") {
  ZigzagFile f8 = load_zigzag(th::fixture("fig8_in_n.zigzag.json"));
  Barcode b8 = pair_zigzag_barcode(*f8.complex, f8.zigzag);
  CHECK(b8.bars == std::vector<Bar>{{2, 1, 3}});
  CHECK(b8.is_full());

  ZigzagFile f7 = load_zigzag(th::fixture("fig7_naive.zigzag.json"));
  Barcode b7 = pair_zigzag_barcode(*f7.complex, f7.zigzag);
  CHECK(bars(b7, 2) == std::vector<Bar>{{2, 1, 1}, {2, 3, 3}});
  CHECK(bars(b7, 1) == std::vector<Bar>{{1, 2, 2}, {1, 2, 2}});
  CHECK_FALSE(b7.is_full());
}

TEST_CASE("induced map ranks") {
  auto k = th::complex({{0, 1}, {1, 2}});
  IndexPair a{th::set(*k, {{0}}), k->empty_set()};
  IndexPair b{k->full_set(), k->empty_set()};
  CHECK(induced_map_rank(*k, a, a) == std::vector<int>{1, 0});
  CHECK(induced_map_rank(*k, a, b) == std::vector<int>{1, 0});
  // Two points into the path joining them: rank 1 below both Betti numbers 2 and 1.
  IndexPair ends{th::set(*k, {{0}, {2}}), k->empty_set()};
  CHECK(relative_homology(*k, ends.p, ends.e)[0] == 2);
  CHECK(induced_map_rank(*k, ends, b) == std::vector<int>{1, 0});
  CHECK(induced_map_rank(*k, b, a) == induced_map_rank(*k, a, b));
  IndexPair c{th::set(*k, {{2}}), k->empty_set()};
  CHECK_THROWS_AS(induced_map_rank(*k, a, c), PreconditionViolated);
}

TEST_CASE("barcodes of random pair zigzags") {
  gen::Rng rng(52);
  for (int t = 0; t < 60; ++t) {
    auto k = gen::complex(rng, 25);
    PairZigzag z;
    IndexPair cur{k->closure(gen::subset(rng, *k, 0.4)), k->empty_set()};
    cur.e = k->closure(gen::subset(rng, *k, 0.2)) & cur.p;
    z.append(cur);
    const int n = gen::uniform(rng, 1, 7);
    for (int i = 0; i < n; ++i) {
      IndexPair next = cur;
      if (gen::coin(rng)) {
        next.p |= k->closure(gen::subset(rng, *k, 0.15));
        next.e |= k->closure(gen::subset(rng, *k, 0.1)) & next.p;
      } else {
        SimplexSet keep = k->closure(gen::subset(rng, *k, 0.7));
        next.p &= keep;
        next.e &= keep;
      }
      z.append(next);
      cur = next;
    }
    Barcode b = pair_zigzag_barcode(*k, z);
    CHECK(b == pair_zigzag_barcode_serial(*k, z));
    CHECK(b.length == static_cast<int>(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) {
      BettiVector h = relative_homology(*k, z.pairs[i].p, z.pairs[i].e);
      for (int d = 0; d <= k->dim(); ++d) CHECK(b.count_at(d, static_cast<int>(i) + 1) == h[static_cast<std::size_t>(d)]);
    }
  }
}
