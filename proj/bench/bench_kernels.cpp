// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "cmv/algebra.hpp"
#include "cmv/complex.hpp"
#include "cmv/zigzag.hpp"

using namespace cmv;

namespace {

Matrix random_matrix(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(density);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (hit(rng)) m.at(i, j) = 1;
  return m;
}

// Triangulated n x n grid.
ComplexPtr grid(int n) {
  std::vector<std::vector<Vertex>> tris;
  auto at = [n](int r, int c) { return r * (n + 1) + c; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      tris.push_back({at(r, c), at(r, c + 1), at(r + 1, c + 1)});
      tris.push_back({at(r, c), at(r + 1, c), at(r + 1, c + 1)});
    }
  return std::make_shared<const Complex>(Complex::from_simplices(tris));
}

// Pairs (disc(r), disc(r/3)) around the grid centre for radii that
// alternately grow and shrink. Discs are monotone in r, so consecutive pairs
// are nested.
PairZigzag disc_zigzag(const Complex& k, int n, int length) {
  const double mid = n / 2.0;
  auto disc = [&](double radius) {
    SimplexSet s(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      bool inside = true;
      for (Vertex v : k.simplex(static_cast<int>(i)).vertices()) {
        const double r = v / (n + 1), c = v % (n + 1);
        inside = inside && (r - mid) * (r - mid) + (c - mid) * (c - mid) <= radius * radius;
      }
      if (inside) s.insert(static_cast<int>(i));
    }
    return s;
  };
  PairZigzag z;
  for (int i = 0; i < length; ++i) {
    const double radius = n * (i % 2 ? 0.45 : 0.3 + 0.02 * i);
    z.append(IndexPair{disc(radius), disc(radius / 3.0)});
  }
  return z;
}

void BM_rank(benchmark::State& state) {
  PrimeField f;
  Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m, f));
}

void BM_rank_serial(benchmark::State& state) {
  PrimeField f;
  Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank_serial(m, f));
}

void BM_barcode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto k = grid(n);
  PairZigzag z = disc_zigzag(*k, n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(pair_zigzag_barcode(*k, z));
}

void BM_barcode_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto k = grid(n);
  PairZigzag z = disc_zigzag(*k, n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(pair_zigzag_barcode_serial(*k, z));
}

}  // namespace

BENCHMARK(BM_rank)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_serial)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_barcode)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_barcode_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
