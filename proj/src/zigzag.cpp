#include "cmv/zigzag.hpp"

#include <algorithm>
#include <tuple>

namespace cmv {

Arrow inclusion_arrow(const IndexPair& a, const IndexPair& b) {
  if (a.is_subpair_of(b)) return Arrow::forward;
  if (b.is_subpair_of(a)) return Arrow::backward;
  throw PreconditionViolated("consecutive zigzag pairs are not nested");
}

void PairZigzag::append(IndexPair pair, FieldSpan span) {
  if (!pairs.empty()) arrows.push_back(inclusion_arrow(pairs.back(), pair));
  pairs.push_back(std::move(pair));
  spans.push_back(span);
}

void PairZigzag::extend(IndexPair pair, FieldSpan span) {
  if (pairs.empty() || !(pairs.back() == pair)) {
    append(std::move(pair), span);
    return;
  }
  FieldSpan& s = spans.back();
  if (!s.tagged()) s = span;
  else if (span.tagged()) s = {std::min(s.first, span.first), std::max(s.last, span.last)};
}

void PairZigzag::append(const PairZigzag& other) {
  heuristic = heuristic || other.heuristic;
  for (std::size_t i = 0; i < other.pairs.size(); ++i) extend(other.pairs[i], other.spans[i]);
}

// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<Scalar>;

// Homology of one coned pair in one dimension: cycle representatives plus an
// echelon store of boundaries and representatives for computing coordinates.
class PositionHomology {
 public:
  PositionHomology() = default;
  PositionHomology(const Complex& u, const SimplexSet& x, int k, const PrimeField& f) : f_(&f) {
    const auto cells = u.of_dim(k);
    n_ = cells.size();
    local_.assign(u.size(), -1);
    for (std::size_t i = 0; i < cells.size(); ++i) local_[static_cast<std::size_t>(cells[i])] = static_cast<int>(i);
    row_at_.assign(n_, -1);

    for (int s : u.of_dim(k + 1)) {
      if (!x.contains(s)) continue;
      Vec b(n_, 0);
      auto facets = u.facets(s);
      for (std::size_t j = 0; j < facets.size(); ++j)
        b[static_cast<std::size_t>(local_[static_cast<std::size_t>(facets[j])])] = (j % 2 == 0) ? 1 : f.neg(1);
      Vec coords;
      reduce(b, coords);
      if (!is_zero(b)) insert(std::move(b), -1);
    }

    std::vector<int> cols;
    for (int s : cells)
      if (x.contains(s)) cols.push_back(s);
    Matrix d = boundary_matrix(u, x, k, f, true);
    for (const Vec& z_local : null_space(d, f)) {
      Vec z(n_, 0);
      for (std::size_t c = 0; c < cols.size(); ++c)
        z[static_cast<std::size_t>(local_[static_cast<std::size_t>(cols[c])])] = z_local[c];
      Vec coords;
      reduce(z, coords);
      if (is_zero(z)) continue;
      int h = static_cast<int>(reps_.size());
      reps_.push_back(z);
      insert(std::move(z), h);
    }
  }

  std::size_t rank() const { return reps_.size(); }
  const std::vector<Vec>& reps() const { return reps_; }

  // Coordinates of a cycle of a subcomplex in this homology basis.
  Vec coordinates(Vec z) const {
    Vec coords;
    reduce(z, coords);
    if (!is_zero(z)) throw ValidationFailure("zigzag: image of a cycle is not a cycle of the larger pair");
    coords.resize(reps_.size(), 0);
    return coords;
  }

 private:
  static bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
  }

  void reduce(Vec& z, Vec& coords) const {
    coords.assign(reps_.size(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (z[i] == 0 || row_at_[i] < 0) continue;
      const Row& row = rows_[static_cast<std::size_t>(row_at_[i])];
      const Scalar c = z[i];
      for (std::size_t j = i; j < n_; ++j)
        if (row.v[j]) z[j] = f_->sub(z[j], f_->mul(c, row.v[j]));
      if (row.tag >= 0) coords[static_cast<std::size_t>(row.tag)] = f_->add(coords[static_cast<std::size_t>(row.tag)], c);
    }
  }

  void insert(Vec v, int tag) {
    std::size_t p = 0;
    while (v[p] == 0) ++p;
    const Scalar inv = f_->inv(v[p]);
    for (auto& s : v) s = f_->mul(s, inv);
    // A representative is its own normalised echelon row.
    if (tag >= 0) reps_[static_cast<std::size_t>(tag)] = v;
    row_at_[p] = static_cast<int>(rows_.size());
    rows_.push_back({std::move(v), tag});
  }

  struct Row {
    Vec v;
    int tag;  // -1 for boundaries
  };

  const PrimeField* f_ = nullptr;
  std::size_t n_ = 0;
  std::vector<int> local_;
  std::vector<int> row_at_;
  std::vector<Row> rows_;
  std::vector<Vec> reps_;
};

Matrix induced_matrix(const PositionHomology& from, const PositionHomology& to) {
  Matrix m(to.rank(), from.rank());
  for (std::size_t c = 0; c < from.rank(); ++c) {
    Vec coords = to.coordinates(from.reps()[c]);
    for (std::size_t r = 0; r < to.rank(); ++r) m.at(r, c) = coords[r];
  }
  return m;
}

// homology[dim][position]
std::vector<std::vector<PositionHomology>> all_homology(const Complex& k, const PairZigzag& z, int max_dim,
                                                        const PrimeField& f, bool parallel) {
  ConeEmbedding emb(k);
  const Complex& u = emb.universe();
  std::vector<SimplexSet> embedded(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) embedded[i] = emb.embed(z.pairs[i].p, z.pairs[i].e);

  const std::size_t dims = static_cast<std::size_t>(std::max(max_dim + 1, 0));
  std::vector<std::vector<PositionHomology>> out(dims, std::vector<PositionHomology>(z.size()));
  const long long jobs = static_cast<long long>(dims * z.size());
#pragma omp parallel for schedule(dynamic) if (parallel && jobs > 1)
  for (long long j = 0; j < jobs; ++j) {
    const std::size_t d = static_cast<std::size_t>(j) / z.size();
    const std::size_t i = static_cast<std::size_t>(j) % z.size();
    out[d][i] = PositionHomology(u, embedded[i], static_cast<int>(d), f);
  }
  return out;
}

ZigzagModule module_from(const std::vector<PositionHomology>& h, const PairZigzag& z) {
  ZigzagModule m;
  m.arrows = z.arrows;
  for (const auto& p : h) m.dims.push_back(p.rank());
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    m.maps.push_back(z.arrows[i] == Arrow::forward ? induced_matrix(h[i], h[i + 1]) : induced_matrix(h[i + 1], h[i]));
  return m;
}

void check_zigzag(const Complex& k, const PairZigzag& z) {
  if (z.arrows.size() + 1 != z.pairs.size() && !(z.pairs.empty() && z.arrows.empty()))
    throw PreconditionViolated("zigzag: arrow count does not match pair count");
  for (std::size_t i = 0; i < z.pairs.size(); ++i) {
    const auto& pr = z.pairs[i];
    if (pr.p.universe() != k.size() || pr.e.universe() != k.size())
      throw PreconditionViolated("zigzag: pair does not belong to the complex");
    if (!k.is_closed(pr.p) || !k.is_closed(pr.e) || !pr.e.is_subset_of(pr.p))
      throw PreconditionViolated("zigzag: position " + std::to_string(i + 1) + " is not a closed pair E ⊆ P");
    if (i + 1 < z.pairs.size()) {
      const auto& next = z.pairs[i + 1];
      bool ok = z.arrows[i] == Arrow::forward ? pr.is_subpair_of(next) : next.is_subpair_of(pr);
      if (!ok) throw PreconditionViolated("zigzag: arrow " + std::to_string(i + 1) + " is not an inclusion");
    }
  }
}

Barcode barcode_impl(const Complex& k, const PairZigzag& z, const PrimeField& f, bool parallel) {
  check_zigzag(k, z);
  Barcode out;
  out.length = static_cast<int>(z.size());
  if (z.empty()) return out;
  auto h = all_homology(k, z, k.dim(), f, parallel);
  for (std::size_t d = 0; d < h.size(); ++d)
    for (auto [b, e] : decompose(module_from(h[d], z), f)) out.bars.push_back({static_cast<int>(d), b, e});
  std::sort(out.bars.begin(), out.bars.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> decompose(const ZigzagModule& m, const PrimeField& f) {
  const std::size_t n = m.dims.size();
  if (m.arrows.size() + 1 != n && n > 0) throw PreconditionViolated("module: arrow count mismatch");
  if (m.maps.size() != m.arrows.size()) throw PreconditionViolated("module: map count mismatch");

  // An active bar carries its generator at the current position. Adding the
  // generator of a lower-key bar to a higher-key one never changes the
  // decomposition of the module seen so far: a bar born through a backward
  // arrow may absorb nothing born later, one born through a forward arrow may
  // absorb anything born earlier.
  struct Active {
    int birth;
    bool backward_born;
    Vec v;
  };
  auto key = [](const Active& a) { return a.backward_born ? std::make_pair(0, -a.birth) : std::make_pair(1, a.birth); };

  std::vector<std::pair<int, int>> bars;
  std::vector<Active> active;
  if (n == 0) return bars;
  for (std::size_t j = 0; j < m.dims[0]; ++j) {
    Vec e(m.dims[0], 0);
    e[j] = 1;
    active.push_back({1, false, std::move(e)});
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int here = static_cast<int>(i) + 1;  // 1-based position of V_i
    const std::size_t d0 = m.dims[i], d1 = m.dims[i + 1];
    const Matrix& map = m.maps[i];
    std::vector<std::size_t> order(active.size());
    for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(active[a]) < key(active[b]); });

    std::vector<Active> next;
    if (m.arrows[i] == Arrow::forward) {
      if (map.rows() != d1 || map.cols() != d0) throw PreconditionViolated("module: map shape mismatch");
      // Echelon of kept images, pivot = first nonzero entry.
      std::vector<Vec> rows;
      std::vector<int> row_at(d1, -1);
      auto reduce = [&](Vec& w) {
        for (std::size_t t = 0; t < d1; ++t) {
          if (w[t] == 0 || row_at[t] < 0) continue;
          const Vec& r = rows[static_cast<std::size_t>(row_at[t])];
          const Scalar c = w[t];
          for (std::size_t s = t; s < d1; ++s) w[s] = f.sub(w[s], f.mul(c, r[s]));
        }
      };
      auto push = [&](Vec w) {
        std::size_t p = 0;
        while (w[p] == 0) ++p;
        const Scalar inv = f.inv(w[p]);
        for (auto& s : w) s = f.mul(s, inv);
        row_at[p] = static_cast<int>(rows.size());
        rows.push_back(std::move(w));
      };
      for (std::size_t a : order) {
        Vec img(d1, 0);
        for (std::size_t r = 0; r < d1; ++r)
          for (std::size_t c = 0; c < d0; ++c)
            if (map.at(r, c) && active[a].v[c]) img[r] = f.add(img[r], f.mul(map.at(r, c), active[a].v[c]));
        Vec w = img;
        reduce(w);
        if (std::all_of(w.begin(), w.end(), [](Scalar s) { return s == 0; })) {
          bars.emplace_back(active[a].birth, here);
        } else {
          push(std::move(w));
          next.push_back({active[a].birth, active[a].backward_born, std::move(img)});
        }
      }
      for (std::size_t j = 0; j < d1; ++j) {
        Vec e(d1, 0);
        e[j] = 1;
        Vec w = e;
        reduce(w);
        if (std::all_of(w.begin(), w.end(), [](Scalar s) { return s == 0; })) continue;
        push(std::move(w));
        next.push_back({here + 1, false, std::move(e)});
      }
    } else {
      if (map.rows() != d0 || map.cols() != d1) throw PreconditionViolated("module: map shape mismatch");
      // Rows of Y follow `order`, so a larger row index means a larger key.
      Matrix t(d0, d0);
      for (std::size_t r = 0; r < order.size(); ++r)
        for (std::size_t s = 0; s < d0; ++s) t.at(s, r) = active[order[r]].v[s];
      Matrix y = solve(t, map, f);
      Matrix u = Matrix::identity(d1);
      std::vector<long> owner(d0, -1);
      std::vector<long> pivot_of(d1, -1);
      for (std::size_t c = 0; c < d1; ++c) {
        while (true) {
          long r = -1;
          for (std::size_t s = d0; s-- > 0;)
            if (y.at(s, c)) {
              r = static_cast<long>(s);
              break;
            }
          if (r < 0) break;
          const long o = owner[static_cast<std::size_t>(r)];
          if (o < 0) {
            owner[static_cast<std::size_t>(r)] = static_cast<long>(c);
            pivot_of[c] = r;
            break;
          }
          const auto oc = static_cast<std::size_t>(o);
          const Scalar alpha = f.mul(y.at(static_cast<std::size_t>(r), c), f.inv(y.at(static_cast<std::size_t>(r), oc)));
          for (std::size_t s = 0; s < d0; ++s) y.at(s, c) = f.sub(y.at(s, c), f.mul(alpha, y.at(s, oc)));
          for (std::size_t s = 0; s < d1; ++s) u.at(s, c) = f.sub(u.at(s, c), f.mul(alpha, u.at(s, oc)));
        }
      }
      for (std::size_t r = 0; r < d0; ++r) {
        const Active& a = active[order[r]];
        if (owner[r] < 0) {
          bars.emplace_back(a.birth, here);
          continue;
        }
        Vec v(d1);
        for (std::size_t s = 0; s < d1; ++s) v[s] = u.at(s, static_cast<std::size_t>(owner[r]));
        next.push_back({a.birth, a.backward_born, std::move(v)});
      }
      for (std::size_t c = 0; c < d1; ++c) {
        if (pivot_of[c] >= 0) continue;
        Vec v(d1);
        for (std::size_t s = 0; s < d1; ++s) v[s] = u.at(s, c);
        next.push_back({here + 1, true, std::move(v)});
      }
    }
    if (next.size() != d1) throw ValidationFailure("zigzag decomposition lost track of a basis");
    active = std::move(next);
  }
  for (const auto& a : active) bars.emplace_back(a.birth, static_cast<int>(n));
  std::sort(bars.begin(), bars.end());
  return bars;
}

std::vector<Bar> Barcode::in_dim(int k) const {
  std::vector<Bar> out;
  for (const auto& b : bars)
    if (b.dim == k) out.push_back(b);
  return out;
}

int Barcode::count_at(int k, int i) const {
  int c = 0;
  for (const auto& b : bars)
    if (b.dim == k && b.birth <= i && i <= b.death) ++c;
  return c;
}

bool Barcode::is_full() const {
  return std::all_of(bars.begin(), bars.end(), [&](const Bar& b) { return b.birth == 1 && b.death == length; });
}

ZigzagModule homology_module(const Complex& k, const PairZigzag& z, int dim, const PrimeField& f) {
  check_zigzag(k, z);
  if (dim < 0 || dim > k.dim()) return ZigzagModule{std::vector<std::size_t>(z.size(), 0), z.arrows,
                                                    std::vector<Matrix>(z.arrows.size())};
  auto h = all_homology(k, z, dim, f, true);
  return module_from(h[static_cast<std::size_t>(dim)], z);
}

Barcode pair_zigzag_barcode(const Complex& k, const PairZigzag& z, const PrimeField& f) {
  return barcode_impl(k, z, f, true);
}

Barcode pair_zigzag_barcode_serial(const Complex& k, const PairZigzag& z, const PrimeField& f) {
  return barcode_impl(k, z, f, false);
}

std::vector<int> induced_map_rank(const Complex& k, const IndexPair& a, const IndexPair& b, const PrimeField& f) {
  PairZigzag z;
  z.append(a);
  z.append(b);
  check_zigzag(k, z);
  auto h = all_homology(k, z, k.dim(), f, false);
  std::vector<int> out;
  for (auto& per_dim : h) {
    Matrix m = z.arrows[0] == Arrow::forward ? induced_matrix(per_dim[0], per_dim[1]) : induced_matrix(per_dim[1], per_dim[0]);
    out.push_back(static_cast<int>(rank(m, f)));
  }
  return out;
}

}  // namespace cmv
