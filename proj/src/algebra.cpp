#include "cmv/algebra.hpp"

#include <algorithm>
#include <sstream>

#include <omp.h>

namespace cmv {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw PreconditionViolated("field characteristic must be prime, got " + std::to_string(p));
  if (p > (1u << 30)) throw PreconditionViolated("field characteristic too large");
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw PreconditionViolated("inverse of zero");
  // a^(p-2)
  std::uint64_t result = 1, base = a % p_;
  std::uint32_t e = p_ - 2;
  while (e) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

Scalar PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& f) {
  if (a.cols() != b.rows()) throw PreconditionViolated("matrix dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      Scalar x = a.at(i, t);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(t, j)));
    }
  return c;
}

namespace {

// Below this many trailing entries the elimination stays single-threaded.
constexpr std::size_t kParallelThreshold = 1 << 14;

}  // namespace

std::size_t rank(Matrix m, const PrimeField& f) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const Scalar inv = f.inv(m.at(r, c));
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);

    const Scalar* pivot_row = m.row(r);
    const long long first = static_cast<long long>(r + 1), last = static_cast<long long>(rows);
    const bool wide = (rows - r) * (cols - c) >= kParallelThreshold;
#pragma omp parallel for schedule(static) if (wide)
    for (long long i = first; i < last; ++i) {
      Scalar* row = m.row(static_cast<std::size_t>(i));
      const Scalar factor = row[c];
      if (!factor) continue;
      for (std::size_t j = c; j < cols; ++j) row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
    }
    ++r;
  }
  return r;
}

std::size_t rank_serial(const Matrix& m, const PrimeField& f) {
  // Column reduction: each column is reduced against earlier pivots, keyed by
  // the lowest nonzero row.
  std::vector<std::vector<Scalar>> kept;
  std::vector<long> pivot_owner(m.rows(), -1);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::vector<Scalar> col(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m.at(r, c);
    while (true) {
      long low = -1;
      for (long r = static_cast<long>(m.rows()) - 1; r >= 0; --r)
        if (col[static_cast<std::size_t>(r)]) {
          low = r;
          break;
        }
      if (low < 0) break;
      long owner = pivot_owner[static_cast<std::size_t>(low)];
      if (owner < 0) {
        pivot_owner[static_cast<std::size_t>(low)] = static_cast<long>(kept.size());
        kept.push_back(std::move(col));
        break;
      }
      const auto& other = kept[static_cast<std::size_t>(owner)];
      Scalar factor = f.mul(col[static_cast<std::size_t>(low)], f.inv(other[static_cast<std::size_t>(low)]));
      for (std::size_t r = 0; r < m.rows(); ++r) col[r] = f.sub(col[r], f.mul(factor, other[r]));
    }
  }
  return kept.size();
}

std::vector<std::vector<Scalar>> null_space(const Matrix& m, const PrimeField& f) {
  Matrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<long> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
    const Scalar inv = f.inv(a.at(r, c));
    for (std::size_t j = 0; j < cols; ++j) a.at(r, j) = f.mul(a.at(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      const Scalar factor = a.at(i, c);
      for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(r, j)));
    }
    pivot_col_of_row.push_back(static_cast<long>(c));
    is_pivot[c] = true;
    ++r;
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
      v[static_cast<std::size_t>(pivot_col_of_row[i])] = f.neg(a.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix solve(const Matrix& a, const Matrix& b, const PrimeField& f) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw PreconditionViolated("solve: dimension mismatch");
  Matrix l = a, x = b;
  const std::size_t m = x.cols();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && l.at(piv, c) == 0) ++piv;
    if (piv == n) throw PreconditionViolated("solve: singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(l.at(piv, j), l.at(c, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x.at(piv, j), x.at(c, j));
    }
    const Scalar inv = f.inv(l.at(c, c));
    for (std::size_t j = 0; j < n; ++j) l.at(c, j) = f.mul(l.at(c, j), inv);
    for (std::size_t j = 0; j < m; ++j) x.at(c, j) = f.mul(x.at(c, j), inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || l.at(i, c) == 0) continue;
      const Scalar factor = l.at(i, c);
      for (std::size_t j = 0; j < n; ++j) l.at(i, j) = f.sub(l.at(i, j), f.mul(factor, l.at(c, j)));
      for (std::size_t j = 0; j < m; ++j) x.at(i, j) = f.sub(x.at(i, j), f.mul(factor, x.at(c, j)));
    }
  }
  return x;
}

bool BettiVector::is_zero() const {
  return std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 0; });
}

int BettiVector::total() const {
  int t = 0;
  for (int r : ranks) t += r;
  return t;
}

std::string to_string(const BettiVector& b) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < b.ranks.size(); ++i) os << (i ? "," : "") << b.ranks[i];
  os << ')';
  return os.str();
}

Matrix boundary_matrix(const Complex& k, const SimplexSet& chains, int d, const PrimeField& f,
                       bool augment) {
  std::vector<int> cols;
  for (int i : k.of_dim(d))
    if (chains.contains(i)) cols.push_back(i);
  if (d == 0) {
    Matrix m(augment ? 1 : 0, cols.size());
    if (augment)
      for (std::size_t c = 0; c < cols.size(); ++c) m.at(0, c) = 1;
    return m;
  }
  std::vector<int> row_of(k.size(), -1);
  std::size_t nrows = 0;
  for (int i : k.of_dim(d - 1))
    if (chains.contains(i)) row_of[static_cast<std::size_t>(i)] = static_cast<int>(nrows++);
  Matrix m(nrows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto facets = k.facets(cols[c]);
    for (std::size_t j = 0; j < facets.size(); ++j) {
      int r = row_of[static_cast<std::size_t>(facets[j])];
      if (r < 0) continue;
      m.at(static_cast<std::size_t>(r), c) = (j % 2 == 0) ? 1 : f.neg(1);
    }
  }
  return m;
}

namespace {

BettiVector chain_betti(const Complex& k, const SimplexSet& chains, int max_dim, const PrimeField& f,
                        bool augment) {
  BettiVector out;
  out.ranks.assign(static_cast<std::size_t>(std::max(max_dim + 1, 0)), 0);
  std::vector<std::size_t> ranks(static_cast<std::size_t>(max_dim + 2), 0);
  for (int d = 0; d <= max_dim + 1; ++d) {
    if (d > k.dim()) break;
    ranks[static_cast<std::size_t>(d)] = rank(boundary_matrix(k, chains, d, f, augment), f);
  }
  for (int d = 0; d <= max_dim; ++d) {
    long long n = 0;
    for (int i : k.of_dim(d))
      if (chains.contains(i)) ++n;
    out.ranks[static_cast<std::size_t>(d)] = static_cast<int>(
        n - static_cast<long long>(ranks[static_cast<std::size_t>(d)]) -
        static_cast<long long>(ranks[static_cast<std::size_t>(d + 1)]));
  }
  return out;
}

}  // namespace

BettiVector relative_homology(const Complex& k, const SimplexSet& p, const SimplexSet& e,
                              const PrimeField& f) {
  if (!k.is_closed(p)) throw PreconditionViolated("relative_homology: P is not closed");
  if (!k.is_closed(e)) throw PreconditionViolated("relative_homology: E is not closed");
  if (!e.is_subset_of(p)) throw PreconditionViolated("relative_homology: E is not a subset of P");
  return chain_betti(k, p - e, k.dim(), f, false);
}

BettiVector reduced_homology(const Complex& k, const SimplexSet& closed, int max_dim, const PrimeField& f) {
  if (!k.is_closed(closed)) throw PreconditionViolated("reduced_homology: set is not closed");
  return chain_betti(k, closed, max_dim, f, true);
}

BettiVector reduced_homology(const Complex& k, const PrimeField& f) {
  return reduced_homology(k, k.full_set(), k.dim(), f);
}

ConeEmbedding::ConeEmbedding(const Complex& base, std::optional<Vertex> apex)
    : apex_(apex.value_or(base.max_vertex() + 1)) {
  if (apex_ < 0) throw PreconditionViolated("cone apex must be a non-negative vertex id");
  if (base.index_of(std::vector<Vertex>{apex_}) >= 0)
    throw PreconditionViolated("cone apex " + std::to_string(apex_) + " collides with an existing vertex");
  auto with_apex = [&](const std::vector<Vertex>& v) {
    std::vector<Vertex> c = v;
    c.insert(std::upper_bound(c.begin(), c.end(), apex_), apex_);
    return c;
  };
  std::vector<std::vector<Vertex>> gens{{apex_}};
  for (const auto& s : base.simplices()) gens.push_back(with_apex(s.vertices()));
  universe_ = Complex::from_simplices(gens);
  base_.resize(base.size());
  coned_.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto& v = base.simplex(static_cast<int>(i)).vertices();
    base_[i] = universe_.index_of(v);
    coned_[i] = universe_.index_of(with_apex(v));
  }
  apex_index_ = universe_.index_of(std::vector<Vertex>{apex_});
}

SimplexSet ConeEmbedding::embed(const SimplexSet& p, const SimplexSet& e) const {
  SimplexSet out(universe_.size());
  out.insert(apex_index_);
  for (int i : p.members()) out.insert(base_index(i));
  for (int i : e.members()) out.insert(coned_index(i));
  return out;
}

ConedPair cone_pair(const Complex& k, const SimplexSet& p, const SimplexSet& e, std::optional<Vertex> apex) {
  if (!k.is_closed(p) || !k.is_closed(e) || !e.is_subset_of(p))
    throw PreconditionViolated("cone_pair requires closed E ⊆ P");
  ConeEmbedding emb(k, apex);
  return ConedPair{emb.universe().subcomplex(emb.embed(p, e)), emb.apex()};
}

}  // namespace cmv
