#include "cmv/complex.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace cmv {

std::string Report::summary() const {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw PreconditionViolated("simplex must have at least one vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] < 0) throw PreconditionViolated("negative vertex id");
    if (i > 0 && vertices_[i - 1] >= vertices_[i])
      throw PreconditionViolated("simplex vertices must be strictly increasing: " + to_string(*this));
  }
}

bool face_leq(const Simplex& sigma, const Simplex& tau) {
  return std::includes(tau.vertices().begin(), tau.vertices().end(), sigma.vertices().begin(),
                       sigma.vertices().end());
}

std::string to_string(const Simplex& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.vertices().size(); ++i) os << (i ? "," : "") << s.vertices()[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

SimplexSet::SimplexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

SimplexSet::SimplexSet(std::size_t universe, std::span<const int> members) : SimplexSet(universe) {
  for (int m : members) insert(m);
}

std::size_t SimplexSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool SimplexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<int> SimplexSet::members() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

int SimplexSet::first() const {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k]) return static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k])));
  return -1;
}

SimplexSet& SimplexSet::operator|=(const SimplexSet& o) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
  return *this;
}

SimplexSet& SimplexSet::operator&=(const SimplexSet& o) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
  return *this;
}

SimplexSet& SimplexSet::operator-=(const SimplexSet& o) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
  return *this;
}

bool SimplexSet::is_subset_of(const SimplexSet& o) const {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~o.words_[k]) return false;
  return true;
}

bool SimplexSet::intersects(const SimplexSet& o) const {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & o.words_[k]) return true;
  return false;
}

bool SimplexSet::operator<(const SimplexSet& o) const {
  if (universe_ != o.universe_) return universe_ < o.universe_;
  return words_ < o.words_;
}

// ---------------------------------------------------------------------------

Complex Complex::from_simplices(const std::vector<std::vector<Vertex>>& generators) {
  std::set<std::vector<Vertex>> all;
  for (const auto& g : generators) {
    Simplex s(g);  // validates ordering
    const auto& v = s.vertices();
    if (v.size() > 20) throw PreconditionViolated("simplex dimension too large: " + to_string(s));
    const std::uint32_t n = static_cast<std::uint32_t>(v.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Vertex> face;
      for (std::uint32_t j = 0; j < n; ++j)
        if (mask & (1u << j)) face.push_back(v[j]);
      all.insert(std::move(face));
    }
  }

  Complex k;
  k.simplices_.reserve(all.size());
  for (const auto& v : all) {
    k.index_.emplace(v, static_cast<int>(k.simplices_.size()));
    k.simplices_.emplace_back(v);
    k.dim_ = std::max(k.dim_, static_cast<int>(v.size()) - 1);
    k.max_vertex_ = std::max(k.max_vertex_, v.back());
  }

  const std::size_t n = k.simplices_.size();
  k.facets_.resize(n);
  k.cofacets_.resize(n);
  k.faces_.resize(n);
  k.by_dim_.resize(static_cast<std::size_t>(k.dim_ + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = k.simplices_[i].vertices();
    k.by_dim_[v.size() - 1].push_back(static_cast<int>(i));
    if (v.size() > 1) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        std::vector<Vertex> f;
        f.reserve(v.size() - 1);
        for (std::size_t t = 0; t < v.size(); ++t)
          if (t != j) f.push_back(v[t]);
        int fi = k.index_.at(f);
        k.facets_[i].push_back(fi);
        k.cofacets_[static_cast<std::size_t>(fi)].push_back(static_cast<int>(i));
      }
    }
    const std::uint32_t m = static_cast<std::uint32_t>(v.size());
    for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
      std::vector<Vertex> f;
      for (std::uint32_t j = 0; j < m; ++j)
        if (mask & (1u << j)) f.push_back(v[j]);
      k.faces_[i].push_back(k.index_.at(f));
    }
    std::sort(k.faces_[i].begin(), k.faces_[i].end());
  }
  for (auto& c : k.cofacets_) std::sort(c.begin(), c.end());
  return k;
}

int Complex::index_of(const Simplex& s) const { return index_of(s.vertices()); }

int Complex::index_of(const std::vector<Vertex>& vertices) const {
  auto it = index_.find(vertices);
  return it == index_.end() ? -1 : it->second;
}

std::span<const int> Complex::of_dim(int d) const {
  if (d < 0 || d > dim_) return {};
  return by_dim_[static_cast<std::size_t>(d)];
}

SimplexSet Complex::full_set() const {
  SimplexSet s(size());
  for (std::size_t i = 0; i < size(); ++i) s.insert(static_cast<int>(i));
  return s;
}

SimplexSet Complex::set_of(const std::vector<Simplex>& simplices) const {
  SimplexSet s(size());
  for (const auto& x : simplices) {
    int i = index_of(x);
    if (i < 0) throw PreconditionViolated("simplex " + to_string(x) + " is not in the complex");
    s.insert(i);
  }
  return s;
}

SimplexSet Complex::closure(const SimplexSet& a) const {
  SimplexSet out = a;
  for (int i : a.members())
    for (int f : faces(i)) out.insert(f);
  return out;
}

SimplexSet Complex::closure_of(int i) const {
  SimplexSet out(size());
  out.insert(i);
  for (int f : faces(i)) out.insert(f);
  return out;
}

SimplexSet Complex::star(const SimplexSet& a) const {
  SimplexSet out = a;
  for (int d = 0; d <= dim_; ++d)
    for (int i : of_dim(d))
      if (out.contains(i))
        for (int c : cofacets(i)) out.insert(c);
  return out;
}

bool Complex::is_convex(const SimplexSet& a) const { return convex_closure(a).is_subset_of(a); }

std::vector<Simplex> Complex::to_simplices(const SimplexSet& a) const {
  std::vector<Simplex> out;
  for (int i : a.members()) out.push_back(simplex(i));
  return out;
}

Complex Complex::subcomplex(const SimplexSet& closed) const {
  if (!is_closed(closed)) throw PreconditionViolated("subcomplex requires a closed set");
  std::vector<std::vector<Vertex>> gens;
  for (int i : closed.members()) gens.push_back(simplex(i).vertices());
  return from_simplices(gens);
}

}  // namespace cmv
