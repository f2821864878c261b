#include "cmv/mvf.hpp"

#include <algorithm>
#include <map>

namespace cmv {

namespace {

std::string describe(const Complex& k, const std::vector<int>& part) {
  std::string s = "{";
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (i) s += ",";
    s += (part[i] >= 0 && static_cast<std::size_t>(part[i]) < k.size()) ? to_string(k.simplex(part[i]))
                                                                        : "#" + std::to_string(part[i]);
    if (i == 5 && part.size() > 7) {
      s += ",...";
      break;
    }
  }
  return s + "}";
}

}  // namespace

Report validate_field(const Complex& k, const std::vector<std::vector<int>>& parts) {
  Report report;
  std::vector<int> owner(k.size(), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = parts[p];
    if (part.empty()) {
      report.fail("multivector " + std::to_string(p) + " is empty");
      continue;
    }
    SimplexSet set(k.size());
    bool in_range = true;
    for (int s : part) {
      if (s < 0 || static_cast<std::size_t>(s) >= k.size()) {
        report.fail("multivector " + describe(k, part) + " references an unknown simplex");
        in_range = false;
        break;
      }
      if (owner[static_cast<std::size_t>(s)] >= 0)
        report.fail("simplex " + to_string(k.simplex(s)) + " lies in two multivectors");
      owner[static_cast<std::size_t>(s)] = static_cast<int>(p);
      set.insert(s);
    }
    if (in_range && !k.is_convex(set)) report.fail("multivector " + describe(k, part) + " is not convex");
  }
  for (std::size_t s = 0; s < k.size(); ++s)
    if (owner[s] < 0) report.fail("simplex " + to_string(k.simplex(static_cast<int>(s))) + " is not covered");
  return report;
}

BettiVector multivector_index(const Complex& k, const SimplexSet& v, const PrimeField& f) {
  SimplexSet cl = k.closure(v);
  return relative_homology(k, cl, cl - v, f);
}

MultivectorField::MultivectorField(ComplexPtr complex, std::vector<std::vector<int>> parts, PrimeField field)
    : complex_(std::move(complex)), field_(field) {
  const Complex& k = *complex_;
  Report report = validate_field(k, parts);
  if (!report) throw ValidationFailure("invalid multivector field: " + report.summary());

  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  parts_ = std::move(parts);
  slot_.assign(k.size(), 0);
  sets_.reserve(parts_.size());
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    sets_.emplace_back(k.size(), parts_[p]);
    for (int s : parts_[p]) slot_[static_cast<std::size_t>(s)] = p;
  }

  // Criticality per multivector; each iteration writes its own slot.
  std::vector<char> crit(parts_.size(), 0);
  const long long n = static_cast<long long>(parts_.size());
#pragma omp parallel for schedule(dynamic) if (n > 64)
  for (long long p = 0; p < n; ++p) {
    const auto& part = parts_[static_cast<std::size_t>(p)];
    // A singleton {sigma} has index concentrated in dim(sigma).
    crit[static_cast<std::size_t>(p)] =
        part.size() == 1 ? 1 : !multivector_index(k, sets_[static_cast<std::size_t>(p)], field_).is_zero();
  }
  critical_.assign(crit.begin(), crit.end());
}

MultivectorField MultivectorField::singletons(ComplexPtr complex, PrimeField field) {
  std::vector<std::vector<int>> parts(complex->size());
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = {static_cast<int>(i)};
  return MultivectorField(std::move(complex), std::move(parts), field);
}

MultivectorField MultivectorField::whole(ComplexPtr complex, PrimeField field) {
  std::vector<int> all(complex->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<int>> parts;
  if (!all.empty()) parts.push_back(std::move(all));
  return MultivectorField(std::move(complex), std::move(parts), field);
}

std::vector<MultivectorId> MultivectorField::ids() const {
  std::vector<MultivectorId> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.front());
  return out;
}

std::size_t MultivectorField::slot_of(MultivectorId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= slot_.size()) throw PreconditionViolated("unknown multivector id");
  std::size_t s = slot_[static_cast<std::size_t>(id)];
  if (parts_[s].front() != id) throw PreconditionViolated("simplex " + std::to_string(id) + " is not a multivector id");
  return s;
}

bool MultivectorField::is_multivector(const SimplexSet& s) const {
  int first = s.first();
  return first >= 0 && multivector_of(first) == s;
}

SimplexSet MultivectorField::fmap(int simplex) const {
  SimplexSet out = multivector_of(simplex);
  out.insert(simplex);
  for (int f : complex_->faces(simplex)) out.insert(f);
  return out;
}

SimplexSet MultivectorField::fmap(const SimplexSet& a) const {
  SimplexSet out = complex_->closure(a);
  std::vector<bool> seen(parts_.size(), false);
  for (int s : a.members()) {
    std::size_t p = slot_[static_cast<std::size_t>(s)];
    if (!seen[p]) {
      seen[p] = true;
      out |= sets_[p];
    }
  }
  return out;
}

bool MultivectorField::operator==(const MultivectorField& o) const {
  return complex_->simplices() == o.complex_->simplices() && parts_ == o.parts_;
}

// ---------------------------------------------------------------------------

AtomicRearrangement classify_rearrangement(const MultivectorField& from, const MultivectorField& to) {
  if (from.complex().simplices() != to.complex().simplices())
    throw PreconditionViolated("fields live on different complexes");
  const auto& a = from.parts();
  const auto& b = to.parts();
  std::vector<std::vector<int>> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  const std::size_t n = from.complex().size();
  auto as_set = [n](const std::vector<int>& p) { return SimplexSet(n, p); };
  if (only_a.size() == 1 && only_b.size() == 2)
    return {RearrangementKind::refinement, as_set(only_a[0]), as_set(only_b[0]), as_set(only_b[1])};
  if (only_a.size() == 2 && only_b.size() == 1)
    return {RearrangementKind::coarsening, as_set(only_b[0]), as_set(only_a[0]), as_set(only_a[1])};
  throw NotAtomic("fields differ by " + std::to_string(only_a.size()) + " removed and " +
                  std::to_string(only_b.size()) + " added multivectors; not an atomic rearrangement");
}

MultivectorField split(const MultivectorField& v, MultivectorId id, const SimplexSet& part) {
  const SimplexSet& whole = v.members_set(id);
  if (part.empty() || !part.is_subset_of(whole) || part == whole)
    throw PreconditionViolated("split part must be a proper non-empty subset of the multivector");
  std::vector<std::vector<int>> parts;
  for (const auto& p : v.parts())
    if (p.front() != id) parts.push_back(p);
  parts.push_back(part.members());
  parts.push_back((whole - part).members());
  return MultivectorField(v.complex_ptr(), std::move(parts), v.field());
}

MultivectorField merge(const MultivectorField& v, MultivectorId a, MultivectorId b) {
  if (a == b) throw PreconditionViolated("merge requires two distinct multivectors");
  SimplexSet u = v.members_set(a) | v.members_set(b);
  std::vector<std::vector<int>> parts;
  for (const auto& p : v.parts())
    if (p.front() != a && p.front() != b) parts.push_back(p);
  parts.push_back(u.members());
  return MultivectorField(v.complex_ptr(), std::move(parts), v.field());
}

std::vector<MultivectorField> refinement_path(const MultivectorField& v) {
  std::vector<MultivectorField> path{v};
  const Complex& k = v.complex();
  while (true) {
    const MultivectorField& cur = path.back();
    const std::vector<int>* target = nullptr;
    for (const auto& p : cur.parts())
      if (p.size() > 1) {
        target = &p;
        break;
      }
    if (!target) break;
    const SimplexSet& members = cur.members_set(target->front());
    int maximal = -1;
    for (int s : *target) {
      bool is_max = true;
      for (int c : k.cofacets(s))
        if (members.contains(c)) {
          is_max = false;
          break;
        }
      // A simplex with no coface in V among its cofacets has none at all in V
      // by convexity of V.
      if (is_max) {
        maximal = s;
        break;
      }
    }
    SimplexSet single(k.size());
    single.insert(maximal);
    path.push_back(split(cur, target->front(), single));
  }
  return path;
}

std::vector<MultivectorField> rearrangement_path(const MultivectorField& from, const MultivectorField& to) {
  auto forward = refinement_path(from);
  auto backward = refinement_path(to);
  forward.insert(forward.end(), backward.rbegin() + 1, backward.rend());
  return forward;
}

MultivectorField intersect_fields(const MultivectorField& a, const MultivectorField& b) {
  if (a.complex().simplices() != b.complex().simplices())
    throw PreconditionViolated("fields live on different complexes");
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (std::size_t s = 0; s < a.complex().size(); ++s) {
    int i = static_cast<int>(s);
    groups[{a.id_of(i), b.id_of(i)}].push_back(i);
  }
  std::vector<std::vector<int>> parts;
  for (auto& [key, members] : groups) parts.push_back(std::move(members));
  return MultivectorField(a.complex_ptr(), std::move(parts), a.field());
}

}  // namespace cmv
