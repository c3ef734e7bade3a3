#include "posetkit/poset.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace posetkit {

namespace {

void check_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw PosetError("poset needs at least one element");
  if (static_cast<int>(labels.size()) > kMaxElements)
    throw PosetError("poset exceeds " + std::to_string(kMaxElements) + " elements");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw PosetError("empty label");
    if (!seen.insert(l).second) throw PosetError("duplicate label: " + l);
  }
}

int resolve(const std::unordered_map<std::string, int>& idx, const std::string& l) {
  auto it = idx.find(l);
  if (it == idx.end()) throw PosetError("unknown label: " + l);
  return it->second;
}

}  // namespace

int Poset::index_of(const std::string& label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return -1;
}

void Poset::rebuild_down() {
  down_.assign(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (Mask m = up_[i]; m; m &= m - 1) down_[std::countr_zero(m)] |= Mask{1} << i;
}

void Poset::validate() const {
  for (int i = 0; i < n_; ++i)
    if (!leq(i, i)) throw PosetError("relation is not reflexive");
  for (int i = 0; i < n_; ++i)
    for (Mask m = up_[i] & ~(Mask{1} << i); m; m &= m - 1) {
      int j = std::countr_zero(m);
      if (leq(j, i))
        throw PosetError("cycle detected: " + labels_[i] + " and " + labels_[j] +
                         " violate antisymmetry");
      if ((up_[j] & ~up_[i]) != 0) throw PosetError("relation is not transitive");
    }
}

Poset Poset::from_leq_masks(std::vector<std::string> labels, std::vector<Mask> up) {
  check_labels(labels);
  Poset p;
  p.n_ = static_cast<int>(labels.size());
  p.labels_ = std::move(labels);
  p.up_ = std::move(up);
  if (static_cast<int>(p.up_.size()) != p.n_) throw PosetError("relation size mismatch");
  Mask universe = p.full_mask();
  for (Mask row : p.up_)
    if (row & ~universe) throw PosetError("relation references elements outside the carrier");
  p.validate();
  p.rebuild_down();
  return p;
}

Poset Poset::from_cover_indices(std::vector<std::string> labels,
                                const std::vector<std::pair<int, int>>& covers) {
  check_labels(labels);
  const int n = static_cast<int>(labels.size());
  std::vector<Mask> up(n);
  for (int i = 0; i < n; ++i) up[i] = Mask{1} << i;
  for (auto [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw PosetError("cover index out of range");
    if (a == b) throw PosetError("cover pair with equal endpoints: " + labels[a]);
    up[a] |= Mask{1} << b;
  }
  // Warshall closure on rows.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if ((up[i] >> k) & 1) up[i] |= up[k];
  return from_leq_masks(std::move(labels), std::move(up));
}

Poset Poset::from_covers(std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  check_labels(labels);
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) idx.emplace(labels[i], i);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(covers.size());
  for (const auto& [a, b] : covers) pairs.emplace_back(resolve(idx, a), resolve(idx, b));
  return from_cover_indices(std::move(labels), pairs);
}

Poset Poset::from_relation(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& pairs) {
  check_labels(labels);
  const int n = static_cast<int>(labels.size());
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx.emplace(labels[i], i);
  std::vector<Mask> up(n);
  for (int i = 0; i < n; ++i) up[i] = Mask{1} << i;
  for (const auto& [a, b] : pairs) up[resolve(idx, a)] |= Mask{1} << resolve(idx, b);
  return from_leq_masks(std::move(labels), std::move(up));  // validates as given
}

ElementSet Poset::upper_cone(ElementSet a) const {
  Mask r = full_mask();
  a.for_each([&](int i) { r &= up_[i]; });
  return {r};
}

ElementSet Poset::lower_cone(ElementSet a) const {
  Mask r = full_mask();
  a.for_each([&](int i) { r &= down_[i]; });
  return {r};
}

std::pair<ElementSet, ElementSet> Poset::punctured_cones(int a) const {
  Mask self = Mask{1} << a;
  return {{down_[a] & ~self}, {up_[a] & ~self}};
}

bool Poset::is_filter(ElementSet a) const {
  bool ok = true;
  a.for_each([&](int i) { ok = ok && (up_[i] & ~a.bits) == 0; });
  return ok;
}

std::vector<Filter> Poset::all_filters() const {
  if (n_ > 20) throw PosetError("filter enumeration limited to 20 elements");
  std::vector<Filter> out;
  const Mask end = Mask{1} << n_;
  for (Mask m = 0; m < end; ++m)
    if (is_filter({m})) out.push_back({{m}});
  return out;
}

Poset Poset::dual() const {
  Poset p;
  p.n_ = n_;
  p.labels_ = labels_;
  p.up_ = down_;
  p.down_ = up_;
  return p;
}

std::string Poset::set_to_string(ElementSet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int i) {
    if (!first) out += ",";
    out += labels_[i];
    first = false;
  });
  return out + "}";
}

OrderPredicates order_predicates(const Poset& p) {
  const int n = p.size();
  OrderPredicates r;
  r.join.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    if (p.down_mask(i) == (Mask{1} << i)) r.minimal.push_back(i);
    if (p.up_mask(i) == (Mask{1} << i)) r.maximal.push_back(i);
  }
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (x != y) {
        if (p.incomparable(x, y)) r.chain = false;
        else r.antichain = false;
      }
      ElementSet u = p.upper_cone_pair(x, y);
      if (u.empty()) {
        r.up_directed = false;
        r.join_semilattice = false;
        continue;
      }
      int least = -1;
      u.for_each([&](int m) {
        if (u.subset_of({p.up_mask(m)})) least = m;
      });
      if (least < 0) r.join_semilattice = false;
      r.join[static_cast<size_t>(x) * n + y] = least;
      r.join[static_cast<size_t>(y) * n + x] = least;
    }
  r.covers = cover_pairs(p);
  return r;
}

std::vector<std::pair<int, int>> cover_pairs(const Poset& p) {
  const int n = p.size();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    Mask strict = p.up_mask(i) & ~(Mask{1} << i);
    Mask reach = 0;  // above something strictly above i
    for (Mask m = strict; m; m &= m - 1) {
      int k = std::countr_zero(m);
      reach |= p.up_mask(k) & ~(Mask{1} << k);
    }
    for (Mask m = strict & ~reach; m; m &= m - 1) out.emplace_back(i, std::countr_zero(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poset filter_lattice(const Poset& p) {
  std::vector<Filter> filters = p.all_filters();
  const int m = static_cast<int>(filters.size());
  if (m > kMaxElements) throw PosetError("filter lattice exceeds the element limit");
  std::vector<std::string> labels(m);
  std::vector<Mask> up(m, 0);
  for (int i = 0; i < m; ++i) {
    labels[i] = p.set_to_string(filters[i].carrier);
    for (int j = 0; j < m; ++j)
      if (filters[i].carrier.subset_of(filters[j].carrier)) up[i] |= Mask{1} << j;
  }
  return Poset::from_leq_masks(std::move(labels), std::move(up));
}

}  // namespace posetkit
