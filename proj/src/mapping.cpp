#include "posetkit/mapping.hpp"

#include <algorithm>
#include <numeric>

namespace posetkit {

namespace {

void require_self_map(MapRef f, const char* what) {
  if (!f.self_map())
    throw PosetError(std::string(what) + " is defined for self-maps only");
}

std::vector<int> linear_extension(const Poset& p) {
  std::vector<int> ord(p.size());
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
    int da = std::popcount(p.down_mask(a)), db = std::popcount(p.down_mask(b));
    return da != db ? da < db : a < b;
  });
  return ord;
}

}  // namespace

PosetMap::PosetMap(PosetPtr dom, PosetPtr cod, std::vector<int> image)
    : dom_(std::move(dom)), cod_(std::move(cod)), img_(std::move(image)) {
  if (!dom_ || !cod_) throw PosetError("map needs domain and codomain");
  if (static_cast<int>(img_.size()) != dom_->size())
    throw PosetError("image table length must equal the domain size");
  for (int v : img_)
    if (v < 0 || v >= cod_->size()) throw PosetError("image value out of range");
}

PosetMap PosetMap::self(PosetPtr p, std::vector<int> image) {
  PosetPtr q = p;
  return PosetMap(std::move(p), std::move(q), std::move(image));
}

ElementSet PosetMap::image_of(ElementSet s) const {
  return image_of_set(ref(), s);
}

std::string PosetMap::to_string() const {
  std::string out;
  for (int x = 0; x < dom().size(); ++x) {
    if (x) out += " ";
    out += dom().label(x) + "->" + cod().label(img_[x]);
  }
  return out;
}

PosetMap identity_map(PosetPtr p) {
  std::vector<int> img(p->size());
  std::iota(img.begin(), img.end(), 0);
  return PosetMap::self(std::move(p), std::move(img));
}

PosetMap constant_map(PosetPtr p, int a) {
  if (a < 0 || a >= p->size()) throw PosetError("constant value out of range");
  std::vector<int> img(p->size(), a);
  return PosetMap::self(std::move(p), std::move(img));
}

PosetMap f_ab_map(PosetPtr p, int a, int b) {
  if (a == b) throw PosetError("f_ab requires two distinct elements");
  const int n = p->size();
  if (a < 0 || a >= n || b < 0 || b >= n) throw PosetError("element out of range");
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  img[a] = b;
  return PosetMap::self(std::move(p), std::move(img));
}

ElementSet image_of_set(MapRef f, ElementSet s) {
  ElementSet out;
  s.for_each([&](int x) { out.add(f.img[x]); });
  return out;
}

std::optional<MapWitness> check_monotone(MapRef f) {
  const int n = f.dom->size();
  for (int x = 0; x < n; ++x)
    for (Mask m = f.dom->up_mask(x); m; m &= m - 1) {
      int y = std::countr_zero(m);
      if (!f.cod->leq(f.img[x], f.img[y]))
        return MapWitness{"x<=y but f(x)<=f(y) fails", x, y, {}, {}, false};
    }
  return std::nullopt;
}

std::optional<MapWitness> check_strictly_monotone(MapRef f) {
  const int n = f.dom->size();
  for (int x = 0; x < n; ++x)
    for (Mask m = f.dom->up_mask(x) & ~(Mask{1} << x); m; m &= m - 1) {
      int y = std::countr_zero(m);
      if (!f.cod->lt(f.img[x], f.img[y]))
        return MapWitness{"x<y but f(x)<f(y) fails", x, y, {}, {}, false};
    }
  return std::nullopt;
}

namespace {

// Shared core of the three cone-preservation checks. U(x,y) is symmetric,
// so unordered pairs (with the diagonal when `diagonal`) cover the paper's
// ordered quantifier.
enum class ConeMode { All, Distinct, DistinctImages };

std::optional<MapWitness> check_cone_preservation(MapRef f, ConeMode mode, const char* clause) {
  require_self_map(f, "cone preservation");
  const Poset& p = *f.dom;
  const int n = p.size();
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (mode != ConeMode::All && x == y) continue;
      if (mode == ConeMode::DistinctImages && f.img[x] == f.img[y]) continue;
      ElementSet cone = p.upper_cone_pair(x, y);
      ElementSet lhs = image_of_set(f, cone);
      ElementSet rhs = f.cod->upper_cone_pair(f.img[x], f.img[y]);
      if (!(lhs == rhs)) return MapWitness{clause, x, y, lhs, rhs, true};
    }
  return std::nullopt;
}

}  // namespace

std::optional<MapWitness> check_ucp(MapRef f) {
  return check_cone_preservation(f, ConeMode::All, "f(U(x,y)) != U(f(x),f(y))");
}

std::optional<MapWitness> check_strictly_ucp(MapRef f) {
  return check_cone_preservation(f, ConeMode::Distinct,
                                 "f(U(x,y)) != U(f(x),f(y)) with x != y");
}

std::optional<MapWitness> check_strongly_ucp(MapRef f) {
  return check_cone_preservation(f, ConeMode::DistinctImages,
                                 "f(U(x,y)) != U(f(x),f(y)) with f(x) != f(y)");
}

std::optional<MapWitness> check_strongly_monotone(MapRef f) {
  if (auto w = check_monotone(f)) return w;
  const int n = f.dom->size();
  const int m = f.cod->size();
  std::vector<Mask> pre(m, 0), reach(m, 0);
  for (int x = 0; x < n; ++x) pre[f.img[x]] |= Mask{1} << x;
  for (int v = 0; v < m; ++v)
    for (Mask mm = pre[v]; mm; mm &= mm - 1) reach[v] |= f.dom->up_mask(std::countr_zero(mm));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.cod->leq(f.img[a], f.img[b]) && (reach[f.img[a]] & pre[f.img[b]]) == 0)
        return MapWitness{"f(a)<=f(b) but no a'<=b' with f(a')=f(a), f(b')=f(b)",
                          a, b, {}, {}, false};
  return std::nullopt;
}

std::optional<MapWitness> check_join_homomorphism(MapRef f) {
  require_self_map(f, "join homomorphism");
  const Poset& p = *f.dom;
  OrderPredicates pr = order_predicates(p);
  if (!pr.join_semilattice) throw PosetError("domain is not a join-semilattice");
  const int n = p.size();
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      int j = pr.join[static_cast<size_t>(x) * n + y];
      int fj = pr.join[static_cast<size_t>(f.img[x]) * n + f.img[y]];
      if (f.img[j] != fj)
        return MapWitness{"f(x v y) != f(x) v f(y)", x, y,
                          ElementSet::single(f.img[j]), ElementSet::single(fj), true};
    }
  return std::nullopt;
}

std::optional<MapWitness> check_meet_homomorphism(MapRef f) {
  require_self_map(f, "meet homomorphism");
  Poset d = f.dom->dual();
  MapRef g{&d, &d, f.img};
  auto w = check_join_homomorphism(g);
  if (w) w->clause = "f(x ^ y) != f(x) ^ f(y)";
  return w;
}

bool is_monotone(MapRef f) { return !check_monotone(f); }
bool is_strictly_monotone(MapRef f) { return !check_strictly_monotone(f); }
bool is_ucp(MapRef f) { return !check_ucp(f); }
bool is_strictly_ucp(MapRef f) { return !check_strictly_ucp(f); }
bool is_strongly_ucp(MapRef f) { return !check_strongly_ucp(f); }
bool is_strongly_monotone(MapRef f) { return !check_strongly_monotone(f); }
bool is_join_homomorphism(MapRef f) { return !check_join_homomorphism(f); }
bool is_meet_homomorphism(MapRef f) { return !check_meet_homomorphism(f); }

bool preserves_principal_filters(MapRef f) {
  const int n = f.dom->size();
  for (int x = 0; x < n; ++x) {
    ElementSet img = image_of_set(f, {f.dom->up_mask(x)});
    if (!(img == ElementSet{f.cod->up_mask(f.img[x])})) return false;
  }
  return true;
}

bool is_injective(MapRef f) {
  Mask seen = 0;
  for (int x = 0; x < f.dom->size(); ++x) {
    Mask bit = Mask{1} << f.img[x];
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

Equivalence::Equivalence(std::vector<int> class_of) : cls_(std::move(class_of)) {
  if (cls_.empty()) throw PosetError("partition of an empty carrier");
  // renumber by first occurrence
  std::vector<int> remap;
  for (int& c : cls_) {
    if (c < 0) throw PosetError("negative class id");
    auto it = std::find(remap.begin(), remap.end(), c);
    if (it == remap.end()) {
      remap.push_back(c);
      c = static_cast<int>(remap.size()) - 1;
    } else {
      c = static_cast<int>(it - remap.begin());
    }
  }
  k_ = static_cast<int>(remap.size());
  masks_.assign(k_, 0);
  for (int x = 0; x < size(); ++x) masks_[cls_[x]] |= Mask{1} << x;
}

Equivalence Equivalence::identity(int n) {
  std::vector<int> c(n);
  std::iota(c.begin(), c.end(), 0);
  return Equivalence(std::move(c));
}

Equivalence Equivalence::single_class(int n) { return Equivalence(std::vector<int>(n, 0)); }

Equivalence Equivalence::from_classes(int n, const std::vector<std::vector<int>>& groups) {
  std::vector<int> c(n, -1);
  int id = 0;
  for (const auto& g : groups) {
    for (int x : g) {
      if (x < 0 || x >= n) throw PosetError("partition member out of range");
      if (c[x] != -1) throw PosetError("element appears in two classes");
      c[x] = id;
    }
    ++id;
  }
  for (int x = 0; x < n; ++x)
    if (c[x] == -1) throw PosetError("partition does not cover the carrier");
  return Equivalence(std::move(c));
}

Equivalence kernel(MapRef f) {
  return Equivalence(std::vector<int>(f.img, f.img + f.dom->size()));
}

void for_each_partition(int n, const std::function<bool(const Equivalence&)>& visit) {
  std::vector<int> rgs(n, 0);
  bool stop = false;
  auto rec = [&](auto&& self, int pos, int maxc) -> void {
    if (stop) return;
    if (pos == n) {
      stop = !visit(Equivalence(rgs));
      return;
    }
    for (int c = 0; c <= maxc + 1 && !stop; ++c) {
      rgs[pos] = c;
      self(self, pos + 1, std::max(maxc, c));
    }
  };
  rec(rec, 0, -1);
}

const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::All: return "all";
    case MapClass::Monotone: return "monotone";
    case MapClass::StrictlyMonotone: return "strictly-monotone";
    case MapClass::Ucp: return "ucp";
    case MapClass::StrictlyUcp: return "strictly-ucp";
    case MapClass::StronglyUcp: return "strongly-ucp";
    case MapClass::StronglyMonotone: return "strongly-monotone";
  }
  return "?";
}

std::optional<MapClass> map_class_from_string(const std::string& name) {
  for (MapClass c : {MapClass::All, MapClass::Monotone, MapClass::StrictlyMonotone,
                     MapClass::Ucp, MapClass::StrictlyUcp, MapClass::StronglyUcp,
                     MapClass::StronglyMonotone})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

bool satisfies(MapRef f, MapClass c) {
  switch (c) {
    case MapClass::All: return true;
    case MapClass::Monotone: return is_monotone(f);
    case MapClass::StrictlyMonotone: return is_strictly_monotone(f);
    case MapClass::Ucp: return is_ucp(f);
    case MapClass::StrictlyUcp: return is_strictly_ucp(f);
    case MapClass::StronglyUcp: return is_strongly_ucp(f);
    case MapClass::StronglyMonotone: return is_strongly_monotone(f);
  }
  return false;
}

namespace {

struct MapEnumerator {
  const Poset& p;
  PosetPtr pp;
  MapClass cls;
  const std::function<bool(const PosetMap&)>& visit;
  std::vector<int> ext;
  std::vector<int> img;
  Mask assigned = 0;
  bool stop = false;

  MapEnumerator(const PosetPtr& poset, MapClass c,
                const std::function<bool(const PosetMap&)>& v)
      : p(*poset), pp(poset), cls(c), visit(v), ext(linear_extension(p)),
        img(p.size(), -1) {}

  // Pairwise condition on decided pairs only; sound for every class
  // (UCP implies monotone, and a partial cone-image overshoot can never
  // be repaired by later assignments).
  bool violates(int e, int v) const {
    switch (cls) {
      case MapClass::All:
        return false;
      case MapClass::Monotone:
      case MapClass::Ucp:
      case MapClass::StronglyMonotone:
        for (Mask m = p.down_mask(e) & assigned; m; m &= m - 1) {
          int d = std::countr_zero(m);
          if (!p.leq(img[d], v)) return true;
        }
        return false;
      case MapClass::StrictlyMonotone:
        for (Mask m = p.down_mask(e) & assigned & ~(Mask{1} << e); m; m &= m - 1) {
          int d = std::countr_zero(m);
          if (!p.lt(img[d], v)) return true;
        }
        return false;
      case MapClass::StrictlyUcp:
      case MapClass::StronglyUcp:
        return partial_cone_violation(e, v);
    }
    return false;
  }

  bool partial_cone_violation(int e, int v) const {
    Mask with_e = assigned | (Mask{1} << e);
    for (Mask mx = with_e; mx; mx &= mx - 1) {
      int x = std::countr_zero(mx);
      int fx = x == e ? v : img[x];
      for (Mask my = mx & (mx - 1); my; my &= my - 1) {
        int y = std::countr_zero(my);
        int fy = y == e ? v : img[y];
        if (cls == MapClass::StronglyUcp && fx == fy) continue;
        Mask cone = p.up_mask(x) & p.up_mask(y);
        Mask target = p.up_mask(fx) & p.up_mask(fy);
        for (Mask mz = cone & with_e; mz; mz &= mz - 1) {
          int z = std::countr_zero(mz);
          int fz = z == e ? v : img[z];
          if (!((target >> fz) & 1)) return true;
        }
      }
    }
    return false;
  }

  bool leaf_accept() const {
    MapRef f{&p, &p, img.data()};
    switch (cls) {
      case MapClass::All:
      case MapClass::Monotone:
      case MapClass::StrictlyMonotone:
        return true;  // pruning is already the full pairwise definition
      case MapClass::Ucp:
        return is_ucp(f);
      case MapClass::StrictlyUcp:
        return is_strictly_ucp(f);
      case MapClass::StronglyUcp:
        return is_strongly_ucp(f);
      case MapClass::StronglyMonotone:
        return is_strongly_monotone(f);
    }
    return false;
  }

  void rec(size_t depth) {
    if (stop) return;
    if (depth == ext.size()) {
      if (leaf_accept() && !visit(PosetMap::self(pp, img))) stop = true;
      return;
    }
    int e = ext[depth];
    for (int v = 0; v < p.size() && !stop; ++v) {
      if (violates(e, v)) continue;
      img[e] = v;
      assigned |= Mask{1} << e;
      rec(depth + 1);
      assigned &= ~(Mask{1} << e);
      img[e] = -1;
    }
  }
};

}  // namespace

void enumerate_maps(const PosetPtr& p, MapClass c,
                    const std::function<bool(const PosetMap&)>& visit) {
  MapEnumerator en(p, c, visit);
  en.rec(0);
}

std::vector<PosetMap> maps_in_class(const PosetPtr& p, MapClass c) {
  std::vector<PosetMap> out;
  enumerate_maps(p, c, [&](const PosetMap& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

}  // namespace posetkit
