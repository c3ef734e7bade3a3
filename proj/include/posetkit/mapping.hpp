#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "posetkit/poset.hpp"

// Self-maps of posets and the preservation classes they may belong to:
// monotone, strictly monotone, the three cone-preserving variants, and
// strong monotonicity. Cone-preserving checks need dom = cod; the
// monotonicity family also works across two posets (quotient projections).

namespace posetkit {

using PosetPtr = std::shared_ptr<const Poset>;

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

/// Non-owning view used by enumeration and verifier hot loops.
struct MapRef {
  const Poset* dom;
  const Poset* cod;
  const int* img;

  int operator()(int x) const { return img[x]; }
  bool self_map() const { return dom == cod || dom->same_order(*cod); }
};

class PosetMap {
 public:
  PosetMap(PosetPtr dom, PosetPtr cod, std::vector<int> image);
  static PosetMap self(PosetPtr p, std::vector<int> image);

  int operator()(int x) const { return img_[x]; }
  const Poset& dom() const { return *dom_; }
  const Poset& cod() const { return *cod_; }
  const PosetPtr& dom_ptr() const { return dom_; }
  const PosetPtr& cod_ptr() const { return cod_; }
  const std::vector<int>& image_table() const { return img_; }
  bool is_self_map() const { return ref().self_map(); }

  ElementSet image_of(ElementSet s) const;
  ElementSet image_set() const { return image_of(ElementSet::full(dom().size())); }

  MapRef ref() const { return {dom_.get(), cod_.get(), img_.data()}; }

  /// "a->c b->c d->1"
  std::string to_string() const;

  friend bool operator==(const PosetMap& a, const PosetMap& b) {
    return a.img_ == b.img_ && a.dom().same_order(b.dom()) && a.cod().same_order(b.cod());
  }

 private:
  PosetPtr dom_, cod_;
  std::vector<int> img_;
};

PosetMap identity_map(PosetPtr p);
PosetMap constant_map(PosetPtr p, int a);
/// Sends a to b, fixes everything else. Requires a != b.
PosetMap f_ab_map(PosetPtr p, int a, int b);

/// Why a predicate failed: the offending pair and, for cone equations,
/// the two differing sets.
struct MapWitness {
  std::string clause;
  int x = -1, y = -1;
  ElementSet lhs{}, rhs{};
  bool has_sets = false;
};

std::optional<MapWitness> check_monotone(MapRef f);
std::optional<MapWitness> check_strictly_monotone(MapRef f);
std::optional<MapWitness> check_ucp(MapRef f);
std::optional<MapWitness> check_strictly_ucp(MapRef f);
std::optional<MapWitness> check_strongly_ucp(MapRef f);
std::optional<MapWitness> check_strongly_monotone(MapRef f);
/// Requires dom (and cod) to be join-semilattices.
std::optional<MapWitness> check_join_homomorphism(MapRef f);
std::optional<MapWitness> check_meet_homomorphism(MapRef f);

bool is_monotone(MapRef f);
bool is_strictly_monotone(MapRef f);
bool is_ucp(MapRef f);
bool is_strictly_ucp(MapRef f);
bool is_strongly_ucp(MapRef f);
bool is_strongly_monotone(MapRef f);
bool is_join_homomorphism(MapRef f);
bool is_meet_homomorphism(MapRef f);

inline bool is_monotone(const PosetMap& f) { return is_monotone(f.ref()); }
inline bool is_strictly_monotone(const PosetMap& f) { return is_strictly_monotone(f.ref()); }
inline bool is_ucp(const PosetMap& f) { return is_ucp(f.ref()); }
inline bool is_strictly_ucp(const PosetMap& f) { return is_strictly_ucp(f.ref()); }
inline bool is_strongly_ucp(const PosetMap& f) { return is_strongly_ucp(f.ref()); }
inline bool is_strongly_monotone(const PosetMap& f) { return is_strongly_monotone(f.ref()); }
inline bool is_join_homomorphism(const PosetMap& f) { return is_join_homomorphism(f.ref()); }
inline bool is_meet_homomorphism(const PosetMap& f) { return is_meet_homomorphism(f.ref()); }

bool preserves_principal_filters(MapRef f);
inline bool preserves_principal_filters(const PosetMap& f) {
  return preserves_principal_filters(f.ref());
}
bool is_injective(MapRef f);
inline bool is_injective(const PosetMap& f) { return is_injective(f.ref()); }

ElementSet image_of_set(MapRef f, ElementSet s);

/// Partition of {0..n-1}; class ids are contiguous from 0 in order of
/// first occurrence.
class Equivalence {
 public:
  explicit Equivalence(std::vector<int> class_of);
  static Equivalence identity(int n);
  static Equivalence single_class(int n);
  /// Groups must cover {0..n-1} exactly once.
  static Equivalence from_classes(int n, const std::vector<std::vector<int>>& groups);

  int size() const { return static_cast<int>(cls_.size()); }
  int class_count() const { return k_; }
  int class_of(int x) const { return cls_[x]; }
  bool same_class(int x, int y) const { return cls_[x] == cls_[y]; }
  Mask class_mask(int c) const { return masks_[c]; }
  const std::vector<int>& table() const { return cls_; }

  friend bool operator==(const Equivalence& a, const Equivalence& b) { return a.cls_ == b.cls_; }

 private:
  std::vector<int> cls_;
  int k_ = 0;
  std::vector<Mask> masks_;
};

Equivalence kernel(MapRef f);
inline Equivalence kernel(const PosetMap& f) { return kernel(f.ref()); }

/// All partitions of an n-set in restricted-growth-string order.
/// Visitor returns false to stop early.
void for_each_partition(int n, const std::function<bool(const Equivalence&)>& visit);

enum class MapClass {
  All,
  Monotone,
  StrictlyMonotone,
  Ucp,
  StrictlyUcp,
  StronglyUcp,
  StronglyMonotone,
};

const char* to_string(MapClass c);
std::optional<MapClass> map_class_from_string(const std::string& name);
bool satisfies(MapRef f, MapClass c);

/// Yields every self-map of p in the class, each once, in a deterministic
/// order. Images are assigned along a fixed linear extension; partial
/// assignments that already violate the class's pairwise condition on
/// decided pairs are pruned. Visitor returns false to stop early.
void enumerate_maps(const PosetPtr& p, MapClass c,
                    const std::function<bool(const PosetMap&)>& visit);

std::vector<PosetMap> maps_in_class(const PosetPtr& p, MapClass c);

}  // namespace posetkit
