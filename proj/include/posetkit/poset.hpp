#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Finite posets on up to 64 elements. The relation is kept as one bitmask
// row per element (up_[i] = everything above i), so cone queries and
// closure tests are single AND/OR chains.

namespace posetkit {

using Mask = std::uint64_t;

constexpr int kMaxElements = 64;

struct PosetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Subset of a poset's carrier, bitmask semantics (bit i = element i).
struct ElementSet {
  Mask bits = 0;

  static ElementSet full(int n) {
    return {n >= kMaxElements ? ~Mask{0} : (Mask{1} << n) - 1};
  }
  static ElementSet single(int i) { return {Mask{1} << i}; }
  static ElementSet of(std::initializer_list<int> xs) {
    ElementSet s;
    for (int x : xs) s.add(x);
    return s;
  }

  bool contains(int i) const { return (bits >> i) & 1; }
  ElementSet& add(int i) {
    bits |= Mask{1} << i;
    return *this;
  }
  ElementSet& remove(int i) {
    bits &= ~(Mask{1} << i);
    return *this;
  }
  int count() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }
  bool subset_of(ElementSet o) const { return (bits & ~o.bits) == 0; }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    for (Mask m = bits; m; m &= m - 1) v.push_back(std::countr_zero(m));
    return v;
  }
  template <class F>
  void for_each(F f) const {
    for (Mask m = bits; m; m &= m - 1) f(std::countr_zero(m));
  }

  friend ElementSet operator&(ElementSet a, ElementSet b) { return {a.bits & b.bits}; }
  friend ElementSet operator|(ElementSet a, ElementSet b) { return {a.bits | b.bits}; }
  friend bool operator==(ElementSet a, ElementSet b) { return a.bits == b.bits; }
};

/// Upward-closed subset. Produced by filter queries; carrier may be empty.
struct Filter {
  ElementSet carrier;
  friend bool operator==(Filter a, Filter b) { return a.carrier == b.carrier; }
};

struct OrderPredicates {
  bool up_directed = true;
  bool chain = true;
  bool antichain = true;
  bool join_semilattice = true;
  std::vector<int> minimal;
  std::vector<int> maximal;
  std::vector<std::pair<int, int>> covers;  // (lower, upper), lexicographic
  std::vector<int> join;                    // n*n table; join[x*n+y] = x v y, -1 if none
};

class Poset {
 public:
  Poset() = default;

  /// Reflexive-transitive closure of the cover pairs. Rejects cycles.
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<std::string, std::string>>& covers);
  static Poset from_cover_indices(std::vector<std::string> labels,
                                  const std::vector<std::pair<int, int>>& covers);
  /// Full-relation input; the given pairs must already be a partial order.
  static Poset from_relation(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& pairs);
  /// Adopts precomputed rows after validating the poset axioms.
  static Poset from_leq_masks(std::vector<std::string> labels, std::vector<Mask> up);

  int size() const { return n_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;  // -1 if absent

  bool leq(int i, int j) const { return (up_[i] >> j) & 1; }
  bool lt(int i, int j) const { return i != j && leq(i, j); }
  bool incomparable(int i, int j) const { return !leq(i, j) && !leq(j, i); }

  Mask up_mask(int i) const { return up_[i]; }
  Mask down_mask(int i) const { return down_[i]; }
  Mask full_mask() const { return ElementSet::full(n_).bits; }

  ElementSet upper_cone(ElementSet a) const;
  ElementSet lower_cone(ElementSet a) const;
  ElementSet upper_cone_pair(int x, int y) const { return {up_[x] & up_[y]}; }
  ElementSet lower_cone_pair(int x, int y) const { return {down_[x] & down_[y]}; }
  /// (L*(a), U*(a)): cones of a with a itself removed.
  std::pair<ElementSet, ElementSet> punctured_cones(int a) const;

  bool is_filter(ElementSet a) const;
  Filter principal_filter(int a) const { return {{up_[a]}}; }
  /// Every upward-closed subset, ascending by mask value; includes {} and P.
  std::vector<Filter> all_filters() const;

  Poset dual() const;

  /// "{a,c,1}" with members in index order.
  std::string set_to_string(ElementSet s) const;

  /// Same carrier size and same relation; labels ignored.
  bool same_order(const Poset& o) const { return n_ == o.n_ && up_ == o.up_; }
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.same_order(b) && a.labels_ == b.labels_;
  }

 private:
  int n_ = 0;
  std::vector<Mask> up_;    // up_[i] = { j : i <= j }
  std::vector<Mask> down_;  // down_[j] = { i : i <= j }
  std::vector<std::string> labels_;

  void validate() const;
  void rebuild_down();
};

OrderPredicates order_predicates(const Poset& p);

/// Cover pairs (transitive reduction), lexicographic by (lower, upper).
std::vector<std::pair<int, int>> cover_pairs(const Poset& p);

/// The poset (Fil P, subset-of). Labels are carrier strings like "{a,b}".
Poset filter_lattice(const Poset& p);

}  // namespace posetkit
