#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "posetkit/mapping.hpp"
#include "posetkit/poset.hpp"

// Ordinal sums, direct products, product maps and their decomposition,
// S-equivalences, and quotient posets.

namespace posetkit {

Poset chain(int n);      // labels "0".."n-1"
Poset antichain(int n);  // labels "a0".."a{n-1}"

/// Disjoint union with every element of a below every element of b.
/// Labels are kept; on collision they get "l."/"r." prefixes.
Poset ordinal_sum(const Poset& a, const Poset& b);

/// Componentwise order on a x b; carrier ordered lexicographically by
/// (first-factor index, second-factor index), labels "(x,y)".
Poset direct_product(const Poset& a, const Poset& b);

/// (f1 x f2)(x1,x2) = (f1(x1), f2(x2)) on the direct products.
PosetMap product_map(const PosetMap& f1, const PosetMap& f2);

struct DecompositionResult {
  bool decomposable = false;
  std::optional<PosetMap> f1, f2;
  // Offending instance of condition (ii) when not decomposable:
  // projection 1 differs at (x1,x2) vs (x1,y2), or projection 2 at
  // (x1,x2) vs (y1,x2).
  struct Quadruple {
    int x1 = -1, y1 = -1, x2 = -1, y2 = -1;
    int projection = 0;  // 1 or 2
  };
  std::optional<Quadruple> witness;
};

/// Splits a self-map of a product carrier into factor maps when the
/// projections are coordinate-independent; anchors are index 0 of each
/// factor. split = (first factor size, second factor size).
DecompositionResult decompose_map(const PosetMap& g, std::pair<int, int> split);

struct SEquivalenceCheck {
  bool ok = true;
  int failed_condition = 0;        // 1 or 2 when !ok
  std::array<int, 4> tuple{-1, -1, -1, -1};
};

/// Literal scan of both conditions of the S-equivalence definition.
SEquivalenceCheck check_s_equivalence(const Poset& p, const Equivalence& theta);
bool is_s_equivalence(const Poset& p, const Equivalence& theta);

struct QuotientError : PosetError {
  QuotientError(const std::string& cond)
      : PosetError("quotient relation fails " + cond), condition(cond) {}
  std::string condition;  // "antisymmetry" or "transitivity"
};

struct QuotientResult {
  Poset poset;         // classes ordered by least representative index
  PosetMap projection;  // x -> [x], strongly monotone by the quotient theorem
};

/// Class poset under [a] <= [b] iff some a' in [a], b' in [b] have a' <= b'.
/// Validates the class relation directly and throws QuotientError naming
/// the failed axiom; it does not consult check_s_equivalence.
QuotientResult quotient_poset(const PosetPtr& p, const Equivalence& theta);

}  // namespace posetkit
