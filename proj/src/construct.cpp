#include "posetkit/construct.hpp"

#include <algorithm>
#include <unordered_set>

namespace posetkit {

Poset chain(int n) {
  if (n < 1) throw PosetError("chain needs at least one element");
  std::vector<std::string> labels(n);
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return Poset::from_cover_indices(std::move(labels), covers);
}

Poset antichain(int n) {
  if (n < 1) throw PosetError("antichain needs at least one element");
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "a" + std::to_string(i);
  return Poset::from_cover_indices(std::move(labels), {});
}

namespace {

std::vector<std::string> disjoint_labels(const Poset& a, const Poset& b) {
  std::unordered_set<std::string> left(a.labels().begin(), a.labels().end());
  bool clash = std::any_of(b.labels().begin(), b.labels().end(),
                           [&](const std::string& l) { return left.count(l) > 0; });
  std::vector<std::string> labels;
  labels.reserve(a.size() + b.size());
  for (const auto& l : a.labels()) labels.push_back(clash ? "l." + l : l);
  for (const auto& l : b.labels()) labels.push_back(clash ? "r." + l : l);
  return labels;
}

}  // namespace

Poset ordinal_sum(const Poset& a, const Poset& b) {
  const int na = a.size(), nb = b.size();
  std::vector<Mask> up(na + nb);
  const Mask top = (ElementSet::full(na + nb).bits >> na) << na;  // all of b's block
  for (int i = 0; i < na; ++i) up[i] = a.up_mask(i) | top;
  for (int j = 0; j < nb; ++j) up[na + j] = b.up_mask(j) << na;
  return Poset::from_leq_masks(disjoint_labels(a, b), std::move(up));
}

Poset direct_product(const Poset& a, const Poset& b) {
  const int na = a.size(), nb = b.size();
  if (na * nb > kMaxElements) throw PosetError("product exceeds the element limit");
  std::vector<std::string> labels(static_cast<size_t>(na) * nb);
  std::vector<Mask> up(static_cast<size_t>(na) * nb, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      int e = i * nb + j;
      labels[e] = "(" + a.label(i) + "," + b.label(j) + ")";
      for (Mask mi = a.up_mask(i); mi; mi &= mi - 1)
        for (Mask mj = b.up_mask(j); mj; mj &= mj - 1)
          up[e] |= Mask{1} << (std::countr_zero(mi) * nb + std::countr_zero(mj));
    }
  return Poset::from_leq_masks(std::move(labels), std::move(up));
}

PosetMap product_map(const PosetMap& f1, const PosetMap& f2) {
  PosetPtr dom = share(direct_product(f1.dom(), f2.dom()));
  PosetPtr cod = f1.dom().same_order(f1.cod()) && f2.dom().same_order(f2.cod())
                     ? dom
                     : share(direct_product(f1.cod(), f2.cod()));
  const int n2 = f2.dom().size(), m2 = f2.cod().size();
  std::vector<int> img(static_cast<size_t>(f1.dom().size()) * n2);
  for (int x1 = 0; x1 < f1.dom().size(); ++x1)
    for (int x2 = 0; x2 < n2; ++x2) img[x1 * n2 + x2] = f1(x1) * m2 + f2(x2);
  return PosetMap(std::move(dom), std::move(cod), std::move(img));
}

DecompositionResult decompose_map(const PosetMap& g, std::pair<int, int> split) {
  const auto [n1, n2] = split;
  if (n1 < 1 || n2 < 1 || n1 * n2 != g.dom().size() || g.dom().size() != g.cod().size())
    throw PosetError("split inconsistent with the carrier size");
  const auto& img = g.image_table();
  auto p1 = [n2 = n2](int v) { return v / n2; };
  auto p2 = [n2 = n2](int v) { return v % n2; };

  DecompositionResult r;
  for (int x1 = 0; x1 < n1; ++x1)
    for (int x2 = 0; x2 < n2; ++x2) {
      if (p1(img[x1 * n2 + x2]) != p1(img[x1 * n2])) {
        r.witness = DecompositionResult::Quadruple{x1, x1, 0, x2, 1};
        return r;
      }
      if (p2(img[x1 * n2 + x2]) != p2(img[x2])) {
        r.witness = DecompositionResult::Quadruple{0, x1, x2, x2, 2};
        return r;
      }
    }

  // Anchored construction: f1(x1) = p1(g(x1, a2)), f2(x2) = p2(g(a1, x2))
  // with a1 = a2 = 0.
  std::vector<int> t1(n1), t2(n2);
  for (int x1 = 0; x1 < n1; ++x1) t1[x1] = p1(img[x1 * n2]);
  for (int x2 = 0; x2 < n2; ++x2) t2[x2] = p2(img[x2]);
  r.decomposable = true;

  // Factor posets: sub-orders induced on the anchored slices of the carrier.
  std::vector<std::string> l1(n1), l2(n2);
  std::vector<Mask> u1(n1, 0), u2(n2, 0);
  for (int i = 0; i < n1; ++i) {
    l1[i] = "f1." + std::to_string(i);
    for (int j = 0; j < n1; ++j)
      if (g.dom().leq(i * n2, j * n2)) u1[i] |= Mask{1} << j;
  }
  for (int i = 0; i < n2; ++i) {
    l2[i] = "f2." + std::to_string(i);
    for (int j = 0; j < n2; ++j)
      if (g.dom().leq(i, j)) u2[i] |= Mask{1} << j;
  }
  PosetPtr q1 = share(Poset::from_leq_masks(std::move(l1), std::move(u1)));
  PosetPtr q2 = share(Poset::from_leq_masks(std::move(l2), std::move(u2)));
  r.f1 = PosetMap::self(q1, std::move(t1));
  r.f2 = PosetMap::self(q2, std::move(t2));
  return r;
}

SEquivalenceCheck check_s_equivalence(const Poset& p, const Equivalence& theta) {
  const int n = p.size();
  if (theta.size() != n) throw PosetError("partition size does not match the poset");
  const int k = theta.class_count();

  // reach[c] = union of up-cones of class c's members; "some member of c is
  // below y" reads (reach[c] >> y) & 1.
  std::vector<Mask> reach(k, 0);
  for (int c = 0; c < k; ++c)
    for (Mask m = theta.class_mask(c); m; m &= m - 1)
      reach[c] |= p.up_mask(std::countr_zero(m));

  // Condition (i): a<=b, b'<=c, b ~ b'  =>  some a' in [a], c' in [c], a'<=c'.
  for (int a = 0; a < n; ++a)
    for (Mask mb = p.up_mask(a); mb; mb &= mb - 1) {
      int b = std::countr_zero(mb);
      for (Mask mb2 = theta.class_mask(theta.class_of(b)); mb2; mb2 &= mb2 - 1) {
        int b2 = std::countr_zero(mb2);
        for (Mask mc = p.up_mask(b2); mc; mc &= mc - 1) {
          int c = std::countr_zero(mc);
          if ((reach[theta.class_of(a)] & theta.class_mask(theta.class_of(c))) == 0)
            return {false, 1, {a, b, b2, c}};
        }
      }
    }

  // Condition (ii): a<=b, b'<=a', a ~ a', b ~ b'  =>  a ~ b.
  for (int a = 0; a < n; ++a)
    for (Mask mb = p.up_mask(a); mb; mb &= mb - 1) {
      int b = std::countr_zero(mb);
      if (theta.same_class(a, b)) continue;
      for (Mask mb2 = theta.class_mask(theta.class_of(b)); mb2; mb2 &= mb2 - 1) {
        int b2 = std::countr_zero(mb2);
        Mask above_b2 = p.up_mask(b2) & theta.class_mask(theta.class_of(a));
        if (above_b2) return {false, 2, {a, std::countr_zero(above_b2), b, b2}};
      }
    }
  return {};
}

bool is_s_equivalence(const Poset& p, const Equivalence& theta) {
  return check_s_equivalence(p, theta).ok;
}

QuotientResult quotient_poset(const PosetPtr& p, const Equivalence& theta) {
  const int n = p->size();
  if (theta.size() != n) throw PosetError("partition size does not match the poset");
  const int k = theta.class_count();

  std::vector<Mask> rel(k, 0);  // rel[c] bit d: some member of c below some member of d
  for (int c = 0; c < k; ++c) {
    Mask reach = 0;
    for (Mask m = theta.class_mask(c); m; m &= m - 1)
      reach |= p->up_mask(std::countr_zero(m));
    for (int d = 0; d < k; ++d)
      if (reach & theta.class_mask(d)) rel[c] |= Mask{1} << d;
  }
  for (int c = 0; c < k; ++c)
    for (int d = c + 1; d < k; ++d)
      if (((rel[c] >> d) & 1) && ((rel[d] >> c) & 1)) throw QuotientError("antisymmetry");
  for (int c = 0; c < k; ++c)
    for (Mask m = rel[c]; m; m &= m - 1)
      if (rel[std::countr_zero(m)] & ~rel[c]) throw QuotientError("transitivity");

  std::vector<std::string> labels(k);
  for (int c = 0; c < k; ++c) {
    int rep = std::countr_zero(theta.class_mask(c));  // least member index
    labels[c] = "[" + p->label(rep) + "]";
  }
  PosetPtr q = share(Poset::from_leq_masks(std::move(labels), std::move(rel)));
  PosetMap proj(p, q, theta.table());
  return {*q, std::move(proj)};
}

}  // namespace posetkit
