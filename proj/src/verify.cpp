#include "posetkit/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace posetkit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Verdict under construction; records only the first failure.
struct Run {
  Verdict v;
  Clock::time_point t0 = Clock::now();

  explicit Run(std::string id) { v.statement_id = std::move(id); }

  bool fail(Witness w) {
    if (v.holds) {
      v.holds = false;
      v.witness = std::move(w);
    }
    return false;  // handy as a visitor return
  }

  Verdict done() {
    v.elapsed_seconds = seconds_since(t0);
    return std::move(v);
  }
};

Witness witness_of(const Poset& p, std::string clause,
                   std::vector<std::pair<std::string, int>> elements = {},
                   std::optional<std::vector<int>> map_image = std::nullopt,
                   std::optional<std::vector<int>> partition = std::nullopt) {
  Witness w;
  w.poset = p;
  w.clause = std::move(clause);
  w.elements = std::move(elements);
  w.map_image = std::move(map_image);
  w.partition = std::move(partition);
  return w;
}

bool for_each_poset_upto(int n_max, bool iso_dedup,
                         const std::function<bool(const Poset&)>& visit) {
  for (int n = 1; n <= n_max; ++n) {
    bool keep_going = true;
    enumerate_posets(n, iso_dedup, [&](const Poset& p) {
      keep_going = visit(p);
      return keep_going;
    });
    if (!keep_going) return false;
  }
  return true;
}

uint64_t ipow(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool Verdict::same_outcome(const Verdict& o) const {
  auto key = [](const Verdict& x) {
    return std::tie(x.statement_id, x.holds, x.instances_checked, x.note);
  };
  if (key(*this) != key(o)) return false;
  if (witness.has_value() != o.witness.has_value()) return false;
  if (!witness) return true;
  const Witness& a = *witness;
  const Witness& b = *o.witness;
  return a.poset == b.poset && a.map_image == b.map_image && a.elements == b.elements &&
         a.partition == b.partition && a.clause == b.clause;
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("POSETKIT_WORKERS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
  }
  return hw;
}

// ---------------------------------------------------------------------------
// Poset enumeration

namespace {

// Lexicographically-least relation encoding over all relabelings.
bool is_canonical(int n, const std::array<Mask, 6>& up) {
  auto encode = [&](const std::array<int, 6>& perm) {
    Mask enc = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((up[perm[i]] >> perm[j]) & 1) enc |= Mask{1} << (i * n + j);
    return enc;
  };
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  Mask own = encode(perm);
  while (std::next_permutation(perm.begin(), perm.begin() + n))
    if (encode(perm) < own) return false;
  return true;
}

}  // namespace

void enumerate_posets(int n, bool iso_dedup, const std::function<bool(const Poset&)>& visit) {
  if (n < 1 || n > 6) throw PosetError("enumerate_posets supports sizes 1..6");
  static const char* kNames[6] = {"a", "b", "c", "d", "e", "f"};
  std::vector<std::string> labels(kNames, kNames + n);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const int np = static_cast<int>(pairs.size());

  // Per unordered pair: 0 incomparable, 1 first<second, 2 second<first.
  // Candidates are reflexive antisymmetric by construction; keep the
  // transitive ones.
  std::vector<int> state(np, 0);
  std::array<Mask, 6> up{};
  for (;;) {
    for (int i = 0; i < n; ++i) up[i] = Mask{1} << i;
    for (int p = 0; p < np; ++p) {
      if (state[p] == 1) up[pairs[p].first] |= Mask{1} << pairs[p].second;
      if (state[p] == 2) up[pairs[p].second] |= Mask{1} << pairs[p].first;
    }
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (Mask m = up[i] & ~(Mask{1} << i); m; m &= m - 1)
        if (up[std::countr_zero(m)] & ~up[i]) {
          transitive = false;
          break;
        }
    if (transitive && (!iso_dedup || is_canonical(n, up))) {
      Poset p = Poset::from_leq_masks(labels, std::vector<Mask>(up.begin(), up.begin() + n));
      if (!visit(p)) return;
    }
    int pos = np - 1;
    while (pos >= 0 && state[pos] == 2) state[pos--] = 0;
    if (pos < 0) return;
    ++state[pos];
  }
}

std::vector<Poset> all_posets(int n, bool iso_dedup) {
  std::vector<Poset> out;
  enumerate_posets(n, iso_dedup, [&](const Poset& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Statement verifiers

Verdict verify_lemma1(int n_max, bool iso_dedup) {
  Run run("lemma1");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    OrderPredicates pr = order_predicates(p);
    for (int a = 0; a < p.size(); ++a) {
      PosetMap fa = constant_map(pp, a);
      bool lhs = is_ucp(fa.ref());
      bool maximal = p.up_mask(a) == (Mask{1} << a);
      bool rhs = pr.up_directed && maximal;
      ++run.v.instances_checked;
      if (lhs != rhs)
        return run.fail(witness_of(p, "f_a upper cone preserving disagrees with (up-directed and a maximal)",
                                   {{"a", a}}, fa.image_table()));
    }
    return true;
  });
  return run.done();
}

Verdict verify_lemma2(int n_max, bool iso_dedup) {
  Run run("lemma2");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    const int n = p.size();
    std::vector<Filter> filters = p.all_filters();
    bool ok = true;
    enumerate_maps(pp, MapClass::All, [&](const PosetMap& f) {
      MapRef r = f.ref();
      ++run.v.instances_checked;
      // (i) pairwise monotonicity vs the one-element cone containment
      bool mono = is_monotone(r);
      bool cone_side = true;
      for (int x = 0; x < n && cone_side; ++x)
        cone_side = image_of_set(r, {p.up_mask(x)}).subset_of({p.up_mask(f(x))});
      if (mono != cone_side)
        return ok = run.fail(witness_of(p, "monotone iff f(U(x)) within U(f(x)) fails",
                                        {}, f.image_table()));
      // (ii) UCP implies monotone and filter images are filters
      if (is_ucp(r)) {
        if (!mono)
          return ok = run.fail(witness_of(p, "upper cone preserving map is not monotone",
                                          {}, f.image_table()));
        for (const Filter& fl : filters)
          if (!p.is_filter(image_of_set(r, fl.carrier)))
            return ok = run.fail(witness_of(p, "image of a filter under a UCP map is not a filter",
                                            {}, f.image_table()));
      }
      // (iv) monotone images of arbitrary-subset cones
      if (mono) {
        for (Mask a = 0; a < (Mask{1} << n); ++a) {
          ElementSet fa = image_of_set(r, {a});
          if (!image_of_set(r, p.lower_cone({a})).subset_of(p.lower_cone(fa)) ||
              !image_of_set(r, p.upper_cone({a})).subset_of(p.upper_cone(fa)))
            return ok = run.fail(witness_of(p, "monotone map breaks f(L(A)) within L(f(A)) or dual",
                                            {}, f.image_table()));
        }
      }
      return true;
    });
    if (!ok) return false;
    // (iii) a non-singleton poset admits a monotone non-UCP map
    if (n > 1) {
      bool found = false;
      enumerate_maps(pp, MapClass::Monotone, [&](const PosetMap& f) {
        found = !is_ucp(f.ref());
        return !found;
      });
      ++run.v.instances_checked;
      if (!found)
        return run.fail(witness_of(p, "every monotone map on a non-singleton poset is UCP"));
    }
    return true;
  });
  return run.done();
}

Verdict verify_injective_prop(int n_max, bool iso_dedup) {
  Run run("injective-prop");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    bool ok = true;
    enumerate_maps(pp, MapClass::All, [&](const PosetMap& f) {
      MapRef r = f.ref();
      if (!is_injective(r) || !preserves_principal_filters(r)) return true;
      ++run.v.instances_checked;
      if (!is_ucp(r))
        return ok = run.fail(witness_of(
                   p, "injective principal-filter-preserving map is not UCP", {},
                   f.image_table()));
      return true;
    });
    return ok;
  });
  return run.done();
}

namespace {

// Shared frame for the three f_ab characterizations: both sides of each
// iff are evaluated through unrelated code paths.
Verdict verify_f_ab_iff(const char* id, int n_max, bool iso_dedup,
                        const std::function<bool(const Poset&, const PosetMap&, int, int)>& lhs,
                        const std::function<bool(const Poset&, int, int)>& rhs,
                        const char* clause) {
  Run run(id);
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b) {
        if (a == b) continue;
        PosetMap f = f_ab_map(pp, a, b);
        ++run.v.instances_checked;
        if (lhs(p, f, a, b) != rhs(p, a, b))
          return run.fail(witness_of(p, clause, {{"a", a}, {"b", b}}, f.image_table()));
      }
    return true;
  });
  return run.done();
}

}  // namespace

Verdict verify_prop3_1(int n_max, bool iso_dedup) {
  return verify_f_ab_iff(
      "prop3.1", n_max, iso_dedup,
      [](const Poset&, const PosetMap& f, int, int) { return is_strictly_monotone(f.ref()); },
      [](const Poset& p, int a, int b) {
        auto [la, ua] = p.punctured_cones(a);
        auto [lb, ub] = p.punctured_cones(b);
        return p.incomparable(a, b) && la.subset_of(lb) && ua.subset_of(ub);
      },
      "f_ab strictly monotone disagrees with a||b, L*(a) within L*(b), U*(a) within U*(b)");
}

Verdict verify_thm3_2(int n_max, bool iso_dedup) {
  return verify_f_ab_iff(
      "thm3.2", n_max, iso_dedup,
      [](const Poset&, const PosetMap& f, int, int) { return is_ucp(f.ref()); },
      [](const Poset& p, int a, int b) {
        bool minimal = p.down_mask(a) == (Mask{1} << a);
        return minimal && p.punctured_cones(a).second == ElementSet{p.up_mask(b)};
      },
      "f_ab upper cone preserving disagrees with a minimal and U*(a)=U(b)");
}

Verdict verify_strict_ucp_thm(int n_max, bool iso_dedup) {
  return verify_f_ab_iff(
      "strict-ucp-thm", n_max, iso_dedup,
      [](const Poset&, const PosetMap& f, int, int) { return is_strictly_ucp(f.ref()); },
      [](const Poset& p, int a, int b) {
        return std::popcount(p.down_mask(a)) <= 2 &&
               p.punctured_cones(a).second == ElementSet{p.up_mask(b)};
      },
      "f_ab strictly UCP disagrees with |L(a)|<=2 and U*(a)=U(b)");
}

Verdict verify_cover_remark(int n_max, bool iso_dedup) {
  Run run("cover-remark");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    // covers computed from betweenness, not from the U* identity under test
    std::vector<Mask> cov(p.size(), 0);
    for (auto [lo, hi] : cover_pairs(p)) cov[lo] |= Mask{1} << hi;
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b) {
        if (a == b) continue;
        ++run.v.instances_checked;
        bool hyp = p.punctured_cones(a).second == ElementSet{p.up_mask(b)};
        if (hyp && !((cov[a] >> b) & 1))
          return run.fail(witness_of(p, "U*(a)=U(b) but a does not cover b's lower neighbor a",
                                     {{"a", a}, {"b", b}}));
      }
    return true;
  });
  return run.done();
}

Verdict verify_chain_props(int max_len) {
  Run run("chain-props");
  for (int len = 1; len <= max_len && run.v.holds; ++len) {
    Poset c = chain(len);
    PosetPtr pp = share(c);
    enumerate_maps(pp, MapClass::All, [&](const PosetMap& f) {
      MapRef r = f.ref();
      ++run.v.instances_checked;
      bool ucp = is_ucp(r);
      ElementSet image = f.image_set();
      if (is_strictly_monotone(r)) {
        if (ucp != c.is_filter(image))
          return run.fail(witness_of(c, "strictly monotone on a chain: UCP iff image is a filter",
                                     {}, f.image_table()));
      }
      if (is_monotone(r)) {
        bool contained = true;
        for (int x = 0; x < c.size() && contained; ++x)
          contained = ElementSet{c.up_mask(f(x))}.subset_of(image);
        if (ucp != contained)
          return run.fail(witness_of(c, "monotone on a chain: UCP iff U(f(x)) within f(C) for all x",
                                     {}, f.image_table()));
      }
      return true;
    });
  }
  return run.done();
}

Verdict verify_thm4_1(int n_max, bool iso_dedup) {
  Run run("thm4.1");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    OrderPredicates pr = order_predicates(p);
    if (!pr.join_semilattice) return true;
    PosetPtr pp = share(p);
    const int n = p.size();
    if (pr.chain) {
      bool ok = true;
      enumerate_maps(pp, MapClass::Monotone, [&](const PosetMap& f) {
        ++run.v.instances_checked;
        if (!is_join_homomorphism(f.ref()))
          return ok = run.fail(witness_of(p, "monotone map on a chain is not a join homomorphism",
                                          {}, f.image_table()));
        return true;
      });
      return ok;
    }
    // Not a chain: the proof's map g for the first incomparable pair (c,d).
    int c = -1, d = -1;
    for (int i = 0; i < n && c < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p.incomparable(i, j)) {
          c = i;
          d = j;
          break;
        }
    int s = pr.join[static_cast<size_t>(c) * n + d];
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = p.lt(x, s) ? c : s;
    PosetMap g = PosetMap::self(pp, img);
    ++run.v.instances_checked;
    if (!is_monotone(g.ref()) || is_join_homomorphism(g.ref()) ||
        g(s) == pr.join[static_cast<size_t>(g(c)) * n + g(d)])
      return run.fail(witness_of(p, "constructed g is not a monotone non-homomorphism",
                                 {{"c", c}, {"d", d}}, g.image_table()));
    // Independent existence search.
    bool found = false;
    enumerate_maps(pp, MapClass::Monotone, [&](const PosetMap& f) {
      found = !is_join_homomorphism(f.ref());
      return !found;
    });
    ++run.v.instances_checked;
    if (!found)
      return run.fail(witness_of(p, "non-chain join-semilattice where every monotone map is a homomorphism"));
    return true;
  });
  return run.done();
}

Verdict verify_product_corollary(int max_product) {
  Run run("product-corollary");
  for (int n1 = 1; n1 <= max_product && run.v.holds; ++n1)
    for (int n2 = 1; n1 * n2 <= max_product && run.v.holds; ++n2) {
      PosetPtr c1 = share(chain(n1)), c2 = share(chain(n2));
      PosetPtr prod = share(direct_product(*c1, *c2));
      // Factors of a monotone product map are monotone (fix one coordinate
      // and project), so monotone factor pairs cover every monotone
      // directly decomposable self-map.
      std::vector<PosetMap> f1s = maps_in_class(c1, MapClass::Monotone);
      std::vector<PosetMap> f2s = maps_in_class(c2, MapClass::Monotone);
      bool first = true;
      std::vector<int> img(static_cast<size_t>(n1) * n2);
      for (const PosetMap& f1 : f1s)
        for (const PosetMap& f2 : f2s) {
          for (int x1 = 0; x1 < n1; ++x1)
            for (int x2 = 0; x2 < n2; ++x2) img[x1 * n2 + x2] = f1(x1) * n2 + f2(x2);
          MapRef f{prod.get(), prod.get(), img.data()};
          ++run.v.instances_checked;
          if (!is_monotone(f))
            return run.fail(witness_of(*prod, "product of monotone chain maps is not monotone",
                                       {}, img));
          if (first) {  // route one instance per shape through the public API
            first = false;
            PosetMap viaApi = product_map(f1, f2);
            DecompositionResult dec = decompose_map(viaApi, {n1, n2});
            if (!dec.decomposable || viaApi.image_table() != img)
              return run.fail(witness_of(*prod, "product map fails to decompose", {}, img));
          }
          if (!is_join_homomorphism(f) || !is_meet_homomorphism(f))
            return run.fail(witness_of(
                *prod, "monotone directly decomposable map is not a lattice homomorphism",
                {}, img));
        }
    }
  return run.done();
}

// ---------------------------------------------------------------------------
// Decomposability: exhaustive over every self-map of every product carrier
// with at most max_product elements. The hot loop works on raw image
// tables; the structured decompose_map API is cross-checked on a
// deterministic sample of each shape.

namespace {

struct DecompChunk {
  uint64_t decomposable = 0;
  std::optional<uint64_t> fail_index;
  std::string fail_clause;
  std::vector<int> fail_img;
};

// -1 lemma violated, 0 non-decomposable with verified witness, 1 decomposable.
int classify_map(const int* img, int n1, int n2) {
  for (int x1 = 0; x1 < n1; ++x1) {
    int c1 = img[x1 * n2] / n2;
    for (int x2 = 1; x2 < n2; ++x2)
      if (img[x1 * n2 + x2] / n2 != c1)
        return (img[x1 * n2] / n2) != (img[x1 * n2 + x2] / n2) ? 0 : -1;
  }
  for (int x2 = 0; x2 < n2; ++x2) {
    int c2 = img[x2] % n2;
    for (int x1 = 1; x1 < n1; ++x1)
      if (img[x1 * n2 + x2] % n2 != c2) return (img[x2] % n2) != (img[x1 * n2 + x2] % n2) ? 0 : -1;
  }
  // Condition (ii) holds; the anchored factors must reproduce the map.
  for (int x1 = 0; x1 < n1; ++x1)
    for (int x2 = 0; x2 < n2; ++x2)
      if (img[x1 * n2 + x2] != (img[x1 * n2] / n2) * n2 + (img[x2] % n2)) return -1;
  return 1;
}

// Cross-check one map through the public construction/decomposition API.
bool api_agrees(const PosetPtr& prod, const std::vector<int>& img, int n1, int n2) {
  PosetMap g = PosetMap::self(prod, img);
  DecompositionResult dec = decompose_map(g, {n1, n2});
  int cls = classify_map(img.data(), n1, n2);
  if (dec.decomposable != (cls == 1)) return false;
  if (dec.decomposable) return product_map(*dec.f1, *dec.f2).image_table() == img;
  const auto& q = *dec.witness;
  const auto& t = g.image_table();
  if (q.projection == 1)
    return q.x1 == q.y1 && t[q.x1 * n2 + q.x2] / n2 != t[q.y1 * n2 + q.y2] / n2;
  return q.x2 == q.y2 && t[q.x1 * n2 + q.x2] % n2 != t[q.y1 * n2 + q.y2] % n2;
}

DecompChunk scan_decomp_range(const PosetPtr& prod, int n1, int n2, uint64_t lo, uint64_t hi,
                              uint64_t sample_stride) {
  const int N = n1 * n2;
  DecompChunk out;
  std::vector<int> img(N);
  uint64_t k = lo;
  for (int e = N - 1, v = static_cast<int>(lo % 1); e >= 0; --e) (void)v;  // placeholder
  {
    uint64_t t = lo;
    for (int e = N - 1; e >= 0; --e) {
      img[e] = static_cast<int>(t % N);
      t /= N;
    }
  }
  for (; k < hi; ++k) {
    int cls = classify_map(img.data(), n1, n2);
    if (cls < 0 || (k % sample_stride == 0 && !api_agrees(prod, img, n1, n2))) {
      if (!out.fail_index) {
        out.fail_index = k;
        out.fail_clause = cls < 0 ? "map violates the decomposability equivalence"
                                  : "decompose_map disagrees with the raw scan";
        out.fail_img = img;
      }
      return out;
    }
    if (cls == 1) ++out.decomposable;
    // next map
    for (int e = N - 1; e >= 0; --e) {
      if (++img[e] < N) break;
      img[e] = 0;
    }
  }
  return out;
}

}  // namespace

Verdict verify_decomposability_lemma(int max_product) {
  Run run("decomposability");
  for (int n1 = 1; n1 <= max_product && run.v.holds; ++n1)
    for (int n2 = 1; n1 * n2 <= max_product && run.v.holds; ++n2) {
      const int N = n1 * n2;
      const uint64_t total = ipow(N, N);
      PosetPtr prod = share(direct_product(chain(n1), chain(n2)));
      const uint64_t stride = std::max<uint64_t>(1, total / 64);

      int workers = static_cast<int>(std::min<uint64_t>(worker_count(), total));
      std::vector<DecompChunk> chunks(workers);
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        uint64_t lo = total / workers * w + std::min<uint64_t>(w, total % workers);
        uint64_t hi = lo + total / workers + (static_cast<uint64_t>(w) < total % workers ? 1 : 0);
        pool.emplace_back([&, w, lo, hi] {
          chunks[w] = scan_decomp_range(prod, n1, n2, lo, hi, stride);
        });
      }
      for (auto& t : pool) t.join();

      uint64_t decomposable = 0;
      std::optional<uint64_t> fail;
      const DecompChunk* failed = nullptr;
      for (const DecompChunk& c : chunks) {
        decomposable += c.decomposable;
        if (c.fail_index && (!fail || *c.fail_index < *fail)) {
          fail = c.fail_index;
          failed = &c;
        }
      }
      run.v.instances_checked += fail ? *fail + 1 : total;
      if (fail) {
        run.fail(witness_of(*prod, failed->fail_clause, {}, failed->fail_img));
        break;
      }
      // Decomposable maps are exactly the f1 x f2 pairs.
      if (decomposable != ipow(n1, n1) * ipow(n2, n2)) {
        run.fail(witness_of(*prod, "decomposable-map count differs from n1^n1 * n2^n2"));
        break;
      }
    }
  run.v.note = "exhaustive over raw image tables; decompose_map cross-checked on sampled maps";
  return run.done();
}

Verdict verify_minimal_upper_thm(int n_max, bool iso_dedup) {
  Run run("minimal-upper");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    const int n = p.size();
    bool is_chain_poset = order_predicates(p).chain;
    auto proof_map = [&](int a, int c) {
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x) img[x] = p.lt(x, c) ? a : c;
      return img;
    };
    int first_a = -1, first_b = -1;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!p.incomparable(a, b)) continue;
        if (first_a < 0) {
          first_a = a;
          first_b = b;
        }
        ElementSet u = p.upper_cone_pair(a, b);
        ElementSet minimals;
        u.for_each([&](int z) {
          if ((p.down_mask(z) & u.bits) == (Mask{1} << z)) minimals.add(z);
        });
        bool bad = false;
        minimals.for_each([&](int c) {
          if (bad) return;
          std::vector<int> img = proof_map(a, c);
          MapRef f{&p, &p, img.data()};
          ++run.v.instances_checked;
          if (!is_monotone(f) ||
              image_of_set(f, u) == p.upper_cone_pair(img[a], img[b]) ||
              is_strictly_ucp(f)) {
            run.fail(witness_of(p, "proof map is not a monotone cone-equality violator",
                                {{"a", a}, {"b", b}, {"c", c}}, img));
            bad = true;
          }
        });
        if (bad) return false;
      }
    // Corollary: every finite non-chain poset (DCC holds trivially) admits
    // a monotone map that is not strictly UCP, hence not UCP.
    if (!is_chain_poset) {
      ElementSet u = p.upper_cone_pair(first_a, first_b);
      std::vector<int> img;
      if (u.empty()) {
        img.assign(n, first_a);
      } else {
        int c = -1;
        u.for_each([&](int z) {
          if (c < 0 && (p.down_mask(z) & u.bits) == (Mask{1} << z)) c = z;
        });
        img = proof_map(first_a, c);
      }
      MapRef f{&p, &p, img.data()};
      ++run.v.instances_checked;
      if (!is_monotone(f) || is_strictly_ucp(f) || is_ucp(f))
        return run.fail(witness_of(p, "corollary map is not a monotone non-strictly-UCP map",
                                   {{"a", first_a}, {"b", first_b}}, img));
    }
    return true;
  });
  run.v.note = "finite posets satisfy the DCC, so the corollary is checked on every non-chain poset";
  return run.done();
}

Verdict verify_ordinal_sum_prop(int antichain_max, int chain_max) {
  Run run("ordinal-sum");
  for (int k = 1; k <= antichain_max && run.v.holds; ++k)
    for (int m = 1; m <= chain_max && run.v.holds; ++m) {
      Poset p = ordinal_sum(antichain(k), chain(m));
      PosetPtr pp = share(p);
      const Mask a_part = (Mask{1} << k) - 1;
      enumerate_maps(pp, MapClass::StrictlyMonotone, [&](const PosetMap& f) {
        ++run.v.instances_checked;
        if (!is_strongly_ucp(f.ref()))
          return run.fail(witness_of(p, "strictly monotone map on antichain+chain is not strongly UCP",
                                     {}, f.image_table()));
        // proof facts: f(A) within A, f fixes the chain block
        ElementSet fa = f.image_of({a_part});
        bool fixes_chain = true;
        for (int x = k; x < p.size(); ++x) fixes_chain = fixes_chain && f(x) == x;
        if (!fa.subset_of({a_part}) || !fixes_chain)
          return run.fail(witness_of(p, "strictly monotone map moves the chain block or leaves the antichain",
                                     {}, f.image_table()));
        return true;
      });
    }
  return run.done();
}

Verdict verify_quotient_theorem(int n_max, bool iso_dedup) {
  Run run("quotient-thm");
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    bool ok = true;
    // (i) kernels of strongly monotone maps are S-equivalences
    enumerate_maps(pp, MapClass::StronglyMonotone, [&](const PosetMap& f) {
      ++run.v.instances_checked;
      Equivalence theta = kernel(f.ref());
      if (!is_s_equivalence(p, theta))
        return ok = run.fail(witness_of(p, "kernel of a strongly monotone map is not an S-equivalence",
                                        {}, f.image_table(), theta.table()));
      return true;
    });
    if (!ok) return false;
    // (ii) S-equivalences are exactly the partitions with a valid quotient,
    // and the projection is strongly monotone
    for_each_partition(p.size(), [&](const Equivalence& theta) {
      ++run.v.instances_checked;
      SEquivalenceCheck chk = check_s_equivalence(p, theta);
      bool quotient_ok = true;
      try {
        QuotientResult q = quotient_poset(pp, theta);
        if (chk.ok && !is_strongly_monotone(q.projection.ref()))
          return ok = run.fail(witness_of(p, "quotient projection is not strongly monotone",
                                          {}, std::nullopt, theta.table()));
      } catch (const QuotientError&) {
        quotient_ok = false;
      }
      if (chk.ok != quotient_ok)
        return ok = run.fail(witness_of(p, "S-equivalence test disagrees with quotient validity",
                                        {}, std::nullopt, theta.table()));
      return true;
    });
    return ok;
  });
  return run.done();
}

// ---------------------------------------------------------------------------
// Generic counterexample search

namespace {

struct PredicateInfo {
  const char* name;
  std::optional<MapClass> cls;  // when the name is a full enumeration class
  bool (*pred)(MapRef);
};

bool pred_true(MapRef) { return true; }
bool pred_identity(MapRef f) {
  for (int x = 0; x < f.dom->size(); ++x)
    if (f.img[x] != x) return false;
  return true;
}
bool pred_constant(MapRef f) {
  for (int x = 0; x < f.dom->size(); ++x)
    if (f.img[x] != f.img[0]) return false;
  return true;
}
bool pred_join_hom(MapRef f) {
  return order_predicates(*f.dom).join_semilattice && is_join_homomorphism(f);
}

constexpr PredicateInfo kPredicates[] = {
    {"all", MapClass::All, pred_true},
    {"monotone", MapClass::Monotone, [](MapRef f) { return is_monotone(f); }},
    {"strictly-monotone", MapClass::StrictlyMonotone,
     [](MapRef f) { return is_strictly_monotone(f); }},
    {"ucp", MapClass::Ucp, [](MapRef f) { return is_ucp(f); }},
    {"strictly-ucp", MapClass::StrictlyUcp, [](MapRef f) { return is_strictly_ucp(f); }},
    {"strongly-ucp", MapClass::StronglyUcp, [](MapRef f) { return is_strongly_ucp(f); }},
    {"strongly-monotone", MapClass::StronglyMonotone,
     [](MapRef f) { return is_strongly_monotone(f); }},
    {"injective", std::nullopt, [](MapRef f) { return is_injective(f); }},
    {"identity", std::nullopt, pred_identity},
    {"constant", std::nullopt, pred_constant},
    {"preserves-principal-filters", std::nullopt,
     [](MapRef f) { return preserves_principal_filters(f); }},
    {"join-homomorphism", std::nullopt, pred_join_hom},
};

const PredicateInfo* find_predicate(const std::string& name) {
  for (const auto& p : kPredicates)
    if (name == p.name) return &p;
  return nullptr;
}

}  // namespace

std::vector<std::string> registered_predicates() {
  std::vector<std::string> names;
  for (const auto& p : kPredicates) names.emplace_back(p.name);
  return names;
}

Verdict search_counterexample(const std::string& hypothesis, const std::string& conclusion,
                              int n_max, bool iso_dedup) {
  const PredicateInfo* hyp = find_predicate(hypothesis);
  const PredicateInfo* con = find_predicate(conclusion);
  if (!hyp || !con)
    throw PosetError("unknown predicate: " + (hyp ? conclusion : hypothesis));
  Run run("search:" + hypothesis + "=>" + conclusion);
  MapClass cls = hyp->cls.value_or(MapClass::All);
  for_each_poset_upto(n_max, iso_dedup, [&](const Poset& p) {
    PosetPtr pp = share(p);
    bool keep_going = true;
    enumerate_maps(pp, cls, [&](const PosetMap& f) {
      MapRef r = f.ref();
      if (!hyp->cls && !hyp->pred(r)) return true;
      ++run.v.instances_checked;
      if (!con->pred(r)) {
        run.fail(witness_of(p, hypothesis + " map is not " + conclusion, {}, f.image_table()));
        return keep_going = false;
      }
      return true;
    });
    return keep_going;
  });
  return run.done();
}

// ---------------------------------------------------------------------------
// Registry and serialization

const std::vector<StatementInfo>& statements() {
  static const std::vector<StatementInfo> kStatements = {
      {"lemma1", "f_a is UCP iff the poset is up-directed and a is maximal", 5,
       "max poset size", [](int b, bool d) { return verify_lemma1(b, d); }},
      {"lemma2", "elementary cone-preservation facts (i)-(iv)", 4, "max poset size",
       [](int b, bool d) { return verify_lemma2(b, d); }},
      {"injective-prop", "injective principal-filter-preserving maps are UCP", 4,
       "max poset size", [](int b, bool d) { return verify_injective_prop(b, d); }},
      {"prop3.1", "f_ab strictly monotone iff a||b with nested punctured cones", 5,
       "max poset size", [](int b, bool d) { return verify_prop3_1(b, d); }},
      {"thm3.2", "f_ab UCP iff a minimal and U*(a)=U(b)", 5, "max poset size",
       [](int b, bool d) { return verify_thm3_2(b, d); }},
      {"cover-remark", "U*(a)=U(b) implies a covered by b", 5, "max poset size",
       [](int b, bool d) { return verify_cover_remark(b, d); }},
      {"strict-ucp-thm", "f_ab strictly UCP iff |L(a)|<=2 and U*(a)=U(b)", 5,
       "max poset size", [](int b, bool d) { return verify_strict_ucp_thm(b, d); }},
      {"chain-props", "UCP characterizations on chains", 6, "max chain length",
       [](int b, bool) { return verify_chain_props(b); }},
      {"thm4.1", "join-semilattice is a chain iff monotone = homomorphism", 5,
       "max poset size", [](int b, bool d) { return verify_thm4_1(b, d); }},
      {"product-corollary", "monotone decomposable maps on chain products are lattice homs", 9,
       "max product size", [](int b, bool) { return verify_product_corollary(b); }},
      {"decomposability", "decomposable iff projections are coordinate-independent", 9,
       "max product size", [](int b, bool) { return verify_decomposability_lemma(b); }},
      {"minimal-upper", "minimal elements of U(a,b) yield monotone cone violators", 5,
       "max poset size", [](int b, bool d) { return verify_minimal_upper_thm(b, d); }},
      {"ordinal-sum", "strictly monotone maps on antichain+chain are strongly UCP", 3,
       "max antichain size and chain length", [](int b, bool) { return verify_ordinal_sum_prop(b, b); }},
      {"quotient-thm", "kernels and S-equivalences give poset quotients", 4,
       "max poset size", [](int b, bool d) { return verify_quotient_theorem(b, d); }},
  };
  return kStatements;
}

const StatementInfo* find_statement(const std::string& id) {
  for (const auto& s : statements())
    if (s.id == id) return &s;
  return nullptr;
}

namespace {

std::string partition_to_string(const Poset& p, const std::vector<int>& cls) {
  int k = *std::max_element(cls.begin(), cls.end()) + 1;
  std::string out;
  for (int c = 0; c < k; ++c) {
    out += "{";
    bool first = true;
    for (int x = 0; x < static_cast<int>(cls.size()); ++x)
      if (cls[x] == c) {
        if (!first) out += ",";
        out += p.label(x);
        first = false;
      }
    out += "}";
  }
  return out;
}

}  // namespace

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << "statement: " << v.statement_id << "\n";
  os << "holds: " << (v.holds ? "true" : "false") << "\n";
  os << "instances: " << v.instances_checked << "\n";
  os << "elapsed_ms: " << v.elapsed_seconds * 1e3 << "\n";
  if (!v.note.empty()) os << "note: " << v.note << "\n";
  if (v.witness) {
    const Witness& w = *v.witness;
    os << "witness.clause: " << w.clause << "\n";
    os << "witness.poset.elements:";
    for (const auto& l : w.poset.labels()) os << " " << l;
    os << "\n";
    os << "witness.poset.covers:";
    for (auto [a, b] : cover_pairs(w.poset))
      os << " " << w.poset.label(a) << "<" << w.poset.label(b);
    os << "\n";
    if (!w.elements.empty()) {
      os << "witness.elements:";
      for (const auto& [role, idx] : w.elements) os << " " << role << "=" << w.poset.label(idx);
      os << "\n";
    }
    if (w.map_image) {
      os << "witness.map:";
      for (int x = 0; x < w.poset.size(); ++x)
        os << " " << w.poset.label(x) << "->" << w.poset.label((*w.map_image)[x]);
      os << "\n";
    }
    if (w.partition)
      os << "witness.partition: " << partition_to_string(w.poset, *w.partition) << "\n";
  }
  return os.str();
}

std::string verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["statement"] = v.statement_id;
  j["holds"] = v.holds;
  j["instances_checked"] = v.instances_checked;
  j["elapsed_ms"] = v.elapsed_seconds * 1e3;
  j["note"] = v.note;
  if (!v.witness) {
    j["witness"] = nullptr;
  } else {
    const Witness& w = *v.witness;
    nlohmann::json wj;
    wj["clause"] = w.clause;
    wj["poset"]["elements"] = w.poset.labels();
    auto covers = nlohmann::json::array();
    for (auto [a, b] : cover_pairs(w.poset))
      covers.push_back({w.poset.label(a), w.poset.label(b)});
    wj["poset"]["covers"] = covers;
    if (w.map_image) {
      auto m = nlohmann::json::array();
      for (int x : *w.map_image) m.push_back(w.poset.label(x));
      wj["map"] = m;
    } else {
      wj["map"] = nullptr;
    }
    auto elems = nlohmann::json::object();
    for (const auto& [role, idx] : w.elements) elems[role] = w.poset.label(idx);
    wj["elements"] = elems;
    if (w.partition) {
      auto groups = nlohmann::json::array();
      int k = *std::max_element(w.partition->begin(), w.partition->end()) + 1;
      for (int c = 0; c < k; ++c) {
        auto g = nlohmann::json::array();
        for (int x = 0; x < w.poset.size(); ++x)
          if ((*w.partition)[x] == c) g.push_back(w.poset.label(x));
        groups.push_back(g);
      }
      wj["partition"] = groups;
    } else {
      wj["partition"] = nullptr;
    }
    j["witness"] = wj;
  }
  return j.dump();
}

}  // namespace posetkit
