#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "posetkit/construct.hpp"
#include "posetkit/mapping.hpp"
#include "posetkit/poset.hpp"

// Machine checks for every numbered statement: each verifier re-derives
// both sides of its claim through independent code paths and scans the
// full quantifier range at its budget.

namespace posetkit {

/// Self-contained counterexample: enough to rebuild the instance and
/// re-run the cited predicates.
struct Witness {
  Poset poset;
  std::optional<std::vector<int>> map_image;                // self-map on poset
  std::vector<std::pair<std::string, int>> elements;        // role -> index
  std::optional<std::vector<int>> partition;                // class_of table
  std::string clause;
};

struct Verdict {
  std::string statement_id;
  bool holds = true;
  std::uint64_t instances_checked = 0;
  std::optional<Witness> witness;
  double elapsed_seconds = 0.0;
  std::string note;

  /// Everything but the timing.
  bool same_outcome(const Verdict& o) const;
};

std::string verdict_text(const Verdict& v);
std::string verdict_json(const Verdict& v);  // schema documented in README

/// All labeled posets on n elements (1 <= n <= 6), each exactly once, in a
/// fixed order; with iso_dedup only the canonically-least representative of
/// each isomorphism class. Visitor returns false to stop.
void enumerate_posets(int n, bool iso_dedup, const std::function<bool(const Poset&)>& visit);
std::vector<Poset> all_posets(int n, bool iso_dedup = false);

// One verifier per statement. Budgets are the spec defaults; iso_dedup
// restricts poset-quantified scans to isomorphism-class representatives
// (every claim is isomorphism-invariant).
Verdict verify_lemma1(int n_max = 5, bool iso_dedup = false);
Verdict verify_lemma2(int n_max = 4, bool iso_dedup = false);
Verdict verify_injective_prop(int n_max = 4, bool iso_dedup = false);
Verdict verify_prop3_1(int n_max = 5, bool iso_dedup = false);
Verdict verify_thm3_2(int n_max = 5, bool iso_dedup = false);
Verdict verify_cover_remark(int n_max = 5, bool iso_dedup = false);
Verdict verify_strict_ucp_thm(int n_max = 5, bool iso_dedup = false);
Verdict verify_chain_props(int max_len = 6);
Verdict verify_thm4_1(int n_max = 5, bool iso_dedup = false);
Verdict verify_product_corollary(int max_product = 9);
Verdict verify_decomposability_lemma(int max_product = 9);
Verdict verify_minimal_upper_thm(int n_max = 5, bool iso_dedup = false);
Verdict verify_ordinal_sum_prop(int antichain_max = 3, int chain_max = 3);
Verdict verify_quotient_theorem(int n_max = 4, bool iso_dedup = false);

/// First counterexample to "hypothesis implies conclusion" over all
/// self-maps of all posets up to n_max, in enumeration order; or an
/// exhaustive pass. Predicate names per registered_predicates().
Verdict search_counterexample(const std::string& hypothesis, const std::string& conclusion,
                              int n_max, bool iso_dedup = false);
std::vector<std::string> registered_predicates();

struct StatementInfo {
  std::string id;
  std::string title;
  int default_budget;
  const char* budget_kind;  // what the budget bounds, for --help text
  std::function<Verdict(int budget, bool iso_dedup)> run;
};

const std::vector<StatementInfo>& statements();
const StatementInfo* find_statement(const std::string& id);

/// Worker threads for parallel scans: POSETKIT_WORKERS caps the hardware
/// count; results are merged deterministically.
int worker_count();

}  // namespace posetkit
