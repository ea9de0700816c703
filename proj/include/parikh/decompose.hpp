#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parikh/grammar.hpp"
#include "parikh/tree.hpp"

namespace parikh {

/// Split of a tree into a simple core and a set of simple adjunct pumps.
/// The pumps are kept canonically sorted and deduplicated; reassembling the
/// original tree may need a pump more than once.
struct Decomposition {
  Tree core;
  std::vector<AdjunctTree> pumps;
};

namespace detail {

inline void insert_pump(std::vector<AdjunctTree>& pumps, AdjunctTree alpha) {
  auto pos = std::lower_bound(pumps.begin(), pumps.end(), alpha,
                              CanonicalLess{});
  if (pos != pumps.end() && *pos == alpha) return;
  pumps.insert(pos, std::move(alpha));
}

// Left-most target-rooted subtree of t in pre-order, skipping t itself.
// Returns the extracted subtree and t with that subtree replaced by a
// marked leaf.
inline std::optional<std::pair<Tree, Tree>> extract_leftmost_proper(
    const Tree& t, const std::string& target) {
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    const Tree& c = t.children[i];
    std::optional<std::pair<Tree, Tree>> hit;
    if (c.kind == NodeKind::Node && c.label == target) {
      hit = {c, Tree::marked(target)};
    } else {
      hit = extract_leftmost_proper(c, target);
    }
    if (hit) {
      Tree copy = t;
      copy.children[i] = std::move(hit->second);
      return {{std::move(hit->first), std::move(copy)}};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Decomposes a tree into a simple core and simple adjunct pumps.
///
/// Leaves decompose to themselves with no pumps. For a node X(T1,...,Tn)
/// the children are decomposed first; if X does not occur in any child
/// core, the rebuilt node is the core. Otherwise the core is the left-most
/// X-rooted proper subtree of the rebuilt node and the pump is the rebuilt
/// node with that subtree replaced by the marked leaf.
inline Decomposition decompose(const Tree& t) {
  if (t.is_leaf()) return {t, {}};

  std::vector<Tree> cores;
  cores.reserve(t.children.size());
  std::vector<AdjunctTree> pumps;
  for (const auto& c : t.children) {
    Decomposition d = decompose(c);
    cores.push_back(std::move(d.core));
    for (auto& p : d.pumps) detail::insert_pump(pumps, std::move(p));
  }

  bool label_below = false;
  for (const auto& c : cores)
    if (nonterminals_of(c).count(t.label)) {
      label_below = true;
      break;
    }

  Tree rebuilt = Tree::node(t.label, std::move(cores));
  if (!label_below) return {std::move(rebuilt), std::move(pumps)};

  auto extracted = detail::extract_leftmost_proper(rebuilt, t.label);
  // label_below guarantees a proper occurrence exists
  detail::insert_pump(pumps, AdjunctTree(std::move(extracted->second)));
  return {std::move(extracted->first), std::move(pumps)};
}

/// Outcome of checking the three decomposition claims on a derivation
/// tree: (1) the core is simple and itself a derivation tree, (2) every
/// pump is a simple, rule-valid adjunct, (3) the tree is reassembled from
/// the core by adjoining every pump at least once.
struct LemmaReport {
  bool core_simple = false;
  bool core_derivation = false;
  bool pumps_simple = false;
  bool pumps_valid = false;
  bool reconstructed = false;
  std::string failure;  // witness for the first failing claim, if any
  /// Adjoining count per pump (canonical pump order) found by the
  /// reconstruction search.
  std::vector<std::size_t> multiplicities;
  std::size_t nodes_explored = 0;

  bool pass() const {
    return core_simple && core_derivation && pumps_simple && pumps_valid &&
           reconstructed;
  }
};

namespace detail {

inline bool contains_mark(const Tree& t) {
  if (t.kind == NodeKind::Marked) return true;
  for (const auto& c : t.children)
    if (contains_mark(c)) return true;
  return false;
}

// Matches a mark-containing adjunct body fragment against a subtree:
// every unmarked position must agree exactly and the marked leaf must sit
// on a node carrying its label. Returns the subtree found under the mark.
inline std::optional<Tree> match_body(const Tree& body, const Tree& s) {
  if (body.kind == NodeKind::Marked) {
    if (s.kind == NodeKind::Node && s.label == body.label) return s;
    return std::nullopt;
  }
  if (s.kind != NodeKind::Node || s.label != body.label ||
      s.children.size() != body.children.size())
    return std::nullopt;
  std::optional<Tree> under_mark;
  for (std::size_t i = 0; i < body.children.size(); ++i) {
    if (contains_mark(body.children[i])) {
      under_mark = match_body(body.children[i], s.children[i]);
      if (!under_mark) return std::nullopt;
    } else if (body.children[i] != s.children[i]) {
      return std::nullopt;
    }
  }
  return under_mark;
}

// Searches adjoining orders in reverse: repeatedly un-adjoins some pump
// occurrence until the core is reached with every pump used at least once.
class ReconstructionSearch {
public:
  ReconstructionSearch(const Tree& core, const std::vector<AdjunctTree>& pumps,
                       std::size_t node_budget)
      : core_text_(to_text(core)), pumps_(pumps), budget_(node_budget) {}

  bool run(const Tree& target, std::vector<std::size_t>& multiplicities,
           std::size_t& explored) {
    multiplicities.assign(pumps_.size(), 0);
    std::vector<std::size_t> mult(pumps_.size(), 0);
    bool ok = search(target, 0, mult, multiplicities);
    explored = explored_;
    return ok;
  }

  bool budget_hit() const { return budget_hit_; }

private:
  bool search(const Tree& t, std::size_t used_mask,
              std::vector<std::size_t>& mult,
              std::vector<std::size_t>& out_mult) {
    if (++explored_ > budget_) {
      budget_hit_ = true;
      return false;
    }
    std::string key = to_text(t) + '#' + std::to_string(used_mask);
    if (!visited_.insert(std::move(key)).second) return false;
    if (to_text(t) == core_text_ &&
        used_mask + 1 == (std::size_t{1} << pumps_.size())) {
      out_mult = mult;
      return true;
    }
    for (std::size_t p = 0; p < pumps_.size(); ++p) {
      const AdjunctTree& alpha = pumps_[p];
      std::size_t occ = count_occurrences(t, alpha.root());
      for (std::size_t k = 0; k < occ; ++k) {
        if (auto shrunk = un_adjoin(t, alpha, k)) {
          ++mult[p];
          if (search(*shrunk, used_mask | (std::size_t{1} << p), mult,
                     out_mult))
            return true;
          --mult[p];
          if (budget_hit_) return false;
        }
      }
    }
    return false;
  }

  // Un-adjoins alpha at the k-th occurrence of its root: if the subtree
  // there matches the body, it is replaced by whatever sat under the mark.
  static std::optional<Tree> un_adjoin(const Tree& t, const AdjunctTree& alpha,
                                       std::size_t k) {
    bool matched = true;
    std::size_t remaining = k;
    auto result = replace_occurrence(
        t, alpha.root(), remaining, [&](const Tree& s) {
          if (auto u = match_body(alpha.body(), s)) return *u;
          matched = false;
          return s;
        });
    if (!result || !matched) return std::nullopt;
    return result;
  }

  std::string core_text_;
  const std::vector<AdjunctTree>& pumps_;
  std::size_t budget_;
  std::size_t explored_ = 0;
  bool budget_hit_ = false;
  std::set<std::string> visited_;
};

}  // namespace detail

/// Verifies the three decomposition claims for a derivation tree of g.
/// Claim 3 is checked constructively by bounded search over un-adjoining
/// orders; node_budget caps the number of search states.
inline LemmaReport check_lemma(const Tree& t, const Grammar& g,
                               std::size_t node_budget = 100000) {
  LemmaReport report;
  Decomposition d = decompose(t);

  report.core_simple = is_simple_tree(d.core);
  if (!report.core_simple) report.failure = "core not simple: " + to_text(d.core);
  report.core_derivation = is_derivation_tree(d.core, g);
  if (report.failure.empty() && !report.core_derivation)
    report.failure = "core not a derivation tree: " + to_text(d.core);

  report.pumps_simple = true;
  report.pumps_valid = true;
  for (const auto& p : d.pumps) {
    if (!is_simple_adjunct(p)) {
      report.pumps_simple = false;
      if (report.failure.empty())
        report.failure = "pump not simple: " + to_text(p);
    }
    if (!is_valid_adjunct(p, g)) {
      report.pumps_valid = false;
      if (report.failure.empty())
        report.failure = "pump not rule-valid: " + to_text(p);
    }
  }

  detail::ReconstructionSearch search(d.core, d.pumps, node_budget);
  report.reconstructed =
      search.run(t, report.multiplicities, report.nodes_explored);
  if (report.failure.empty() && !report.reconstructed)
    report.failure = search.budget_hit()
                         ? "reconstruction search budget exceeded"
                         : "tree not reassembled from core and pumps";
  return report;
}

}  // namespace parikh
