#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parikh/errors.hpp"
#include "parikh/grammar.hpp"
#include "parikh/tree.hpp"
#include "parikh/vector.hpp"

namespace parikh {

inline constexpr std::size_t kDefaultEnumerationBudget = 1000000;

/// All rule-valid simple derivation trees of a grammar, canonically
/// ordered. Finite because a simple tree never repeats a nonterminal on a
/// path.
struct SimpleTreeSet {
  std::vector<Tree> trees;
};

/// All rule-valid simple adjunct trees, for every root nonterminal,
/// canonically ordered.
struct AdjunctSet {
  std::vector<AdjunctTree> adjuncts;
};

/// Deduplication key for adjuncts: the image construction depends on an
/// adjunct only through its root, the nonterminals it introduces, and its
/// Parikh vector.
struct AdjunctClass {
  std::string root;
  std::set<std::string> introduced;  // N(alpha), root included
  Vector parikh;
  AdjunctTree representative;

  friend bool operator==(const AdjunctClass& a, const AdjunctClass& b) {
    return a.root == b.root && a.introduced == b.introduced &&
           a.parikh == b.parikh;
  }
};

namespace detail {

class Enumerator {
public:
  Enumerator(const Grammar& g, std::size_t budget) : g_(g), budget_(budget) {}

  // All simple rule-valid trees rooted at nt; path holds the nonterminals
  // already on the root-to-here path, nt included.
  std::vector<Tree> plain(const std::string& nt,
                          const std::set<std::string>& path) {
    std::vector<Tree> out;
    for (const Rule* rule : g_.rules_of(nt)) {
      std::vector<std::vector<Tree>> options;
      if (!child_options(rule->rhs, path, options)) continue;
      product(nt, options, out);
    }
    return out;
  }

  // All simple rule-valid bodies rooted at an internal node labeled nt
  // that contain exactly one marked leaf *mark_label. path holds the
  // nonterminals on the child-of-adjunct-root-to-here path, nt included
  // when below the adjunct root; for the adjunct root itself the children
  // start fresh paths (root_level = true).
  std::vector<Tree> marked(const std::string& nt,
                           const std::set<std::string>& path,
                           const std::string& mark_label, bool root_level) {
    std::vector<Tree> out;
    for (const Rule* rule : g_.rules_of(nt)) {
      for (std::size_t mark_pos = 0; mark_pos < rule->rhs.size(); ++mark_pos) {
        const Symbol& sym = rule->rhs[mark_pos];
        if (sym.kind != SymbolKind::Nonterminal) continue;

        std::vector<Tree> carriers;
        // The marked leaf occupies an occurrence of mark_label on its
        // path, so it obeys the same non-repetition constraint.
        if (sym.name == mark_label && path.count(mark_label) == 0)
          carriers.push_back(Tree::marked(mark_label));
        if (path.count(sym.name) == 0) {
          std::set<std::string> sub_path = path;
          sub_path.insert(sym.name);
          for (auto& t : marked(sym.name, sub_path, mark_label, false))
            carriers.push_back(std::move(t));
        }
        if (carriers.empty()) continue;

        std::vector<std::vector<Tree>> options;
        options.reserve(rule->rhs.size());
        bool viable = true;
        for (std::size_t j = 0; j < rule->rhs.size() && viable; ++j) {
          if (j == mark_pos) {
            options.push_back(carriers);
            continue;
          }
          const Symbol& other = rule->rhs[j];
          switch (other.kind) {
            case SymbolKind::Terminal:
              options.push_back({Tree::terminal(other.name)});
              break;
            case SymbolKind::Epsilon:
              options.push_back({Tree::epsilon()});
              break;
            case SymbolKind::Nonterminal: {
              std::set<std::string> sub_path =
                  root_level ? std::set<std::string>{} : path;
              if (!sub_path.insert(other.name).second) {
                viable = false;
                break;
              }
              auto subtrees = plain(other.name, sub_path);
              if (subtrees.empty()) {
                viable = false;
                break;
              }
              options.push_back(std::move(subtrees));
              break;
            }
          }
        }
        if (viable) product(nt, options, out);
      }
    }
    return out;
  }

private:
  // Child subtree options for one rule under the path constraint; false
  // when some child position admits no tree.
  bool child_options(const std::vector<Symbol>& rhs,
                     const std::set<std::string>& path,
                     std::vector<std::vector<Tree>>& options) {
    options.clear();
    options.reserve(rhs.size());
    for (const Symbol& sym : rhs) {
      switch (sym.kind) {
        case SymbolKind::Terminal:
          options.push_back({Tree::terminal(sym.name)});
          break;
        case SymbolKind::Epsilon:
          options.push_back({Tree::epsilon()});
          break;
        case SymbolKind::Nonterminal: {
          if (path.count(sym.name)) return false;
          std::set<std::string> sub_path = path;
          sub_path.insert(sym.name);
          auto subtrees = plain(sym.name, sub_path);
          if (subtrees.empty()) return false;
          options.push_back(std::move(subtrees));
          break;
        }
      }
    }
    return true;
  }

  void product(const std::string& label,
               const std::vector<std::vector<Tree>>& options,
               std::vector<Tree>& out) {
    std::vector<Tree> combo(options.size(), Tree::epsilon());
    build(label, options, 0, combo, out);
  }

  void build(const std::string& label,
             const std::vector<std::vector<Tree>>& options, std::size_t pos,
             std::vector<Tree>& combo, std::vector<Tree>& out) {
    if (pos == options.size()) {
      if (++produced_ > budget_)
        throw budget_exceeded("enumeration budget exceeded", produced_ - 1);
      out.push_back(Tree::node(label, combo));
      return;
    }
    for (const Tree& option : options[pos]) {
      combo[pos] = option;
      build(label, options, pos + 1, combo, out);
    }
  }

  const Grammar& g_;
  std::size_t budget_;
  std::size_t produced_ = 0;
};

}  // namespace detail

/// Enumerates exactly the simple derivation trees of g: root is the start
/// symbol, every internal node matches a rule, and no nonterminal repeats
/// on any root-to-leaf path. Depth-first, children left to right, rules in
/// declaration order; the result is canonically sorted.
///
/// Throws budget_exceeded when more than budget trees would be built.
inline SimpleTreeSet enumerate_simple_trees(
    const Grammar& g, std::size_t budget = kDefaultEnumerationBudget) {
  detail::Enumerator e(g, budget);
  SimpleTreeSet result;
  result.trees = e.plain(g.start(), {g.start()});
  std::sort(result.trees.begin(), result.trees.end(), CanonicalLess{});
  result.trees.erase(std::unique(result.trees.begin(), result.trees.end()),
                     result.trees.end());
  return result;
}

/// Enumerates all rule-valid simple adjunct trees over g, for every root
/// nonterminal -- including roots unreachable from any simple tree; the
/// adjoinability filter excludes those from the image later.
inline AdjunctSet enumerate_simple_adjuncts(
    const Grammar& g, std::size_t budget = kDefaultEnumerationBudget) {
  detail::Enumerator e(g, budget);
  AdjunctSet result;
  for (const auto& nt : g.nonterminals()) {
    for (auto& body : e.marked(nt, {}, nt, /*root_level=*/true))
      result.adjuncts.push_back(AdjunctTree(std::move(body)));
  }
  std::sort(result.adjuncts.begin(), result.adjuncts.end(), CanonicalLess{});
  result.adjuncts.erase(
      std::unique(result.adjuncts.begin(), result.adjuncts.end()),
      result.adjuncts.end());
  return result;
}

/// Groups adjuncts by (root, introduced nonterminals, Parikh vector); one
/// canonical representative is kept per class. Classes are ordered by key.
inline std::vector<AdjunctClass> classify(const AdjunctSet& adjuncts,
                                          const Grammar& g) {
  std::vector<AdjunctClass> classes;
  for (const auto& alpha : adjuncts.adjuncts) {
    AdjunctClass key{alpha.root(), nonterminals_of(alpha),
                     parikh_of_adjunct(alpha, g), alpha};
    auto it = std::find(classes.begin(), classes.end(), key);
    if (it == classes.end()) classes.push_back(std::move(key));
  }
  auto by_key = [](const AdjunctClass& a, const AdjunctClass& b) {
    if (a.root != b.root) return a.root < b.root;
    if (a.introduced != b.introduced) return a.introduced < b.introduced;
    return a.parikh < b.parikh;
  };
  std::sort(classes.begin(), classes.end(), by_key);
  return classes;
}

namespace detail {

// Fixpoint closure over introduced nonterminals: an element becomes usable
// once its root is available and then contributes what it introduces.
template <typename Root, typename Introduced>
inline bool adjoinable_closure(std::set<std::string> available,
                               std::size_t count, const Root& root_of,
                               const Introduced& introduced_of) {
  std::vector<bool> used(count, false);
  std::size_t remaining = count;
  bool progress = true;
  while (progress && remaining > 0) {
    progress = false;
    for (std::size_t i = 0; i < count; ++i) {
      if (used[i] || available.count(root_of(i)) == 0) continue;
      used[i] = true;
      --remaining;
      const auto& intro = introduced_of(i);
      available.insert(intro.begin(), intro.end());
      progress = true;
    }
  }
  return remaining == 0;
}

}  // namespace detail

/// True iff some adjoining order starting from t uses every member of s:
/// each root must be available in N(t) or introduced by an earlier member.
inline bool adjoinable(const Tree& t, const std::vector<AdjunctTree>& s) {
  std::vector<std::set<std::string>> intro;
  intro.reserve(s.size());
  for (const auto& a : s) intro.push_back(nonterminals_of(a));
  return detail::adjoinable_closure(
      nonterminals_of(t), s.size(), [&](std::size_t i) { return s[i].root(); },
      [&](std::size_t i) -> const std::set<std::string>& { return intro[i]; });
}

inline bool adjoinable(const Tree& t, const std::vector<AdjunctClass>& s) {
  return detail::adjoinable_closure(
      nonterminals_of(t), s.size(), [&](std::size_t i) { return s[i].root; },
      [&](std::size_t i) -> const std::set<std::string>& {
        return s[i].introduced;
      });
}

/// Closure variant starting from an explicit set of available
/// nonterminals; used by the image construction over class subsets.
inline bool adjoinable_from(const std::set<std::string>& available,
                            const std::vector<const AdjunctClass*>& s) {
  return detail::adjoinable_closure(
      available, s.size(), [&](std::size_t i) { return s[i]->root; },
      [&](std::size_t i) -> const std::set<std::string>& {
        return s[i]->introduced;
      });
}

}  // namespace parikh
