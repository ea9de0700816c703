// Shared helpers for the test suites: bundled grammar loading, independent
// brute-force oracles, and seeded random generators. Everything here stays
// independent of the enumeration/image code paths it is used to check.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parikh/parikh.hpp"

namespace testsupport {

inline std::string grammars_dir() { return PARIKH_GRAMMARS_DIR; }

inline parikh::Grammar load_grammar(const std::string& name) {
  std::ifstream in(grammars_dir() + "/" + name);
  if (!in) throw std::runtime_error("missing bundled grammar: " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parikh::parse_grammar(ss.str());
}

/// The bundled grammars with a nonempty language.
inline std::vector<std::string> nonempty_grammars() {
  return {"anbn.cfg", "dup.cfg", "parens.cfg", "expr.cfg", "unreachable.cfg"};
}

inline std::vector<std::string> all_grammars() {
  auto v = nonempty_grammars();
  v.push_back("empty.cfg");
  return v;
}

// ---------------------------------------------------------------------------
// Brute-force tree enumeration (independent of parikh/enumerate.hpp)
// ---------------------------------------------------------------------------

namespace detail {

// All trees rooted at sym with exactly `nodes` nodes (leaves included).
inline std::vector<parikh::Tree> trees_exact(const parikh::Grammar& g,
                                             const parikh::Symbol& sym,
                                             std::size_t nodes) {
  using parikh::Symbol;
  using parikh::SymbolKind;
  using parikh::Tree;
  std::vector<Tree> out;
  if (sym.kind == SymbolKind::Terminal) {
    if (nodes == 1) out.push_back(Tree::terminal(sym.name));
    return out;
  }
  if (sym.kind == SymbolKind::Epsilon) {
    if (nodes == 1) out.push_back(Tree::epsilon());
    return out;
  }
  if (nodes < 2) return out;
  for (const parikh::Rule* rule : g.rules_of(sym.name)) {
    const auto& rhs = rule->rhs;
    if (rhs.size() > nodes - 1) continue;
    // Distribute nodes-1 over the children, one or more each.
    std::vector<std::size_t> split(rhs.size(), 1);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left,
                   std::vector<Tree>& partial) -> void {
      if (pos == rhs.size()) {
        if (left == 0) out.push_back(Tree::node(sym.name, partial));
        return;
      }
      std::size_t min_rest = rhs.size() - pos - 1;
      for (std::size_t take = 1; take + min_rest <= left; ++take) {
        for (const Tree& t : trees_exact(g, rhs[pos], take)) {
          partial.push_back(t);
          self(self, pos + 1, left - take, partial);
          partial.pop_back();
        }
      }
    };
    std::vector<Tree> partial;
    rec(rec, 0, nodes - 1, partial);
  }
  return out;
}

}  // namespace detail

/// Every derivation tree of g with at most max_nodes nodes, brute force.
inline std::vector<parikh::Tree> all_derivation_trees(const parikh::Grammar& g,
                                                      std::size_t max_nodes) {
  std::vector<parikh::Tree> out;
  parikh::Symbol start{parikh::SymbolKind::Nonterminal, g.start()};
  for (std::size_t n = 1; n <= max_nodes; ++n)
    for (auto& t : detail::trees_exact(g, start, n)) out.push_back(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Random derivation trees
// ---------------------------------------------------------------------------

/// Shallowest derivation-subtree depth per nonterminal, in edges; SIZE_MAX
/// for unproductive ones.
inline std::map<std::string, std::size_t> min_depths(const parikh::Grammar& g) {
  std::map<std::string, std::size_t> best;
  for (const auto& nt : g.nonterminals()) best[nt] = SIZE_MAX;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : g.rules()) {
      std::size_t deepest = 0;
      bool known = true;
      for (const auto& sym : rule.rhs) {
        if (sym.kind != parikh::SymbolKind::Nonterminal) continue;
        std::size_t m = best[sym.name];
        if (m == SIZE_MAX) {
          known = false;
          break;
        }
        deepest = std::max(deepest, m);
      }
      if (known && deepest + 1 < best[rule.lhs]) {
        best[rule.lhs] = deepest + 1;
        changed = true;
      }
    }
  }
  return best;
}

/// Uniform-rule random derivation tree of depth at most max_depth; nullopt
/// when the start symbol cannot finish within the bound.
inline std::optional<parikh::Tree> random_derivation_tree(
    const parikh::Grammar& g, std::size_t max_depth, std::mt19937& rng) {
  auto depths = min_depths(g);
  if (depths.at(g.start()) == SIZE_MAX || depths.at(g.start()) > max_depth)
    return std::nullopt;

  auto build = [&](auto&& self, const std::string& nt,
                   std::size_t budget) -> parikh::Tree {
    std::vector<const parikh::Rule*> applicable;
    for (const parikh::Rule* rule : g.rules_of(nt)) {
      bool fits = true;
      for (const auto& sym : rule->rhs)
        if (sym.kind == parikh::SymbolKind::Nonterminal &&
            (depths.at(sym.name) == SIZE_MAX || depths.at(sym.name) > budget - 1))
          fits = false;
      if (fits) applicable.push_back(rule);
    }
    const parikh::Rule* rule =
        applicable[std::uniform_int_distribution<std::size_t>(
            0, applicable.size() - 1)(rng)];
    std::vector<parikh::Tree> children;
    for (const auto& sym : rule->rhs) {
      switch (sym.kind) {
        case parikh::SymbolKind::Terminal:
          children.push_back(parikh::Tree::terminal(sym.name));
          break;
        case parikh::SymbolKind::Epsilon:
          children.push_back(parikh::Tree::epsilon());
          break;
        case parikh::SymbolKind::Nonterminal:
          children.push_back(self(self, sym.name, budget - 1));
          break;
      }
    }
    return parikh::Tree::node(nt, std::move(children));
  };
  return build(build, g.start(), max_depth);
}

// ---------------------------------------------------------------------------
// Independent deciders
// ---------------------------------------------------------------------------

/// Exhaustive coefficient search for linear-set membership, every xi up to
/// coeff_bound, pruning branches that already overshoot some coordinate.
inline bool member_linear_exhaustive(const parikh::LinearSet& l,
                                     const parikh::Vector& u,
                                     std::uint64_t coeff_bound = 30) {
  if (!parikh::dominated_by(l.base, u)) return false;
  auto rec = [&](auto&& self, std::size_t i, parikh::Vector acc) -> bool {
    if (acc == u) return true;
    if (i == l.periods.size()) return false;
    for (std::uint64_t x = 0; x <= coeff_bound; ++x) {
      parikh::Vector next = acc;
      bool over = false;
      for (std::size_t j = 0; j < next.size(); ++j) {
        next[j] += l.periods[i][j] * x;
        if (next[j] > u[j]) over = true;
      }
      if (over) break;  // adding more of this period only grows coordinates
      if (self(self, i + 1, next)) return true;
    }
    return false;
  };
  return rec(rec, 0, l.base);
}

/// Permutation-search ground truth for adjoinability: some ordering of the
/// items must find every root available, accumulating introduced sets.
struct PoolItem {
  std::string root;
  std::set<std::string> introduced;
};

inline bool adjoinable_by_permutations(const std::set<std::string>& available0,
                                       std::vector<PoolItem> items) {
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end());
  do {
    std::set<std::string> available = available0;
    bool ok = true;
    for (std::size_t i : idx) {
      if (!available.count(items[i].root)) {
        ok = false;
        break;
      }
      available.insert(items[i].introduced.begin(), items[i].introduced.end());
    }
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

}  // namespace testsupport
