#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parikh/errors.hpp"
#include "parikh/grammar.hpp"
#include "parikh/semilinear.hpp"
#include "parikh/tree.hpp"
#include "parikh/vector.hpp"

namespace parikh {

/// Result of cross-validating a computed image against brute-force
/// language enumeration. Passes iff both vector lists are empty.
struct CrossCheckReport {
  std::size_t max_len = 0;
  std::size_t words_checked = 0;
  /// Parikh vectors of enumerated words the image rejected.
  std::vector<Vector> missing_vectors;
  /// Image-generated vectors (coefficient sum within budget) matched by no
  /// enumerated word.
  std::vector<Vector> unrealized_vectors;

  bool pass() const {
    return missing_vectors.empty() && unrealized_vectors.empty();
  }
};

namespace detail {

// Shortest yield derivable from each nonterminal; SIZE_MAX marks
// unproductive nonterminals. Standard fixpoint.
inline std::map<std::string, std::size_t> min_yield_lengths(const Grammar& g) {
  constexpr std::size_t inf = SIZE_MAX;
  std::map<std::string, std::size_t> best;
  for (const auto& nt : g.nonterminals()) best[nt] = inf;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : g.rules()) {
      std::size_t total = 0;
      bool known = true;
      for (const auto& sym : rule.rhs) {
        if (sym.kind == SymbolKind::Terminal) {
          ++total;
        } else if (sym.kind == SymbolKind::Nonterminal) {
          std::size_t m = best[sym.name];
          if (m == inf) {
            known = false;
            break;
          }
          total += m;
        }
      }
      if (known && total < best[rule.lhs]) {
        best[rule.lhs] = total;
        changed = true;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Exactly the words of L(G) of length at most max_len, computed by a
/// bottom-up closure: per-nonterminal word sets grow monotonically until
/// stable, with rule expansions pruned once the accumulated terminal count
/// plus the minimal completion of the remaining symbols exceeds max_len.
inline std::set<Word> enumerate_words(const Grammar& g, std::size_t max_len) {
  const auto min_len = detail::min_yield_lengths(g);
  std::map<std::string, std::set<Word>> words;
  for (const auto& nt : g.nonterminals()) words[nt];

  auto expand = [&](const Rule& rule, std::set<Word>& into) {
    // Minimal completion length of rhs[i..].
    std::vector<std::size_t> tail_min(rule.rhs.size() + 1, 0);
    for (std::size_t i = rule.rhs.size(); i-- > 0;) {
      std::size_t m = 0;
      if (rule.rhs[i].kind == SymbolKind::Terminal)
        m = 1;
      else if (rule.rhs[i].kind == SymbolKind::Nonterminal)
        m = min_len.at(rule.rhs[i].name);
      if (m == SIZE_MAX || tail_min[i + 1] == SIZE_MAX)
        tail_min[i] = SIZE_MAX;
      else
        tail_min[i] = m + tail_min[i + 1];
    }
    if (tail_min[0] == SIZE_MAX || tail_min[0] > max_len) return false;

    bool added = false;
    Word current;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (tail_min[pos] == SIZE_MAX ||
          current.size() + tail_min[pos] > max_len)
        return;
      if (pos == rule.rhs.size()) {
        added |= into.insert(current).second;
        return;
      }
      const Symbol& sym = rule.rhs[pos];
      switch (sym.kind) {
        case SymbolKind::Epsilon:
          self(self, pos + 1);
          break;
        case SymbolKind::Terminal:
          current.push_back(sym.name);
          self(self, pos + 1);
          current.pop_back();
          break;
        case SymbolKind::Nonterminal:
          for (const Word& w : words[sym.name]) {
            if (current.size() + w.size() + tail_min[pos + 1] > max_len)
              continue;
            current.insert(current.end(), w.begin(), w.end());
            self(self, pos + 1);
            current.resize(current.size() - w.size());
          }
          break;
      }
    };
    rec(rec, 0);
    return added;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : g.rules())
      if (expand(rule, words[rule.lhs])) changed = true;
  }
  return words[g.start()];
}

/// Independent second strategy: depth-first enumeration of leftmost
/// derivations, which corresponds one-to-one with derivation trees, with a
/// node-count cap and yield-length pruning. Used to guard against a
/// correlated bug between the closure enumerator and the main pipeline.
inline std::set<Word> enumerate_words_via_trees(const Grammar& g,
                                                std::size_t max_len,
                                                std::size_t max_nodes) {
  const auto min_len = detail::min_yield_lengths(g);
  std::set<Word> out;
  if (min_len.at(g.start()) == SIZE_MAX) return out;

  // Sentential form: emitted terminal prefix + remaining symbols, stored
  // reversed so the leftmost symbol is at the back. Expanding the leftmost
  // nonterminal enumerates each derivation tree exactly once; nodes counts
  // every tree node created so far, leaves included.
  auto run = [&](auto&& self, Word prefix, std::vector<Symbol> rest,
                 std::size_t nodes) -> void {
    if (nodes > max_nodes) return;
    while (!rest.empty() && rest.back().kind != SymbolKind::Nonterminal) {
      if (rest.back().kind == SymbolKind::Terminal)
        prefix.push_back(rest.back().name);
      rest.pop_back();
    }
    std::size_t need = 0;
    for (const auto& sym : rest) {
      if (sym.kind == SymbolKind::Terminal) {
        ++need;
      } else if (sym.kind == SymbolKind::Nonterminal) {
        std::size_t m = min_len.at(sym.name);
        if (m == SIZE_MAX) return;
        need += m;
      }
    }
    if (prefix.size() + need > max_len) return;
    if (rest.empty()) {
      out.insert(std::move(prefix));
      return;
    }
    Symbol nt = rest.back();
    rest.pop_back();
    for (const Rule* rule : g.rules_of(nt.name)) {
      std::vector<Symbol> next = rest;
      for (auto it = rule->rhs.rbegin(); it != rule->rhs.rend(); ++it)
        next.push_back(*it);
      self(self, prefix, std::move(next), nodes + rule->rhs.size());
    }
  };
  run(run, Word{}, {{SymbolKind::Nonterminal, g.start()}}, 1);
  return out;
}

/// Cross-validates a given image against enumeration in both directions:
/// every enumerated word's Parikh vector must be in the image, and every
/// image vector with coefficient sum at most coeff_budget and coordinate
/// total at most max_len must be realized by some enumerated word.
inline CrossCheckReport crosscheck(const Grammar& g, const SemilinearSet& image,
                                   std::size_t max_len,
                                   std::size_t coeff_budget = 4) {
  CrossCheckReport report;
  report.max_len = max_len;

  std::set<Word> words = enumerate_words(g, max_len);
  report.words_checked = words.size();

  std::set<Vector> realized;
  for (const Word& w : words) realized.insert(parikh_of_word(w, g));

  std::set<Vector> missing;
  for (const Vector& v : realized)
    if (!member(image, v)) missing.insert(v);
  report.missing_vectors.assign(missing.begin(), missing.end());

  // All coefficient assignments with sum <= coeff_budget, per component.
  std::set<Vector> unrealized;
  for (const LinearSet& l : image.components) {
    auto gen = [&](auto&& self, std::size_t i, Vector current,
                   std::size_t budget) -> void {
      if (i == l.periods.size()) {
        std::size_t total = 0;
        for (auto c : current) total += c;
        if (total <= max_len && realized.count(current) == 0)
          unrealized.insert(std::move(current));
        return;
      }
      for (std::size_t x = 0; x <= budget; ++x) {
        Vector next = current;
        for (std::size_t j = 0; j < next.size(); ++j)
          next[j] += l.periods[i][j] * x;
        self(self, i + 1, std::move(next), budget - x);
      }
    };
    gen(gen, 0, l.base, coeff_budget);
  }
  report.unrealized_vectors.assign(unrealized.begin(), unrealized.end());
  return report;
}

/// Builds the image and cross-validates it.
inline CrossCheckReport crosscheck(const Grammar& g, std::size_t max_len,
                                   std::size_t coeff_budget = 4,
                                   const BuildOptions& options = {}) {
  return crosscheck(g, build_image(g, options), max_len, coeff_budget);
}

/// Stable text rendering of a report.
inline std::string to_text(const CrossCheckReport& r) {
  std::string out;
  out += "max_len: " + std::to_string(r.max_len) + "\n";
  out += "words_checked: " + std::to_string(r.words_checked) + "\n";
  out += "missing_vectors:";
  if (r.missing_vectors.empty()) out += " none";
  for (const auto& v : r.missing_vectors) out += " " + to_text(v);
  out += "\n";
  out += "unrealized_vectors:";
  if (r.unrealized_vectors.empty()) out += " none";
  for (const auto& v : r.unrealized_vectors) out += " " + to_text(v);
  out += "\n";
  out += std::string("result: ") + (r.pass() ? "PASS" : "FAIL") + "\n";
  return out;
}

/// JSON rendering of a report.
inline std::string to_json(const CrossCheckReport& r) {
  std::string out = "{\"max_len\":" + std::to_string(r.max_len) +
                    ",\"words_checked\":" + std::to_string(r.words_checked) +
                    ",\"missing_vectors\":[";
  for (std::size_t i = 0; i < r.missing_vectors.size(); ++i) {
    if (i > 0) out += ',';
    detail::append_json_vector(out, r.missing_vectors[i]);
  }
  out += "],\"unrealized_vectors\":[";
  for (std::size_t i = 0; i < r.unrealized_vectors.size(); ++i) {
    if (i > 0) out += ',';
    detail::append_json_vector(out, r.unrealized_vectors[i]);
  }
  out += std::string("],\"pass\":") + (r.pass() ? "true" : "false") + "}";
  return out;
}

}  // namespace parikh
