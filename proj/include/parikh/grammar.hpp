#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "parikh/errors.hpp"

namespace parikh {

/// Reserved token for the empty string; usable anywhere in a rule rhs.
inline constexpr const char* kEpsilon = "eps";

enum class SymbolKind { Nonterminal, Terminal, Epsilon };

struct Symbol {
  SymbolKind kind;
  std::string name;  // "eps" for Epsilon

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

/// lhs -> rhs, rhs nonempty. An empty production is written as the single
/// token "eps"; eps may also be interleaved with other symbols.
struct Rule {
  std::string lhs;
  std::vector<Symbol> rhs;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Context-free grammar with a fixed alphabet ordering. The alphabet order
/// is set by the declaration line and defines the coordinate order of every
/// Parikh vector derived from this grammar. Immutable after parsing.
class Grammar {
public:
  Grammar(std::vector<std::string> nonterminals,
          std::vector<std::string> alphabet, std::vector<Rule> rules,
          std::string start)
      : nonterminals_(std::move(nonterminals)),
        alphabet_(std::move(alphabet)),
        rules_(std::move(rules)),
        start_(std::move(start)) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      terminal_index_[alphabet_[i]] = i;
    nonterminal_set_.insert(nonterminals_.begin(), nonterminals_.end());
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      rules_by_lhs_[rules_[i].lhs].push_back(i);
      rule_keys_.insert(rule_key(rules_[i].lhs, symbol_names(rules_[i].rhs)));
    }
  }

  const std::vector<std::string>& nonterminals() const {
    return nonterminals_;
  }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::string& start() const { return start_; }

  bool is_nonterminal(const std::string& name) const {
    return nonterminal_set_.count(name) > 0;
  }
  bool is_terminal(const std::string& name) const {
    return terminal_index_.count(name) > 0;
  }

  /// Index of a terminal in Parikh coordinate order.
  std::size_t terminal_index(const std::string& name) const {
    auto it = terminal_index_.find(name);
    if (it == terminal_index_.end())
      throw error("unknown letter: " + name);
    return it->second;
  }

  /// Rules with the given lhs, in declaration order.
  std::vector<const Rule*> rules_of(const std::string& lhs) const {
    std::vector<const Rule*> out;
    auto it = rules_by_lhs_.find(lhs);
    if (it == rules_by_lhs_.end()) return out;
    out.reserve(it->second.size());
    for (auto i : it->second) out.push_back(&rules_[i]);
    return out;
  }

  /// True iff (lhs, names) is a rule, where names are the rhs symbol names
  /// in order ("eps" included verbatim).
  bool has_rule(const std::string& lhs,
                const std::vector<std::string>& names) const {
    return rule_keys_.count(rule_key(lhs, names)) > 0;
  }

  friend bool operator==(const Grammar& a, const Grammar& b) {
    return a.nonterminals_ == b.nonterminals_ && a.alphabet_ == b.alphabet_ &&
           a.rules_ == b.rules_ && a.start_ == b.start_;
  }

private:
  static std::vector<std::string> symbol_names(const std::vector<Symbol>& rhs) {
    std::vector<std::string> names;
    names.reserve(rhs.size());
    for (const auto& s : rhs) names.push_back(s.name);
    return names;
  }

  static std::string rule_key(const std::string& lhs,
                              const std::vector<std::string>& names) {
    std::string key = lhs;
    key += '\x1f';
    for (const auto& n : names) {
      key += n;
      key += '\x1f';
    }
    return key;
  }

  std::vector<std::string> nonterminals_;  // start first, then lhs order
  std::vector<std::string> alphabet_;      // Parikh coordinate order
  std::vector<Rule> rules_;                // declaration order, deduplicated
  std::string start_;

  std::unordered_set<std::string> nonterminal_set_;
  std::unordered_map<std::string, std::size_t> terminal_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> rules_by_lhs_;
  std::unordered_set<std::string> rule_keys_;
};

/// d = |alphabet|.
inline std::size_t parikh_dimension(const Grammar& g) {
  return g.alphabet().size();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace detail

/// Parses the line-oriented grammar file format:
///
///   start: S
///   alphabet: a b
///   S -> a S b | eps
///
/// Alternatives split on '|', tokens are whitespace separated, "eps" is
/// reserved for the empty string, '#' starts a comment, blank lines are
/// ignored. The alphabet may be empty. Nonterminals are the rule left-hand
/// sides plus the start symbol.
inline Grammar parse_grammar(const std::string& text) {
  struct RawRule {
    std::string lhs;
    std::vector<std::vector<std::string>> alternatives;
    std::size_t line_no;
  };

  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '\n') {
        lines.push_back(text.substr(start, i - start));
        start = i + 1;
      }
    }
  }

  std::string start_symbol;
  bool have_start = false;
  std::vector<std::string> alphabet;
  bool have_alphabet = false;
  std::vector<RawRule> raw_rules;

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string line = detail::strip_comment(lines[ln]);
    auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;

    if (!have_start) {
      if (tokens[0] != "start:")
        throw parse_error("expected 'start: <NT>' as first declaration",
                          ln + 1, 1);
      if (tokens.size() != 2)
        throw parse_error("start declaration takes exactly one symbol",
                          ln + 1, 1);
      start_symbol = tokens[1];
      if (start_symbol == kEpsilon)
        throw parse_error("'eps' is reserved and cannot be the start symbol",
                          ln + 1, 1);
      have_start = true;
      continue;
    }
    if (!have_alphabet) {
      if (tokens[0] != "alphabet:")
        throw parse_error("expected 'alphabet: <t1> <t2> ...' declaration",
                          ln + 1, 1);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == kEpsilon)
          throw parse_error("'eps' is reserved and cannot be a terminal",
                            ln + 1, 1);
        if (std::find(alphabet.begin(), alphabet.end(), tokens[i]) !=
            alphabet.end())
          throw parse_error("duplicate alphabet token: " + tokens[i], ln + 1,
                            1);
        alphabet.push_back(tokens[i]);
      }
      have_alphabet = true;
      continue;
    }

    // Rule line: <NT> -> alt | alt | ...
    if (tokens.size() < 2 || tokens[1] != "->")
      throw parse_error("expected '<NT> -> ...' rule line", ln + 1, 1);
    std::string lhs = tokens[0];
    if (lhs == kEpsilon)
      throw parse_error("'eps' is reserved and cannot be a nonterminal",
                        ln + 1, 1);
    // Locate the arrow token after the lhs, then split the remainder on
    // '|' so alternatives need not be spaced.
    std::size_t p = 0;
    while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
    p += lhs.size();
    auto arrow = line.find("->", p);
    std::string rest = line.substr(arrow + 2);
    RawRule raw{lhs, {}, ln + 1};
    std::size_t seg_start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i == rest.size() || rest[i] == '|') {
        auto alt = detail::split_ws(rest.substr(seg_start, i - seg_start));
        if (alt.empty())
          throw parse_error("empty rhs in rule for " + lhs, ln + 1, 1);
        raw.alternatives.push_back(std::move(alt));
        seg_start = i + 1;
      }
    }
    raw_rules.push_back(std::move(raw));
  }

  if (!have_start) throw parse_error("missing 'start:' declaration");
  if (!have_alphabet) throw parse_error("missing 'alphabet:' declaration");

  // Nonterminals: start first, then lhs symbols in order of appearance.
  std::vector<std::string> nonterminals{start_symbol};
  std::unordered_set<std::string> nt_set{start_symbol};
  for (const auto& raw : raw_rules) {
    if (nt_set.insert(raw.lhs).second) nonterminals.push_back(raw.lhs);
  }

  std::unordered_set<std::string> terminal_set(alphabet.begin(),
                                               alphabet.end());
  for (const auto& nt : nonterminals) {
    if (terminal_set.count(nt))
      throw parse_error("symbol '" + nt +
                        "' is declared both terminal and nonterminal");
  }

  std::vector<Rule> rules;
  std::unordered_set<std::string> seen_rules;
  for (const auto& raw : raw_rules) {
    for (const auto& alt : raw.alternatives) {
      Rule rule{raw.lhs, {}};
      std::string key = raw.lhs + '\x1f';
      for (const auto& tok : alt) {
        Symbol sym;
        if (tok == kEpsilon)
          sym = {SymbolKind::Epsilon, kEpsilon};
        else if (terminal_set.count(tok))
          sym = {SymbolKind::Terminal, tok};
        else if (nt_set.count(tok))
          sym = {SymbolKind::Nonterminal, tok};
        else
          throw parse_error("undeclared symbol '" + tok + "' in rule for " +
                                raw.lhs,
                            raw.line_no, 1);
        rule.rhs.push_back(sym);
        key += tok;
        key += '\x1f';
      }
      if (seen_rules.insert(key).second) rules.push_back(std::move(rule));
    }
  }

  return Grammar(std::move(nonterminals), std::move(alphabet),
                 std::move(rules), std::move(start_symbol));
}

/// Re-emits the grammar file format; parse_grammar(to_text(g)) == g.
inline std::string to_text(const Grammar& g) {
  std::string out = "start: " + g.start() + "\n";
  out += "alphabet:";
  for (const auto& t : g.alphabet()) {
    out += ' ';
    out += t;
  }
  out += '\n';
  for (const auto& rule : g.rules()) {
    out += rule.lhs + " ->";
    for (const auto& sym : rule.rhs) {
      out += ' ';
      out += sym.name;
    }
    out += '\n';
  }
  return out;
}

}  // namespace parikh
