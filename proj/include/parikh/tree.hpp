#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parikh/errors.hpp"
#include "parikh/grammar.hpp"
#include "parikh/vector.hpp"

namespace parikh {

/// Yield of a tree: terminal tokens, left to right.
using Word = std::vector<std::string>;

enum class NodeKind {
  Node,      // internal node, nonterminal label, >= 1 child
  Terminal,  // leaf, alphabet token
  Epsilon,   // leaf, empty string
  Marked,    // leaf of an adjunct body; stands for the root nonterminal
};

/// Tree with nonterminal-labeled internal nodes and terminal/eps leaves.
/// Marked leaves appear only inside adjunct bodies. Immutable by
/// convention: operations build new trees.
struct Tree {
  NodeKind kind;
  std::string label;
  std::vector<Tree> children;  // nonempty iff kind == Node

  static Tree terminal(std::string token) {
    return Tree{NodeKind::Terminal, std::move(token), {}};
  }
  static Tree epsilon() { return Tree{NodeKind::Epsilon, kEpsilon, {}}; }
  static Tree marked(std::string nonterminal) {
    return Tree{NodeKind::Marked, std::move(nonterminal), {}};
  }
  static Tree node(std::string nonterminal, std::vector<Tree> children) {
    if (children.empty())
      throw error("internal node '" + nonterminal + "' needs >= 1 child");
    return Tree{NodeKind::Node, std::move(nonterminal), std::move(children)};
  }

  bool is_leaf() const { return kind != NodeKind::Node; }

  /// Root symbol name: the node label for internal nodes, the token for
  /// terminal leaves, "eps" for epsilon leaves, and the represented
  /// nonterminal for marked leaves.
  const std::string& root_name() const { return label; }

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.kind == b.kind && a.label == b.label && a.children == b.children;
  }
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
};

/// X-rooted tree with exactly one marked leaf, implicitly labeled X.
/// The body is never the bare marked leaf.
class AdjunctTree {
public:
  explicit AdjunctTree(Tree body) : body_(std::move(body)) {
    if (body_.kind != NodeKind::Node)
      throw error("adjunct body must be an internal node");
    std::size_t marks = 0;
    check_marks(body_, body_.label, marks);
    if (marks != 1)
      throw error("adjunct body must contain exactly one marked leaf");
  }

  const Tree& body() const { return body_; }
  const std::string& root() const { return body_.label; }

  friend bool operator==(const AdjunctTree& a, const AdjunctTree& b) {
    return a.body_ == b.body_;
  }
  friend bool operator!=(const AdjunctTree& a, const AdjunctTree& b) {
    return !(a == b);
  }

private:
  static void check_marks(const Tree& t, const std::string& root,
                          std::size_t& marks) {
    if (t.kind == NodeKind::Marked) {
      if (t.label != root)
        throw error("marked leaf '" + t.label +
                    "' must carry the adjunct root label '" + root + "'");
      ++marks;
    }
    for (const auto& c : t.children) check_marks(c, root, marks);
  }

  Tree body_;
};

// ---------------------------------------------------------------------------
// Canonical text form
// ---------------------------------------------------------------------------

namespace detail {

// Tokens containing syntax characters are single-quoted so alphabets like
// { ( , ) } stay parseable. Quotes inside tokens are not supported.
inline bool needs_quoting(const std::string& token) {
  for (char c : token)
    if (c == '(' || c == ')' || c == ',' || c == '*' || c == '\'' ||
        c == ' ' || c == '\t')
      return true;
  return token.empty();
}

inline void append_token(std::string& out, const std::string& token) {
  if (needs_quoting(token)) {
    out += '\'';
    out += token;
    out += '\'';
  } else {
    out += token;
  }
}

inline void append_tree(std::string& out, const Tree& t) {
  switch (t.kind) {
    case NodeKind::Terminal:
      append_token(out, t.label);
      return;
    case NodeKind::Epsilon:
      out += kEpsilon;
      return;
    case NodeKind::Marked:
      out += '*';
      append_token(out, t.label);
      return;
    case NodeKind::Node:
      append_token(out, t.label);
      out += '(';
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i > 0) out += ',';
        append_tree(out, t.children[i]);
      }
      out += ')';
      return;
  }
}

}  // namespace detail

/// Canonical syntax: terminal as its token, epsilon leaf as "eps", node as
/// X(c1,c2,...) with no whitespace, marked leaf as *X. Tokens containing
/// syntax characters are single-quoted.
inline std::string to_text(const Tree& t) {
  std::string out;
  detail::append_tree(out, t);
  return out;
}

inline std::string to_text(const AdjunctTree& a) { return to_text(a.body()); }

namespace detail {

class TreeParser {
public:
  TreeParser(const std::string& text, bool allow_marked)
      : text_(text), allow_marked_(allow_marked) {}

  Tree parse() {
    Tree t = parse_element();
    if (pos_ != text_.size())
      throw parse_error("trailing characters after tree: " + text_);
    return t;
  }

private:
  Tree parse_element() {
    if (pos_ >= text_.size()) throw parse_error("unexpected end of tree text");
    if (text_[pos_] == '*') {
      if (!allow_marked_)
        throw parse_error("marked leaf '*' is only valid in adjunct trees");
      ++pos_;
      return Tree::marked(parse_token());
    }
    std::string token = parse_token();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Tree> children;
      children.push_back(parse_element());
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        children.push_back(parse_element());
      }
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw parse_error("expected ')' in tree text: " + text_);
      ++pos_;
      return Tree::node(std::move(token), std::move(children));
    }
    if (token == kEpsilon) return Tree::epsilon();
    return Tree::terminal(std::move(token));
  }

  std::string parse_token() {
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
      if (pos_ >= text_.size())
        throw parse_error("unterminated quoted token in tree text: " + text_);
      std::string token = text_.substr(start, pos_ - start);
      ++pos_;
      if (token.empty()) throw parse_error("empty quoted token in tree text");
      return token;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || c == '*' || c == '\'' ||
          c == ' ' || c == '\t' || c == '\n' || c == '\r')
        break;
      ++pos_;
    }
    if (pos_ == start)
      throw parse_error("expected token at position " + std::to_string(pos_) +
                        " in tree text: " + text_);
    return text_.substr(start, pos_ - start);
  }

  const std::string& text_;
  bool allow_marked_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the canonical tree syntax. Marked leaves are rejected.
inline Tree parse_tree(const std::string& text) {
  return detail::TreeParser(text, /*allow_marked=*/false).parse();
}

/// Parses an adjunct tree; exactly one *X leaf is required and its label
/// must match the root.
inline AdjunctTree parse_adjunct(const std::string& text) {
  return AdjunctTree(detail::TreeParser(text, /*allow_marked=*/true).parse());
}

/// Canonical ordering for tree sets: byte order of the canonical text.
struct CanonicalLess {
  bool operator()(const Tree& a, const Tree& b) const {
    return to_text(a) < to_text(b);
  }
  bool operator()(const AdjunctTree& a, const AdjunctTree& b) const {
    return to_text(a) < to_text(b);
  }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

namespace detail {

inline void collect_yield(const Tree& t, Word& out) {
  if (t.kind == NodeKind::Terminal) {
    out.push_back(t.label);
    return;
  }
  // Epsilon and marked leaves contribute the empty string.
  for (const auto& c : t.children) collect_yield(c, out);
}

inline void collect_nonterminals(const Tree& t, std::set<std::string>& out) {
  if (t.kind == NodeKind::Node) {
    out.insert(t.label);
    for (const auto& c : t.children) collect_nonterminals(c, out);
  }
}

// Nonterminal occurrences along the current root-to-leaf path; a marked
// leaf counts as an occurrence of the nonterminal it stands for.
inline bool paths_simple(const Tree& t, std::set<std::string>& path) {
  if (t.kind == NodeKind::Marked) return path.count(t.label) == 0;
  if (t.kind != NodeKind::Node) return true;
  if (!path.insert(t.label).second) return false;
  for (const auto& c : t.children)
    if (!paths_simple(c, path)) {
      path.erase(t.label);
      return false;
    }
  path.erase(t.label);
  return true;
}

}  // namespace detail

/// Left-to-right concatenation of terminal leaves; epsilon (and marked)
/// leaves contribute the empty string.
inline Word yield_of(const Tree& t) {
  Word w;
  detail::collect_yield(t, w);
  return w;
}

/// N(T): the labels of the internal nodes of t.
inline std::set<std::string> nonterminals_of(const Tree& t) {
  std::set<std::string> out;
  detail::collect_nonterminals(t, out);
  return out;
}

/// N(a) for an adjunct: internal labels of the body (the root included).
inline std::set<std::string> nonterminals_of(const AdjunctTree& a) {
  return nonterminals_of(a.body());
}

/// True iff no nonterminal occurs twice on any root-to-leaf path.
inline bool is_simple_tree(const Tree& t) {
  std::set<std::string> path;
  return detail::paths_simple(t, path);
}

/// True iff no nonterminal occurs twice on any path from a child of the
/// root to a leaf. The root itself is excluded, so its label may occur
/// once more below it -- as the marked leaf or as an interior node.
inline bool is_simple_adjunct(const AdjunctTree& a) {
  for (const auto& c : a.body().children) {
    std::set<std::string> path;
    if (!detail::paths_simple(c, path)) return false;
  }
  return true;
}

namespace detail {

inline bool rules_hold(const Tree& t, const Grammar& g) {
  if (t.kind != NodeKind::Node) return true;
  std::vector<std::string> child_roots;
  child_roots.reserve(t.children.size());
  for (const auto& c : t.children) child_roots.push_back(c.root_name());
  if (!g.has_rule(t.label, child_roots)) return false;
  for (const auto& c : t.children)
    if (!rules_hold(c, g)) return false;
  return true;
}

}  // namespace detail

/// True iff the root is the start symbol and every internal node matches a
/// grammar rule (the root of a leaf being its symbol).
inline bool is_derivation_tree(const Tree& t, const Grammar& g) {
  if (t.root_name() != g.start()) return false;
  return detail::rules_hold(t, g);
}

/// True iff every internal node of the body matches a grammar rule, the
/// marked leaf acting as the nonterminal it stands for.
inline bool is_valid_adjunct(const AdjunctTree& a, const Grammar& g) {
  return detail::rules_hold(a.body(), g);
}

namespace detail {

// Replaces the occurrence-th target-labeled node of t (pre-order, root
// first) by subst(subtree). occurrence counts down across the traversal;
// nullopt when fewer occurrences exist.
template <typename Subst>
inline std::optional<Tree> replace_occurrence(const Tree& t,
                                              const std::string& target,
                                              std::size_t& occurrence,
                                              const Subst& subst) {
  if (t.kind == NodeKind::Node && t.label == target) {
    if (occurrence == 0) return subst(t);
    --occurrence;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (auto r = replace_occurrence(t.children[i], target, occurrence, subst)) {
      Tree copy = t;
      copy.children[i] = std::move(*r);
      return copy;
    }
  }
  return std::nullopt;
}

// Body of alpha with the marked leaf replaced by subtree.
inline Tree plug(const Tree& body, const Tree& subtree) {
  if (body.kind == NodeKind::Marked) return subtree;
  if (body.is_leaf()) return body;
  std::vector<Tree> children;
  children.reserve(body.children.size());
  for (const auto& c : body.children) children.push_back(plug(c, subtree));
  return Tree{body.kind, body.label, std::move(children)};
}

}  // namespace detail

/// Number of internal nodes of t labeled x.
inline std::size_t count_occurrences(const Tree& t, const std::string& x) {
  std::size_t n = (t.kind == NodeKind::Node && t.label == x) ? 1 : 0;
  for (const auto& c : t.children) n += count_occurrences(c, x);
  return n;
}

/// Adjoins alpha at the occurrence-th X-rooted subtree of t in pre-order
/// (X = root(alpha)): that subtree U is replaced by alpha with the marked
/// leaf replaced by U. Throws when the occurrence does not exist.
inline Tree adjoin_at(const Tree& t, const AdjunctTree& alpha,
                      std::size_t occurrence) {
  std::size_t remaining = occurrence;
  auto result = detail::replace_occurrence(
      t, alpha.root(), remaining,
      [&](const Tree& u) { return detail::plug(alpha.body(), u); });
  if (!result)
    throw error("adjunct root '" + alpha.root() + "' has no occurrence " +
                std::to_string(occurrence) + " in tree " + to_text(t));
  return std::move(*result);
}

/// Adjoins alpha at the left-most X-rooted occurrence in t.
inline Tree adjoin(const Tree& t, const AdjunctTree& alpha) {
  if (count_occurrences(t, alpha.root()) == 0)
    throw error("adjunct root '" + alpha.root() + "' does not occur in tree " +
                to_text(t));
  return adjoin_at(t, alpha, 0);
}

// ---------------------------------------------------------------------------
// Parikh mapping
// ---------------------------------------------------------------------------

/// Coordinate i counts occurrences of alphabet letter i in w.
inline Vector parikh_of_word(const Word& w, const Grammar& g) {
  Vector v(parikh_dimension(g), 0);
  for (const auto& token : w) ++v[g.terminal_index(token)];
  return v;
}

/// Parikh vector of the tree's yield.
inline Vector parikh_of_tree(const Tree& t, const Grammar& g) {
  return parikh_of_word(yield_of(t), g);
}

/// Parikh vector of the adjunct's yield, the marked leaf contributing the
/// empty string.
inline Vector parikh_of_adjunct(const AdjunctTree& a, const Grammar& g) {
  return parikh_of_word(yield_of(a.body()), g);
}

/// Longest root-to-leaf path, in edges.
inline std::size_t depth_of(const Tree& t) {
  std::size_t d = 0;
  for (const auto& c : t.children) d = std::max(d, depth_of(c) + 1);
  return d;
}

}  // namespace parikh
