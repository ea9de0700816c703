#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parikh/enumerate.hpp"
#include "parikh/errors.hpp"
#include "parikh/grammar.hpp"
#include "parikh/tree.hpp"
#include "parikh/vector.hpp"

namespace parikh {

/// {base + x1*p1 + ... + xk*pk | xi in N}. Periods are sorted, unique and
/// never the zero vector.
struct LinearSet {
  Vector base;
  std::vector<Vector> periods;

  friend bool operator==(const LinearSet& a, const LinearSet& b) {
    return a.base == b.base && a.periods == b.periods;
  }
  friend bool operator<(const LinearSet& a, const LinearSet& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.periods < b.periods;
  }
};

/// Finite union of linear sets of uniform dimension, canonically ordered
/// and deduplicated. The dimension is kept explicitly so the empty union
/// still knows its coordinate count.
struct SemilinearSet {
  std::size_t dimension = 0;
  std::vector<LinearSet> components;

  friend bool operator==(const SemilinearSet& a, const SemilinearSet& b) {
    return a.dimension == b.dimension && a.components == b.components;
  }
};

inline LinearSet make_linear(Vector base, std::vector<Vector> periods) {
  LinearSet l{std::move(base), std::move(periods)};
  auto& ps = l.periods;
  ps.erase(std::remove_if(ps.begin(), ps.end(), is_zero), ps.end());
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (const auto& p : ps)
    if (p.size() != l.base.size()) throw error("period dimension mismatch");
  return l;
}

inline SemilinearSet make_semilinear(std::size_t dimension,
                                     std::vector<LinearSet> components) {
  for (const auto& c : components)
    if (c.base.size() != dimension)
      throw error("component dimension mismatch");
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()),
                   components.end());
  return SemilinearSet{dimension, std::move(components)};
}

/// Decides u in l by depth-first search over the periods: the coefficient
/// of each period is bounded by the remaining budget in every coordinate
/// the period touches, and branches with a negative remainder are pruned.
inline bool member_linear(const LinearSet& l, const Vector& u) {
  if (u.size() != l.base.size()) throw error("vector dimension mismatch");
  if (!dominated_by(l.base, u)) return false;
  Vector rem(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) rem[i] = u[i] - l.base[i];

  struct Dfs {
    const std::vector<Vector>& periods;
    bool run(std::size_t i, Vector& rem) {
      if (is_zero(rem)) return true;
      if (i == periods.size()) return false;
      const Vector& p = periods[i];
      // Largest feasible coefficient for this period; a period without a
      // positive coordinate contributes nothing and gets coefficient 0.
      std::uint64_t bound = 0;
      bool has_positive = false;
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j] > 0) {
          std::uint64_t b = rem[j] / p[j];
          bound = has_positive ? std::min(bound, b) : b;
          has_positive = true;
        }
      for (std::uint64_t x = 0; x <= bound; ++x) {
        Vector next(rem.size());
        for (std::size_t j = 0; j < rem.size(); ++j) next[j] = rem[j] - x * p[j];
        if (run(i + 1, next)) return true;
      }
      return false;
    }
  };
  return Dfs{l.periods}.run(0, rem);
}

/// True iff some component accepts u.
inline bool member(const SemilinearSet& s, const Vector& u) {
  if (u.size() != s.dimension) throw error("vector dimension mismatch");
  for (const auto& l : s.components)
    if (member_linear(l, u)) return true;
  return false;
}

/// Drops exact duplicates and components subsumed by another: L1 goes when
/// some kept L2 has periods1 a subset of periods2 and base1 in L2. The
/// denoted set is unchanged.
inline SemilinearSet normalize(const SemilinearSet& s) {
  std::vector<LinearSet> comps = s.components;
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());

  auto subset_of = [](const std::vector<Vector>& a,
                      const std::vector<Vector>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };

  std::vector<bool> dropped(comps.size(), false);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = 0; j < comps.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      if (subset_of(comps[i].periods, comps[j].periods) &&
          member_linear(comps[j], comps[i].base))
        dropped[i] = true;
    }
  }
  std::vector<LinearSet> kept;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!dropped[i]) kept.push_back(std::move(comps[i]));
  return SemilinearSet{s.dimension, std::move(kept)};
}

struct BuildOptions {
  std::size_t budget = kDefaultEnumerationBudget;
  /// Iterate subsets over adjunct classes (deduplicated) instead of raw
  /// adjuncts. The computed image denotes the same set either way; classes
  /// tame the exponential subset count.
  bool use_classes = true;
};

/// Builds the Parikh image of the grammar's language as an explicit
/// semilinear set: for every simple derivation tree T and every adjoinable
/// subset S of adjunct classes, one linear set with base Phi(T) plus one
/// copy of each member's vector, and the nonzero member vectors as
/// periods. Non-adjoinable subsets contribute nothing.
inline SemilinearSet build_image(const Grammar& g,
                                 const BuildOptions& options = {}) {
  SimpleTreeSet trees = enumerate_simple_trees(g, options.budget);
  AdjunctSet adjuncts = enumerate_simple_adjuncts(g, options.budget);

  std::vector<AdjunctClass> pool;
  if (options.use_classes) {
    pool = classify(adjuncts, g);
  } else {
    for (const auto& a : adjuncts.adjuncts)
      pool.push_back(AdjunctClass{a.root(), nonterminals_of(a),
                                  parikh_of_adjunct(a, g), a});
  }
  if (pool.size() >= 24)
    throw budget_exceeded(
        "adjunct pool too large for subset construction", pool.size());

  std::vector<LinearSet> components;
  const std::size_t subset_count = std::size_t{1} << pool.size();
  for (const Tree& t : trees.trees) {
    const Vector tree_vec = parikh_of_tree(t, g);
    const std::set<std::string> available = nonterminals_of(t);
    for (std::size_t mask = 0; mask < subset_count; ++mask) {
      std::vector<const AdjunctClass*> subset;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask & (std::size_t{1} << i)) subset.push_back(&pool[i]);
      if (!adjoinable_from(available, subset)) continue;

      // Positive coefficients are absorbed by shifting the base one copy
      // of every member; zero-vector members shift nothing and contribute
      // no period.
      Vector base = tree_vec;
      std::vector<Vector> periods;
      for (const AdjunctClass* c : subset) {
        base = add(base, c->parikh);
        periods.push_back(c->parikh);
      }
      components.push_back(make_linear(std::move(base), std::move(periods)));
    }
  }
  return make_semilinear(parikh_dimension(g), std::move(components));
}

// ---------------------------------------------------------------------------
// Output formats
// ---------------------------------------------------------------------------

/// One component per line: "(0,0) + <(1,1),(0,2)>*". An empty image
/// renders as the empty string.
inline std::string to_text(const SemilinearSet& s) {
  std::string out;
  for (const auto& l : s.components) {
    out += to_text(l.base);
    out += " + <";
    for (std::size_t i = 0; i < l.periods.size(); ++i) {
      if (i > 0) out += ',';
      out += to_text(l.periods[i]);
    }
    out += ">*\n";
  }
  return out;
}

namespace detail {

inline void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

inline void append_json_vector(std::string& out, const Vector& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
}

}  // namespace detail

/// Canonical JSON rendering, byte-stable across runs:
/// {"alphabet":["a","b"],"linear_sets":[{"base":[0,0],"periods":[[1,1]]}]}
inline std::string to_json(const SemilinearSet& s,
                           const std::vector<std::string>& alphabet) {
  std::string out = "{\"alphabet\":[";
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (i > 0) out += ',';
    detail::append_json_string(out, alphabet[i]);
  }
  out += "],\"linear_sets\":[";
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"base\":";
    detail::append_json_vector(out, s.components[i].base);
    out += ",\"periods\":[";
    for (std::size_t j = 0; j < s.components[i].periods.size(); ++j) {
      if (j > 0) out += ',';
      detail::append_json_vector(out, s.components[i].periods[j]);
    }
    out += "]}";
  }
  out += "]}";
  return out;
}

}  // namespace parikh
