// Command-line front end: computes Parikh images of context-free
// grammars as explicit semilinear sets and cross-checks them against
// brute-force language enumeration.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "parikh/parikh.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;  // crosscheck failure or budget exceeded
constexpr int kExitUsage = 2;     // usage or parse errors

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parikh::error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

parikh::Grammar load_grammar(const std::string& path) {
  return parikh::parse_grammar(read_file(path));
}

std::size_t enumeration_budget(std::size_t flag_value) {
  if (flag_value != 0) return flag_value;
  if (const char* env = std::getenv("PARIKH_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw parikh::error("PARIKH_BUDGET must be a positive integer");
  }
  return parikh::kDefaultEnumerationBudget;
}

// Splits a word argument into alphabet tokens: on whitespace when present,
// otherwise one character per token.
parikh::Word tokenize_word(const std::string& text) {
  if (text.find(' ') != std::string::npos ||
      text.find('\t') != std::string::npos) {
    parikh::Word w;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) w.push_back(tok);
    return w;
  }
  parikh::Word w;
  for (char c : text) w.push_back(std::string(1, c));
  return w;
}

int cmd_image(const std::string& grammar_path, const std::string& format,
              std::size_t budget_flag) {
  parikh::Grammar g = load_grammar(grammar_path);
  parikh::BuildOptions opts;
  opts.budget = enumeration_budget(budget_flag);
  parikh::SemilinearSet image = normalize(build_image(g, opts));
  if (format == "json")
    std::cout << to_json(image, g.alphabet()) << "\n";
  else
    std::cout << to_text(image);
  return kExitOk;
}

int cmd_member(const std::string& grammar_path, const std::string& word,
               const std::string& vector_text, std::size_t budget_flag) {
  parikh::Grammar g = load_grammar(grammar_path);
  parikh::Vector u;
  if (!vector_text.empty()) {
    u = parikh::parse_vector(vector_text);
    if (u.size() != parikh_dimension(g))
      throw parikh::parse_error("vector dimension " + std::to_string(u.size()) +
                                " does not match alphabet size " +
                                std::to_string(parikh_dimension(g)));
  } else {
    u = parikh_of_word(tokenize_word(word), g);
  }
  parikh::BuildOptions opts;
  opts.budget = enumeration_budget(budget_flag);
  bool in = member(build_image(g, opts), u);
  std::cout << (in ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_decompose(const std::string& grammar_path, const std::string& tree_text) {
  parikh::Grammar g = load_grammar(grammar_path);
  parikh::Tree t = parikh::parse_tree(tree_text);

  // The tree must be over the grammar's symbols to mean anything here.
  auto validate = [&](auto&& self, const parikh::Tree& node) -> void {
    if (node.kind == parikh::NodeKind::Node) {
      if (!g.is_nonterminal(node.label))
        throw parikh::parse_error("unknown nonterminal in tree: " + node.label);
      for (const auto& c : node.children) self(self, c);
    } else if (node.kind == parikh::NodeKind::Terminal &&
               !g.is_terminal(node.label)) {
      throw parikh::parse_error("unknown terminal in tree: " + node.label);
    }
  };
  validate(validate, t);

  parikh::Decomposition d = decompose(t);
  std::cout << "core: " << to_text(d.core) << "\n";
  for (const auto& p : d.pumps) std::cout << "pump: " << to_text(p) << "\n";
  return kExitOk;
}

int cmd_check(const std::string& grammar_path, std::size_t max_len,
              std::size_t coeff_budget, const std::string& format,
              std::size_t budget_flag) {
  parikh::Grammar g = load_grammar(grammar_path);
  parikh::BuildOptions opts;
  opts.budget = enumeration_budget(budget_flag);
  parikh::CrossCheckReport report = crosscheck(g, max_len, coeff_budget, opts);
  if (format == "json")
    std::cout << to_json(report) << "\n";
  else
    std::cout << to_text(report);
  return report.pass() ? kExitOk : kExitMismatch;
}

int cmd_stats(const std::string& grammar_path, std::size_t budget_flag) {
  parikh::Grammar g = load_grammar(grammar_path);
  std::size_t budget = enumeration_budget(budget_flag);
  auto trees = enumerate_simple_trees(g, budget);
  auto adjuncts = enumerate_simple_adjuncts(g, budget);
  auto classes = classify(adjuncts, g);

  std::cout << "nonterminals: " << g.nonterminals().size() << "\n";
  std::cout << "alphabet_size: " << g.alphabet().size() << "\n";
  std::cout << "simple_trees: " << trees.trees.size() << "\n";
  std::cout << "simple_adjuncts: " << adjuncts.adjuncts.size() << "\n";
  std::cout << "adjunct_classes: " << classes.size() << "\n";
  std::cout << "by_nonterminal:\n";
  for (const auto& nt : g.nonterminals()) {
    std::size_t a = 0, c = 0;
    for (const auto& alpha : adjuncts.adjuncts)
      if (alpha.root() == nt) ++a;
    for (const auto& cls : classes)
      if (cls.root == nt) ++c;
    std::cout << "  " << nt << ": adjuncts=" << a << " classes=" << c << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parikh image of a context-free language as an explicit "
               "semilinear set"};
  app.require_subcommand(1);

  std::string grammar_path, format = "text", word, vector_text, tree_text;
  std::size_t budget_flag = 0, max_len = 12, coeff_budget = 4;

  auto add_grammar = [&](CLI::App* sub) {
    sub->add_option("grammar,--grammar", grammar_path, "grammar file")
        ->required();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", budget_flag,
                    "enumeration cap (default 1000000; env PARIKH_BUDGET)");
  };

  CLI::App* image = app.add_subcommand("image", "print the semilinear image");
  add_grammar(image);
  image->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  add_budget(image);

  CLI::App* memb = app.add_subcommand(
      "member", "decide Parikh-image membership of a word's vector");
  add_grammar(memb);
  auto* wopt = memb->add_option("--word", word, "word over the alphabet");
  auto* vopt = memb->add_option("--vector", vector_text, "vector \"(n1,...,nd)\"");
  wopt->excludes(vopt);
  vopt->excludes(wopt);
  add_budget(memb);

  CLI::App* dec = app.add_subcommand("decompose",
                                     "split a tree into core and pumps");
  add_grammar(dec);
  dec->add_option("--tree", tree_text, "tree in canonical syntax")->required();

  CLI::App* check = app.add_subcommand(
      "check", "cross-validate the image against brute-force enumeration");
  add_grammar(check);
  check->add_option("--max-len", max_len, "word length bound (default 12)");
  check->add_option("--coeff-budget", coeff_budget,
                    "coefficient sum bound (default 4)");
  check->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  add_budget(check);

  CLI::App* stats = app.add_subcommand("stats", "enumeration counts");
  add_grammar(stats);
  add_budget(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(image))
      return cmd_image(grammar_path, format, budget_flag);
    if (app.got_subcommand(memb)) {
      if (word.empty() && vector_text.empty())
        throw parikh::error("member needs --word or --vector");
      return cmd_member(grammar_path, word, vector_text, budget_flag);
    }
    if (app.got_subcommand(dec)) return cmd_decompose(grammar_path, tree_text);
    if (app.got_subcommand(check))
      return cmd_check(grammar_path, max_len, coeff_budget, format,
                       budget_flag);
    if (app.got_subcommand(stats)) return cmd_stats(grammar_path, budget_flag);
  } catch (const parikh::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const parikh::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
