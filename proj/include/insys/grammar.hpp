#ifndef INSYS_GRAMMAR_HPP
#define INSYS_GRAMMAR_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace insys {

struct GrammarSymbol {
  bool terminal = false;
  std::int32_t index = 0;

  friend bool operator==(GrammarSymbol a, GrammarSymbol b) {
    return a.terminal == b.terminal && a.index == b.index;
  }
  friend bool operator<(GrammarSymbol a, GrammarSymbol b) {
    if (a.terminal != b.terminal) return a.terminal < b.terminal;
    return a.index < b.index;
  }
};

struct GrammarRule {
  std::int32_t lhs = 0;
  std::vector<GrammarSymbol> rhs;  // empty = epsilon rule

  friend bool operator==(const GrammarRule& a, const GrammarRule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

class GrammarError : public std::runtime_error {
 public:
  enum class Kind { parse, epsilon_language, empty_language, not_cnf, precondition };
  GrammarError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind(kind) {}
  Kind kind;
};

/// A context-free grammar over named terminal/nonterminal tokens.
struct Grammar {
  std::vector<std::string> terminals;
  std::vector<std::string> nonterminals;
  std::vector<GrammarRule> rules;
  std::int32_t start = 0;

  std::int32_t add_terminal(const std::string& name);
  std::int32_t add_nonterminal(const std::string& name);
  void add_rule(std::int32_t lhs, std::vector<GrammarSymbol> rhs);

  static GrammarSymbol T(std::int32_t i) { return {true, i}; }
  static GrammarSymbol N(std::int32_t i) { return {false, i}; }
};

/// Every rule is L -> N1 N2 or L -> t.
bool is_cnf(const Grammar& g);

/// START -> TERM -> BIN -> DEL -> UNIT, then useless-symbol pruning and a
/// compact renumbering with the start symbol first. Rejects grammars whose
/// language contains the empty string (epsilon_language) and grammars with an
/// empty language (empty_language).
Grammar to_cnf(const Grammar& g);

using TerminalString = std::vector<std::int32_t>;

/// All terminal strings of length <= max_len derivable from the start symbol.
std::set<TerminalString> derive_strings(const Grammar& g, std::size_t max_len);

/// CYK membership for a CNF grammar; w must be nonempty.
bool cyk_member(const Grammar& cnf, const TerminalString& w);

/// All sentential forms (terminal and nonterminal mixed) derivable from the
/// start symbol, bounded by effective length. Symbols are coded as
/// index*2 + (terminal ? 1 : 0).
std::set<std::vector<std::int32_t>> sentential_forms(const Grammar& g,
                                                     std::size_t max_len);

std::string render_terminal_string(const Grammar& g, const TerminalString& w);

/// Line-oriented text format: optional `start: NT` header, rules as
/// `LHS -> R1 R2 | alt`, `#` comments. Lowercase-initial tokens are
/// terminals, uppercase-initial tokens nonterminals; `eps` denotes an empty
/// right-hand side and is reserved.
Grammar parse_grammar(const std::string& text);

std::string serialize_grammar(const Grammar& g);

}  // namespace insys

#endif
