#ifndef INSYS_COMPILE_HPP
#define INSYS_COMPILE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "insys/grammar.hpp"
#include "insys/model.hpp"

namespace insys {

/// CNF grammar whose nonterminals are integer pairs (a,d) with binary rules
/// (a,d) -> (a,b)(c,d). Start is (0,0).
struct IntegerPairGrammar {
  std::int32_t modulus = 0;  // n: pair components live in [0, n)
  std::vector<std::string> terminals;
  struct BinaryRule {
    std::int32_t a, d, b, c;  // (a,d) -> (a,b)(c,d)
    friend bool operator==(const BinaryRule& x, const BinaryRule& y) {
      return x.a == y.a && x.d == y.d && x.b == y.b && x.c == y.c;
    }
  };
  struct TerminalRule {
    std::int32_t a, d, t;  // (a,d) -> t
    friend bool operator==(const TerminalRule& x, const TerminalRule& y) {
      return x.a == y.a && x.d == y.d && x.t == y.t;
    }
  };
  std::vector<BinaryRule> binary;
  std::vector<TerminalRule> terminal;
};

/// The modular construction: nonterminals relabeled A_0..A_{n-1} by first
/// occurrence with the start forced to A_0; each CNF rule Ai -> Aj Ak yields
/// the rules (a, (i-a) mod n) -> (a, (j-a) mod n)((k-d) mod n, d) for every a,
/// and each Ai -> t yields (a, (i-a) mod n) -> t.
IntegerPairGrammar to_integer_pair(const Grammar& cnf);

/// The A_0..A_{n-1} relabeling used by to_integer_pair: start symbol first,
/// the rest in order of first occurrence across the rules.
std::vector<std::int32_t> pair_relabeling(const Grammar& cnf);

/// The pair grammar viewed as a plain Grammar: pair (a,d) becomes
/// nonterminal index a*n+d, named "P<a>_<d>".
Grammar pair_grammar_as_grammar(const IntegerPairGrammar& pg);

/// Symbol-wise output map g with even-spacing window kappa.
struct ExpressionMap {
  std::unordered_map<std::int32_t, std::int32_t> symbol_to_terminal;  // Symbol.code -> terminal
  int kappa = 16;
  std::vector<std::string> terminals;
};

struct CompiledSystem {
  InsertionSystem system;
  ExpressionMap expression;
  // Symbol layout: pair symbols s_0..s_{n-1}, then u, x, then terminals.
  std::int32_t u_base = 0;
  std::int32_t x_base = 0;
  std::int32_t first_terminal_base = 0;
  std::vector<int> family;  // per monomer id: which of the four families (1..4)
};

/// The four monomer families over the pair-grammar rules, the initiator
/// (u*, s_a*) / (s_b, u) for start (a,b) = (0,0), equal concentrations, and
/// the expression map (second symbols of terminal-family monomers map to
/// their terminals, everything else to epsilon) with kappa = 16.
CompiledSystem to_insertion_system(const IntegerPairGrammar& pg);

TerminalString apply_expression(const ExpressionMap& map,
                                const std::vector<Symbol>& symbols);

/// True iff every window of kappa consecutive symbols in every string
/// contains at least one symbol that maps to a terminal.
bool kappa_check(const ExpressionMap& map,
                 const std::vector<std::vector<Symbol>>& strings);

}  // namespace insys

#endif
