#include "insys/compile.hpp"

#include <algorithm>

namespace insys {

namespace {

inline std::int32_t pmod(std::int32_t v, std::int32_t n) {
  std::int32_t m = v % n;
  return m < 0 ? m + n : m;
}

}  // namespace

std::vector<std::int32_t> pair_relabeling(const Grammar& g) {
  std::vector<std::int32_t> remap(g.nonterminals.size(), -1);
  std::int32_t next = 0;
  auto label = [&](std::int32_t nt) {
    if (remap[nt] < 0) remap[nt] = next++;
  };
  label(g.start);
  for (const GrammarRule& r : g.rules) {
    label(r.lhs);
    for (GrammarSymbol s : r.rhs)
      if (!s.terminal) label(s.index);
  }
  return remap;
}

IntegerPairGrammar to_integer_pair(const Grammar& g) {
  if (!is_cnf(g))
    throw GrammarError(GrammarError::Kind::not_cnf,
                       "to_integer_pair needs a CNF grammar");

  // Relabel nonterminals A_0..A_{n-1}: start first, then first occurrence.
  std::vector<std::int32_t> remap = pair_relabeling(g);
  std::int32_t n = 0;
  for (std::int32_t v : remap) n = std::max(n, v + 1);

  IntegerPairGrammar pg;
  pg.modulus = n;
  pg.terminals = g.terminals;
  std::vector<GrammarRule> rules = g.rules;
  for (const GrammarRule& r : rules) {
    std::int32_t i = remap[r.lhs];
    if (r.rhs.size() == 2) {
      std::int32_t j = remap[r.rhs[0].index];
      std::int32_t k = remap[r.rhs[1].index];
      for (std::int32_t a = 0; a < n; ++a) {
        std::int32_t d = pmod(i - a, n);
        std::int32_t b = pmod(j - a, n);
        std::int32_t c = pmod(k - d, n);
        IntegerPairGrammar::BinaryRule br{a, d, b, c};
        if (std::find(pg.binary.begin(), pg.binary.end(), br) == pg.binary.end())
          pg.binary.push_back(br);
      }
    } else {
      for (std::int32_t a = 0; a < n; ++a) {
        std::int32_t d = pmod(i - a, n);
        IntegerPairGrammar::TerminalRule tr{a, d, r.rhs[0].index};
        if (std::find(pg.terminal.begin(), pg.terminal.end(), tr) ==
            pg.terminal.end())
          pg.terminal.push_back(tr);
      }
    }
  }
  return pg;
}

Grammar pair_grammar_as_grammar(const IntegerPairGrammar& pg) {
  Grammar g;
  g.terminals = pg.terminals;
  std::int32_t n = pg.modulus;
  for (std::int32_t a = 0; a < n; ++a)
    for (std::int32_t d = 0; d < n; ++d)
      g.add_nonterminal("P" + std::to_string(a) + "_" + std::to_string(d));
  auto nt = [&](std::int32_t a, std::int32_t d) { return a * n + d; };
  g.start = nt(0, 0);
  for (const auto& r : pg.binary)
    g.add_rule(nt(r.a, r.d), {Grammar::N(nt(r.a, r.b)), Grammar::N(nt(r.c, r.d))});
  for (const auto& r : pg.terminal) g.add_rule(nt(r.a, r.d), {Grammar::T(r.t)});
  return g;
}

CompiledSystem to_insertion_system(const IntegerPairGrammar& pg) {
  std::int32_t n = pg.modulus;
  std::int32_t u_base = n;
  std::int32_t x_base = n + 1;
  std::int32_t first_terminal = n + 2;

  Symbol u{u_base, false};
  Symbol x{x_base, false};
  auto s = [](std::int32_t k) { return Symbol{k, false}; };
  auto term = [&](std::int32_t t) { return Symbol{first_terminal + t, false}; };

  std::vector<MonomerType> monomers;
  std::vector<int> families;
  auto emit = [&](const MonomerType& m, int family) {
    if (std::find(monomers.begin(), monomers.end(), m) != monomers.end()) return;
    monomers.push_back(m);
    families.push_back(family);
  };
  // Family 1: (s_b, u, s_b*, x)- per binary rule.
  for (const auto& r : pg.binary)
    emit(make_monomer(s(r.b), u, complement(s(r.b)), x, Sign::negative), 1);
  // Family 2: (s_a, s_b, s_c*, s_d*)+ per binary rule.
  for (const auto& r : pg.binary)
    emit(make_monomer(s(r.a), s(r.b), complement(s(r.c)), complement(s(r.d)),
                      Sign::positive),
         2);
  // Family 3: (x, s_c, u*, s_c*)- per binary rule.
  for (const auto& r : pg.binary)
    emit(make_monomer(x, s(r.c), complement(u), complement(s(r.c)),
                      Sign::negative),
         3);
  // Family 4: (s_a, t, x, s_d*)+ per terminal rule.
  for (const auto& r : pg.terminal)
    emit(make_monomer(s(r.a), term(r.t), x, complement(s(r.d)), Sign::positive),
         4);

  double conc = 1.0 / static_cast<double>(monomers.size());
  for (MonomerType& m : monomers) m.concentration = conc;

  // Start pair (0,0): Q' = (u*, s_0*), R' = (s_0, u).
  Initiator init{complement(u), complement(s(0)), s(0), u};

  CompiledSystem out{
      InsertionSystem(first_terminal + static_cast<std::int32_t>(pg.terminals.size()),
                      std::move(monomers), init),
      ExpressionMap{}, u_base, x_base, first_terminal, std::move(families)};
  out.expression.kappa = 16;
  out.expression.terminals = pg.terminals;
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(pg.terminals.size()); ++t)
    out.expression.symbol_to_terminal.emplace(term(t).code, t);
  return out;
}

TerminalString apply_expression(const ExpressionMap& map,
                                const std::vector<Symbol>& symbols) {
  TerminalString out;
  for (Symbol sym : symbols) {
    auto it = map.symbol_to_terminal.find(sym.code);
    if (it != map.symbol_to_terminal.end()) out.push_back(it->second);
  }
  return out;
}

bool kappa_check(const ExpressionMap& map,
                 const std::vector<std::vector<Symbol>>& strings) {
  for (const auto& str : strings) {
    if (str.size() < static_cast<std::size_t>(map.kappa)) continue;
    std::size_t last_hit = 0;
    bool any = false;
    for (std::size_t i = 0; i < str.size(); ++i) {
      if (map.symbol_to_terminal.count(str[i].code)) {
        // Gap between mapped symbols (and the leading edge) must stay < kappa.
        std::size_t gap = any ? i - last_hit : i + 1;
        if (gap > static_cast<std::size_t>(map.kappa)) return false;
        last_hit = i;
        any = true;
      }
    }
    if (!any) return false;
    if (str.size() - last_hit > static_cast<std::size_t>(map.kappa)) return false;
  }
  return true;
}

}  // namespace insys
