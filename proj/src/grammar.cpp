#include "insys/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace insys {

namespace {

std::int32_t find_or_add(std::vector<std::string>& table, const std::string& name) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] == name) return static_cast<std::int32_t>(i);
  table.push_back(name);
  return static_cast<std::int32_t>(table.size() - 1);
}

}  // namespace

std::int32_t Grammar::add_terminal(const std::string& name) {
  return find_or_add(terminals, name);
}

std::int32_t Grammar::add_nonterminal(const std::string& name) {
  return find_or_add(nonterminals, name);
}

void Grammar::add_rule(std::int32_t lhs, std::vector<GrammarSymbol> rhs) {
  rules.push_back({lhs, std::move(rhs)});
}

bool is_cnf(const Grammar& g) {
  for (const GrammarRule& r : g.rules) {
    if (r.rhs.size() == 1 && r.rhs[0].terminal) continue;
    if (r.rhs.size() == 2 && !r.rhs[0].terminal && !r.rhs[1].terminal) continue;
    return false;
  }
  return !g.rules.empty();
}

namespace {

std::vector<bool> nullable_set(const Grammar& g) {
  std::vector<bool> nullable(g.nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GrammarRule& r : g.rules) {
      if (nullable[r.lhs]) continue;
      bool all = true;
      for (GrammarSymbol s : r.rhs)
        if (s.terminal || !nullable[s.index]) {
          all = false;
          break;
        }
      if (all) {
        nullable[r.lhs] = true;
        changed = true;
      }
    }
  }
  return nullable;
}

void dedup_rules(std::vector<GrammarRule>& rules) {
  std::vector<GrammarRule> out;
  for (const GrammarRule& r : rules)
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  rules = std::move(out);
}

}  // namespace

Grammar to_cnf(const Grammar& input) {
  if (input.rules.empty())
    throw GrammarError(GrammarError::Kind::precondition, "grammar has no rules");

  Grammar g = input;

  // START: fresh start symbol.
  std::int32_t s0 = g.add_nonterminal("_S0");
  g.rules.insert(g.rules.begin(), {s0, {Grammar::N(g.start)}});
  g.start = s0;

  // TERM: terminals only appear alone on the right-hand side.
  std::unordered_map<std::int32_t, std::int32_t> term_nt;
  for (GrammarRule& r : g.rules) {
    if (r.rhs.size() < 2) continue;
    for (GrammarSymbol& s : r.rhs) {
      if (!s.terminal) continue;
      auto it = term_nt.find(s.index);
      std::int32_t nt;
      if (it == term_nt.end()) {
        nt = g.add_nonterminal("_T" + g.terminals[s.index]);
        term_nt.emplace(s.index, nt);
      } else {
        nt = it->second;
      }
      s = Grammar::N(nt);
    }
  }
  for (auto [t, nt] : std::map<std::int32_t, std::int32_t>(term_nt.begin(),
                                                           term_nt.end()))
    g.rules.push_back({nt, {Grammar::T(t)}});

  // BIN: right-hand sides of length at most 2.
  std::vector<GrammarRule> binned;
  int fresh = 0;
  for (const GrammarRule& r : g.rules) {
    if (r.rhs.size() <= 2) {
      binned.push_back(r);
      continue;
    }
    std::int32_t lhs = r.lhs;
    for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
      std::int32_t b = g.add_nonterminal("_B" + std::to_string(fresh++));
      binned.push_back({lhs, {r.rhs[i], Grammar::N(b)}});
      lhs = b;
    }
    binned.push_back({lhs, {r.rhs[r.rhs.size() - 2], r.rhs.back()}});
  }
  g.rules = std::move(binned);

  // DEL: drop epsilon rules, expanding nullable occurrences.
  std::vector<bool> nullable = nullable_set(g);
  if (nullable[g.start])
    throw GrammarError(GrammarError::Kind::epsilon_language,
                       "language contains the empty string");
  std::vector<GrammarRule> deleted;
  for (const GrammarRule& r : g.rules) {
    if (r.rhs.empty()) continue;
    std::size_t k = r.rhs.size();  // 1 or 2 here
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<GrammarSymbol> rhs;
      bool valid = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::size_t{1} << i)) {
          if (r.rhs[i].terminal || !nullable[r.rhs[i].index]) {
            valid = false;
            break;
          }
        } else {
          rhs.push_back(r.rhs[i]);
        }
      }
      if (!valid || rhs.empty()) continue;
      deleted.push_back({r.lhs, std::move(rhs)});
    }
  }
  g.rules = std::move(deleted);
  dedup_rules(g.rules);

  // UNIT: replace unit chains with their non-unit expansions.
  std::size_t n = g.nonterminals.size();
  auto is_unit = [](const GrammarRule& r) {
    return r.rhs.size() == 1 && !r.rhs[0].terminal;
  };
  std::vector<GrammarRule> final_rules;
  for (std::size_t a = 0; a < n; ++a) {
    // Unit closure from a.
    std::vector<bool> reach(n, false);
    std::deque<std::int32_t> work{static_cast<std::int32_t>(a)};
    reach[a] = true;
    while (!work.empty()) {
      std::int32_t b = work.front();
      work.pop_front();
      for (const GrammarRule& r : g.rules)
        if (r.lhs == b && is_unit(r) && !reach[r.rhs[0].index]) {
          reach[r.rhs[0].index] = true;
          work.push_back(r.rhs[0].index);
        }
    }
    for (const GrammarRule& r : g.rules)
      if (reach[r.lhs] && !is_unit(r))
        final_rules.push_back({static_cast<std::int32_t>(a), r.rhs});
  }
  g.rules = std::move(final_rules);
  dedup_rules(g.rules);

  // PRUNE: keep generating and reachable symbols only.
  std::vector<bool> generating(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GrammarRule& r : g.rules) {
      if (generating[r.lhs]) continue;
      bool all = true;
      for (GrammarSymbol s : r.rhs)
        if (!s.terminal && !generating[s.index]) {
          all = false;
          break;
        }
      if (all) {
        generating[r.lhs] = true;
        changed = true;
      }
    }
  }
  if (!generating[g.start])
    throw GrammarError(GrammarError::Kind::empty_language,
                       "grammar generates no terminal string");
  std::vector<bool> reachable(n, false);
  reachable[g.start] = true;
  std::deque<std::int32_t> work{g.start};
  while (!work.empty()) {
    std::int32_t a = work.front();
    work.pop_front();
    for (const GrammarRule& r : g.rules) {
      if (r.lhs != a || !generating[a]) continue;
      bool all = true;
      for (GrammarSymbol s : r.rhs)
        if (!s.terminal && !generating[s.index]) all = false;
      if (!all) continue;
      for (GrammarSymbol s : r.rhs)
        if (!s.terminal && !reachable[s.index]) {
          reachable[s.index] = true;
          work.push_back(s.index);
        }
    }
  }

  // Renumber: start first, the rest in rule order of first occurrence.
  std::vector<std::int32_t> remap(n, -1);
  Grammar out;
  out.terminals = g.terminals;
  auto keep = [&](std::int32_t a) { return generating[a] && reachable[a]; };
  auto map_nt = [&](std::int32_t a) {
    if (remap[a] < 0) remap[a] = out.add_nonterminal(g.nonterminals[a]);
    return remap[a];
  };
  out.start = map_nt(g.start);
  for (const GrammarRule& r : g.rules) {
    if (!keep(r.lhs)) continue;
    bool all = true;
    for (GrammarSymbol s : r.rhs)
      if (!s.terminal && !keep(s.index)) all = false;
    if (!all) continue;
    GrammarRule nr;
    nr.lhs = map_nt(r.lhs);
    for (GrammarSymbol s : r.rhs)
      nr.rhs.push_back(s.terminal ? s : Grammar::N(map_nt(s.index)));
    out.rules.push_back(std::move(nr));
  }
  return out;
}

namespace {

std::vector<std::int32_t> encode_form(const std::vector<GrammarSymbol>& form) {
  std::vector<std::int32_t> out;
  out.reserve(form.size());
  for (GrammarSymbol s : form)
    out.push_back(s.index * 2 + (s.terminal ? 1 : 0));
  return out;
}

struct FormHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::int32_t x : v) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 0x100000001B3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::size_t kExplorationCap = 4000000;

}  // namespace

std::set<TerminalString> derive_strings(const Grammar& g, std::size_t max_len) {
  std::vector<bool> nullable = nullable_set(g);
  std::vector<std::vector<const GrammarRule*>> by_lhs(g.nonterminals.size());
  for (const GrammarRule& r : g.rules) by_lhs[r.lhs].push_back(&r);

  auto effective_len = [&](const std::vector<GrammarSymbol>& form) {
    std::size_t len = 0;
    for (GrammarSymbol s : form)
      if (s.terminal || !nullable[s.index]) ++len;
    return len;
  };
  const std::size_t raw_cap = 4 * max_len + 16;

  std::set<TerminalString> out;
  std::unordered_set<std::vector<std::int32_t>, FormHash> seen;
  std::deque<std::vector<GrammarSymbol>> work;
  std::vector<GrammarSymbol> start_form{Grammar::N(g.start)};
  work.push_back(start_form);
  seen.insert(encode_form(start_form));

  while (!work.empty()) {
    std::vector<GrammarSymbol> form = std::move(work.front());
    work.pop_front();

    std::size_t nt_pos = form.size();
    for (std::size_t i = 0; i < form.size(); ++i)
      if (!form[i].terminal) {
        nt_pos = i;
        break;
      }
    if (nt_pos == form.size()) {
      if (form.size() <= max_len) {
        TerminalString w;
        for (GrammarSymbol s : form) w.push_back(s.index);
        out.insert(std::move(w));
      }
      continue;
    }
    for (const GrammarRule* r : by_lhs[form[nt_pos].index]) {
      std::vector<GrammarSymbol> next;
      next.reserve(form.size() + r->rhs.size());
      next.insert(next.end(), form.begin(), form.begin() + nt_pos);
      next.insert(next.end(), r->rhs.begin(), r->rhs.end());
      next.insert(next.end(), form.begin() + nt_pos + 1, form.end());
      if (next.size() > raw_cap || effective_len(next) > max_len) continue;
      if (seen.size() >= kExplorationCap)
        throw std::runtime_error("derive_strings: exploration cap exceeded");
      if (seen.insert(encode_form(next)).second) work.push_back(std::move(next));
    }
  }
  return out;
}

bool cyk_member(const Grammar& g, const TerminalString& w) {
  if (!is_cnf(g))
    throw GrammarError(GrammarError::Kind::not_cnf, "cyk_member needs a CNF grammar");
  if (w.empty())
    throw GrammarError(GrammarError::Kind::precondition,
                       "cyk_member rejects the empty string");
  std::size_t n = w.size();
  std::vector<std::vector<std::set<std::int32_t>>> table(
      n, std::vector<std::set<std::int32_t>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (const GrammarRule& r : g.rules)
      if (r.rhs.size() == 1 && r.rhs[0].terminal && r.rhs[0].index == w[i])
        table[i][i].insert(r.lhs);
  for (std::size_t span = 2; span <= n; ++span) {
    for (std::size_t i = 0; i + span <= n; ++i) {
      std::size_t j = i + span - 1;
      for (std::size_t k = i; k < j; ++k) {
        for (const GrammarRule& r : g.rules) {
          if (r.rhs.size() != 2) continue;
          if (table[i][k].count(r.rhs[0].index) &&
              table[k + 1][j].count(r.rhs[1].index))
            table[i][j].insert(r.lhs);
        }
      }
    }
  }
  return table[0][n - 1].count(g.start) > 0;
}

std::set<std::vector<std::int32_t>> sentential_forms(const Grammar& g,
                                                     std::size_t max_len) {
  std::vector<bool> nullable = nullable_set(g);
  std::vector<std::vector<const GrammarRule*>> by_lhs(g.nonterminals.size());
  for (const GrammarRule& r : g.rules) by_lhs[r.lhs].push_back(&r);
  auto effective_len = [&](const std::vector<GrammarSymbol>& form) {
    std::size_t len = 0;
    for (GrammarSymbol s : form)
      if (s.terminal || !nullable[s.index]) ++len;
    return len;
  };
  const std::size_t raw_cap = 4 * max_len + 16;

  std::set<std::vector<std::int32_t>> out;
  std::deque<std::vector<GrammarSymbol>> work;
  std::vector<GrammarSymbol> start_form{Grammar::N(g.start)};
  out.insert(encode_form(start_form));
  work.push_back(start_form);

  while (!work.empty()) {
    std::vector<GrammarSymbol> form = std::move(work.front());
    work.pop_front();
    for (std::size_t i = 0; i < form.size(); ++i) {
      if (form[i].terminal) continue;
      for (const GrammarRule* r : by_lhs[form[i].index]) {
        std::vector<GrammarSymbol> next;
        next.reserve(form.size() + r->rhs.size());
        next.insert(next.end(), form.begin(), form.begin() + i);
        next.insert(next.end(), r->rhs.begin(), r->rhs.end());
        next.insert(next.end(), form.begin() + i + 1, form.end());
        if (next.size() > raw_cap || effective_len(next) > max_len) continue;
        if (out.size() >= kExplorationCap)
          throw std::runtime_error("sentential_forms: exploration cap exceeded");
        if (out.insert(encode_form(next)).second) work.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::string render_terminal_string(const Grammar& g, const TerminalString& w) {
  bool single_char = true;
  for (std::int32_t t : w)
    if (g.terminals[t].size() != 1) single_char = false;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char && i > 0) out += ' ';
    out += g.terminals[w[i]];
  }
  return out;
}

namespace {

bool valid_terminal_token(const std::string& tok) {
  return !tok.empty() && std::islower(static_cast<unsigned char>(tok[0]));
}

bool valid_nonterminal_token(const std::string& tok) {
  return !tok.empty() && std::isupper(static_cast<unsigned char>(tok[0]));
}

}  // namespace

Grammar parse_grammar(const std::string& text) {
  Grammar g;
  bool start_set = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;

    auto fail = [&](const std::string& msg) {
      throw GrammarError(GrammarError::Kind::parse,
                         "line " + std::to_string(line_no) + ": " + msg);
    };

    if (tokens[0] == "start:") {
      if (tokens.size() != 2 || !valid_nonterminal_token(tokens[1]))
        fail("expected `start: <Nonterminal>`");
      g.start = g.add_nonterminal(tokens[1]);
      start_set = true;
      continue;
    }
    if (tokens.size() < 3 || tokens[1] != "->")
      fail("expected `LHS -> RHS...`");
    if (!valid_nonterminal_token(tokens[0]))
      fail("rule left-hand side must be a capitalized token");
    std::int32_t lhs = g.add_nonterminal(tokens[0]);
    if (!start_set) {
      g.start = lhs;
      start_set = true;
    }
    std::vector<GrammarSymbol> rhs;
    bool rhs_is_eps = false;
    auto flush = [&]() {
      if (rhs_is_eps && !rhs.empty()) fail("`eps` cannot be mixed with symbols");
      g.add_rule(lhs, rhs);
      rhs.clear();
      rhs_is_eps = false;
    };
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      if (tokens[i] == "|") {
        if (rhs.empty() && !rhs_is_eps) fail("empty alternative; use `eps`");
        flush();
      } else if (tokens[i] == "eps") {
        rhs_is_eps = true;
      } else if (valid_terminal_token(tokens[i])) {
        rhs.push_back(Grammar::T(g.add_terminal(tokens[i])));
      } else if (valid_nonterminal_token(tokens[i])) {
        rhs.push_back(Grammar::N(g.add_nonterminal(tokens[i])));
      } else {
        fail("bad token '" + tokens[i] + "'");
      }
    }
    if (rhs.empty() && !rhs_is_eps) fail("empty alternative; use `eps`");
    flush();
  }
  if (g.rules.empty())
    throw GrammarError(GrammarError::Kind::parse, "no rules in grammar");
  return g;
}

std::string serialize_grammar(const Grammar& g) {
  std::string out = "start: " + g.nonterminals[g.start] + "\n";
  for (const GrammarRule& r : g.rules) {
    out += g.nonterminals[r.lhs] + " ->";
    if (r.rhs.empty()) out += " eps";
    for (GrammarSymbol s : r.rhs)
      out += " " + (s.terminal ? g.terminals[s.index] : g.nonterminals[s.index]);
    out += "\n";
  }
  return out;
}

}  // namespace insys
