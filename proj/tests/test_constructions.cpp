#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "insys/analyzer.hpp"
#include "insys/constructions.hpp"
#include "insys/enumerate.hpp"
#include "insys/io.hpp"
#include "insys/rng.hpp"
#include "oracles.hpp"

using namespace insys;

namespace {

Symbol S(int base) { return Symbol{base, false}; }
Symbol Ss(int base) { return Symbol{base, true}; }

bool contains_monomer(const InsertionSystem& sys, const MonomerType& m) {
  for (const MonomerType& have : sys.monomers())
    if (have == m) return true;
  return false;
}

// Exhausts a toy replacement system and returns the unique terminal polymer.
Polymer settle(const InsertionSystem& sys) {
  ReachableSet rs = enumerate_polymers(sys);
  REQUIRE_FALSE(rs.truncated);
  auto terminals = rs.terminal_indices();
  REQUIRE(terminals.size() == 1);
  return rs.polymers[terminals[0]];
}

}  // namespace

TEST_CASE("compile_replacement emits the table pairs") {
  ReplacementSpec spec{1, S(0), S(1), S(2), S(3), S(4), S(5)};
  auto [p1, n1] = compile_replacement(spec);
  CHECK(p1 == make_monomer(Ss(1), S(5), S(4), Ss(2), Sign::positive));
  CHECK(n1 == make_monomer(S(5), Ss(4), S(0), S(3), Sign::negative));

  spec.row = 4;
  auto [n4, p4] = compile_replacement(spec);
  CHECK(n4 == make_monomer(S(4), Ss(1), Ss(2), S(5), Sign::negative));
  CHECK(p4 == make_monomer(Ss(0), S(3), S(5), Ss(4), Sign::positive));

  spec.row = 0;
  CHECK_THROWS_AS(compile_replacement(spec), std::invalid_argument);
}

TEST_CASE("each replacement row rewrites one site symbol, all by-products dead") {
  const Symbol a = S(0), b = S(1), c = S(2), d = S(3), u = S(4), x = S(5);
  struct Case {
    int row;
    Initiator init;
    InsertionSite replaced;
  };
  // Rows 1-2 act on (s_a,s_b)(s_c,s_a*); rows 3-4 on (s_b,s_a)(s_a*,s_c).
  std::vector<Case> cases = {
      {1, {a, b, c, complement(a)}, {a, d, c, complement(a)}},
      {2, {a, b, c, complement(a)}, {a, b, d, complement(a)}},
      {3, {b, a, complement(a), c}, {d, a, complement(a), c}},
      {4, {b, a, complement(a), c}, {b, a, complement(a), d}},
  };
  for (const Case& k : cases) {
    CAPTURE(k.row);
    ReplacementSpec spec{k.row, a, b, c, d, u, x};
    auto [m1, m2] = compile_replacement(spec);
    m1.concentration = 0.5;
    m2.concentration = 0.5;
    InsertionSystem sys(6, {m1, m2}, k.init);
    REQUIRE(sys.validate().ok());
    Polymer terminal = settle(sys);
    CHECK(terminal.length() == 4);  // exactly the two gadget insertions
    // One surviving (but here inert) rewritten site; the rest carry x.
    bool found = false;
    for (std::size_t i = 0; i + 1 < terminal.length(); ++i)
      if (terminal.site_at(i) == k.replaced) found = true;
    CHECK(found);
  }
}

TEST_CASE("gen_counter_system r=1: size, spot checks, x discipline") {
  InsertionSystem sys = gen_counter_system(1);
  CHECK(sys.validate().ok());
  CHECK(sys.monomers().size() == 39);  // 12r^2 + 24r + 3

  // f_i(k) = k + 2i for r=1; x sits one past f_12(1) = 25.
  const Symbol x = S(26);
  CHECK(sys.symbol_count() == 27);
  // Middle step 1, c=0: (s_r*, s_{f2(0)}, x, s_0*)+ = (s1*, s4, x, s0*)+.
  CHECK(contains_monomer(sys, make_monomer(Ss(1), S(4), x, Ss(0), Sign::positive)));
  // Inner step 1, b=0, c=0: (s0*, s16, s17, s0*)+.
  CHECK(contains_monomer(sys, make_monomer(Ss(0), S(16), S(17), Ss(0),
                                           Sign::positive)));
  // Outer step 1: (s_r*, x, s_{f6(r)}, s_r*)+ = (s1*, x, s13, s1*)+.
  CHECK(contains_monomer(sys, make_monomer(Ss(1), x, S(13), Ss(1),
                                           Sign::positive)));
  // Outer step 3, a=0: (s_{f5(0)}*, x, s_1, s_{f5(0)})+ = (s10*, x, s1, s10)+.
  CHECK(contains_monomer(sys, make_monomer(Ss(10), x, S(1), S(10),
                                           Sign::positive)));

  // x* appears on no monomer; every monomer except the inner step-1
  // duplicators (s_b*, s_f8(c), s_f8(b+1), s_c*)+ carries x.
  std::size_t without_x = 0;
  for (const MonomerType& m : sys.monomers()) {
    bool has_x = false;
    for (Symbol s : m.quad) {
      CHECK(s != complement(x));
      if (s == x) has_x = true;
    }
    if (!has_x) ++without_x;
  }
  CHECK(without_x == 1 * (1 + 1));  // r(r+1) duplicator monomers

  CHECK(sys.initiator().qa == S(0));
  CHECK(sys.initiator().qb == S(0));
  CHECK(sys.initiator().rc == S(0));
  CHECK(sys.initiator().rd == Ss(0));
}

TEST_CASE("gen_counter_system monomer counts match the paper bound") {
  for (int r : {1, 2, 3}) {
    InsertionSystem sys = gen_counter_system(r);
    CHECK(sys.monomers().size() ==
          static_cast<std::size_t>(12 * r * r + 24 * r + 3));
    CHECK(sys.monomers().size() <= static_cast<std::size_t>(39 * r * r));
    CHECK(sys.validate().ok());
  }
  CHECK_THROWS_AS(gen_counter_system(0), std::invalid_argument);
}

TEST_CASE("counter system is deterministic at the site level with oracle length") {
  for (int r : {1, 2}) {
    CAPTURE(r);
    SiteStructure st = analyze_site_structure(gen_counter_system(r));
    CHECK(st.single_type_everywhere);
    CHECK(st.acyclic);
    REQUIRE(st.deterministic_insertions.has_value());
    CHECK(*st.deterministic_insertions == test::counter_insertions(r, 0, 0, 0));
  }
}

TEST_CASE("counter mixed sites are exactly the outer-increment handoffs") {
  for (int r : {1, 2}) {
    CAPTURE(r);
    InsertionSystem sys = gen_counter_system(r);
    SiteGraph g = build_site_graph(sys);
    REQUIRE_FALSE(g.truncated);
    std::set<std::pair<int, int>> mixed_forms;
    for (const InsertionSite& site : g.nodes) {
      if (!site.valid() || classify_site(site) != SiteClass::mixed) continue;
      // Expect (s_a, s_{f5(a)})(s_{f5(a)}*, s_a*) with 0 <= a < r.
      REQUIRE_FALSE(site.a.starred());
      REQUIRE_FALSE(site.b.starred());
      int a = site.a.base();
      CHECK(a < r);
      CHECK(site.b.base() == counter_offset(5, a, r));
      CHECK(site.c == complement(site.b));
      CHECK(site.d == complement(site.a));
      mixed_forms.insert({a, site.b.base()});
    }
    CHECK(mixed_forms.size() == static_cast<std::size_t>(r));
  }
}

TEST_CASE("fast_forward reproduces the r=1 terminal polymer") {
  InsertionSystem sys = gen_counter_system(1);
  Polymer p = fast_forward(sys);
  CHECK(p.length() == test::counter_terminal_length(1));
  CHECK(p.length() == 245);
  CHECK(is_terminal(sys, p));

  CHECK_THROWS_AS(fast_forward(gen_doubling_system()), std::invalid_argument);
}

TEST_CASE("fast_forward result is insertion-order independent") {
  InsertionSystem sys = gen_counter_system(1);
  Polymer reference = fast_forward(sys);

  // Re-run the closure processing live sites in seeded random order.
  struct Node {
    std::int32_t id, next;
  };
  for (std::uint64_t seed : {1ull, 99ull}) {
    Xoshiro256pp rng(seed);
    std::vector<Node> nodes{{-1, 1}, {-2, -1}};
    struct Work {
      InsertionSite site;
      std::int32_t left;
    };
    std::vector<Work> live{{sys.initiator_site(), 0}};
    while (!live.empty()) {
      std::size_t pick = rng.next() % live.size();
      Work w = live[pick];
      live.erase(live.begin() + pick);
      auto types = sys.insertable_types(w.site);
      if (types.empty()) continue;
      const MonomerType& m = sys.monomer(types[0]);
      std::int32_t nn = static_cast<std::int32_t>(nodes.size());
      nodes.push_back({types[0], nodes[w.left].next});
      nodes[w.left].next = nn;
      auto [l, r] = successor_sites(w.site, m);
      live.push_back({l, w.left});
      live.push_back({r, nn});
    }
    std::vector<std::int32_t> ids;
    for (std::int32_t nidx = nodes[0].next; nidx != 1; nidx = nodes[nidx].next)
      ids.push_back(nodes[nidx].id);
    CHECK(ids == reference.monomer_ids());
  }
}

TEST_CASE("counter subpolymer sizes obey the doubling recurrence") {
  for (int r : {1, 2}) {
    CAPTURE(r);
    auto states = test::counter_state_path(r);
    std::vector<std::uint64_t> sizes;
    for (auto [a, b, c] : states)
      sizes.push_back(test::counter_insertions(r, a, b, c));
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
      CHECK(sizes[i] <= 2 * sizes[i + 1] + 9);
      if (i + 2 < sizes.size()) CHECK(sizes[i] >= 2 * sizes[i + 2] + 9);
    }
    // Terminal length growth window from the recurrence, evaluated numerically.
    std::uint64_t states_n = sizes.size();
    std::uint64_t upper = (1ull << (states_n - 1)) * 10 - 9;
    std::uint64_t lower = (1ull << ((states_n - 1) / 2)) * 10 - 9;
    CHECK(sizes[0] <= upper);
    CHECK(sizes[0] >= lower / 2);
  }
  // r=2 must exceed r=1 by far more than the 8x acceptance threshold.
  CHECK(test::counter_terminal_length(2) >
        8 * test::counter_terminal_length(1));
}

TEST_CASE("gen_fast_system rejects bad r and sizes correctly") {
  CHECK_THROWS_AS(gen_fast_system(0), std::invalid_argument);
  CHECK_THROWS_AS(gen_fast_system(2), std::invalid_argument);
  CHECK_THROWS_AS(gen_fast_system(-3), std::invalid_argument);

  InsertionSystem r1 = gen_fast_system(1);
  CHECK(r1.validate().ok());
  InsertionSystem r3 = gen_fast_system(3);
  CHECK(r3.validate().ok());
  CHECK(r3.monomers().size() == 64);
}

TEST_CASE("fast system r=3 is growth-deterministic with a finite longest polymer") {
  InsertionSystem sys = gen_fast_system(3);
  GrowthDeterminismResult g = check_growth_deterministic(sys);
  CHECK(g.growth_deterministic);
  CHECK(g.acyclic);
  CHECK(g.max_insertions == test::fast_insertions(3, 0, 0));

  // At least one site accepts several monomer types (the competitions).
  SiteStructure st = analyze_site_structure(sys);
  CHECK_FALSE(st.single_type_everywhere);
}

TEST_CASE("fast system counter states cover [0,r]^2 in lexicographic order") {
  const int r = 3;
  InsertionSystem sys = gen_fast_system(r);
  SiteGraph g = build_site_graph(sys);
  REQUIRE_FALSE(g.truncated);

  // Counter sites look like (s_{fp(a)}, s_{fp(b)})(s_{fp(b)}*, s_{fp(a)}*)
  // with p = b mod 2.
  auto decode = [&](Symbol s, int parity) -> int {
    if (s.starred()) return -1;
    int k = s.base() - counter_offset(parity, 0, r);
    return (k >= 0 && k <= r) ? k : -1;
  };
  auto counter_state = [&](const InsertionSite& site) -> std::pair<int, int> {
    for (int p : {0, 1}) {
      int a = decode(site.a, p);
      int b = decode(site.b, p);
      if (a < 0 || b < 0 || b % 2 != p) continue;
      if (site.c == complement(site.b) && site.d == complement(site.a))
        return {a, b};
    }
    return {-1, -1};
  };

  std::map<std::pair<int, int>, std::int32_t> counters;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    auto st = counter_state(g.nodes[i]);
    if (st.first >= 0) counters[st] = static_cast<std::int32_t>(i);
  }
  // All (a,b) in [0,r]^2 appear, rooted at (0,0).
  CHECK(counters.size() == static_cast<std::size_t>((r + 1) * (r + 1)));
  CHECK(counters.count({0, 0}) == 1);
  CHECK(counters.at({0, 0}) == 0);

  // Every counter site reaches only lexicographically larger counter states.
  for (const auto& [state, node] : counters) {
    std::set<std::int32_t> visited;
    std::deque<std::int32_t> work;
    auto push_succs = [&](std::int32_t from) {
      for (std::int32_t ei : g.out_edges[from]) {
        for (std::int32_t nxt : {g.edges[ei].left, g.edges[ei].right})
          if (visited.insert(nxt).second) work.push_back(nxt);
      }
    };
    push_succs(node);
    while (!work.empty()) {
      std::int32_t cur = work.front();
      work.pop_front();
      auto st = counter_state(g.nodes[cur]);
      if (st.first >= 0) {
        CHECK(st > state);  // strictly lex-greater; stop descending here
        continue;
      }
      push_succs(cur);
    }
  }
}

TEST_CASE("fast system r=1 enumerates to a finite set matching the oracle") {
  InsertionSystem sys = gen_fast_system(1);
  ReachableSet rs = enumerate_polymers(sys);
  REQUIRE_FALSE(rs.truncated);
  test::DfsClosure dfs;
  dfs.explore(sys, Polymer{sys});
  CHECK(rs.polymers.size() == dfs.seen.size());
  CHECK(rs.terminal_count() == dfs.terminals.size());
  std::size_t longest = 0;
  for (std::size_t i : rs.terminal_indices())
    longest = std::max(longest, rs.polymers[i].length());
  CHECK(longest == test::fast_longest_length(1));
}

TEST_CASE("gen_doubling_system matches its definition") {
  InsertionSystem sys = gen_doubling_system();
  REQUIRE(sys.monomers().size() == 2);
  CHECK(sys.monomers()[0] ==
        make_monomer(Ss(2), Ss(1), S(1), S(2), Sign::positive));
  CHECK(sys.monomers()[1] == make_monomer(Ss(2), S(3), S(3), S(2), Sign::positive));
  CHECK(sys.monomers()[0].concentration == doctest::Approx(0.5));
  CHECK(sys.monomers()[1].concentration == doctest::Approx(0.5));
  CHECK(sys.initiator().qa == S(1));
  CHECK(sys.initiator().qb == S(2));
  CHECK(sys.initiator().rc == Ss(2));
  CHECK(sys.initiator().rd == Ss(1));

  // Length-2 polymer is not terminal; constructed polymers reach every
  // length up to the bound.
  ReachableSet rs = enumerate_polymers(sys, {10, 1000000});
  CHECK_FALSE(is_terminal(sys, Polymer{sys}));
  std::set<std::size_t> lens;
  for (const Polymer& p : rs.polymers) lens.insert(p.length());
  for (std::size_t len = 2; len <= 10; ++len) CHECK(lens.count(len) == 1);
}
