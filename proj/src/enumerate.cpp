#include "insys/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace insys {

namespace {

struct IdSeqHash {
  std::size_t operator()(const std::vector<std::int32_t>& ids) const noexcept {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    for (std::int32_t v : ids) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 0x100000001B3ull;
      h ^= h >> 31;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

bool is_terminal(const InsertionSystem& sys, const Polymer& p) {
  for (std::size_t i = 0; i + 1 < p.length(); ++i)
    if (sys.any_insertable(p.site_at(i))) return false;
  return true;
}

std::size_t ReachableSet::terminal_count() const {
  std::size_t n = 0;
  for (bool t : terminal) n += t ? 1 : 0;
  return n;
}

std::vector<std::size_t> ReachableSet::terminal_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < terminal.size(); ++i)
    if (terminal[i]) out.push_back(i);
  return out;
}

ReachableSet enumerate_polymers(const InsertionSystem& sys,
                                const EnumerationLimits& limits) {
  ReachableSet result;
  result.limits = limits;

  std::unordered_set<std::vector<std::int32_t>, IdSeqHash> seen;
  std::deque<Polymer> frontier;

  Polymer init{sys};
  seen.insert(init.monomer_ids());
  result.polymers.push_back(init);
  frontier.push_back(init);

  while (!frontier.empty()) {
    Polymer p = std::move(frontier.front());
    frontier.pop_front();
    bool any = false;
    for (std::size_t i = 0; i + 1 < p.length(); ++i) {
      for (std::int32_t id : sys.insertable_types(p.site_at(i))) {
        any = true;
        if (p.length() + 1 > limits.max_length) {
          result.truncated = true;
          continue;
        }
        Polymer child = p.insert(i, id);
        if (!seen.insert(child.monomer_ids()).second) continue;
        if (result.polymers.size() >= limits.max_count) {
          result.truncated = true;
          continue;
        }
        result.polymers.push_back(child);
        frontier.push_back(child);
      }
    }
    // FIFO pop order equals push order into result.polymers, so the flags
    // stay aligned even when children are dropped at the bounds.
    result.terminal.push_back(!any);
  }
  return result;
}

std::vector<std::vector<Symbol>> language(const InsertionSystem& sys,
                                          std::size_t max_length,
                                          const EnumerationLimits& limits) {
  EnumerationLimits l = limits;
  l.max_length = std::min(l.max_length, max_length);
  ReachableSet rs = enumerate_polymers(sys, l);
  std::vector<std::vector<Symbol>> out;
  for (std::size_t i = 0; i < rs.polymers.size(); ++i)
    if (rs.terminal[i] && rs.polymers[i].length() <= max_length)
      out.push_back(rs.polymers[i].string_representation());
  std::sort(out.begin(), out.end(),
            [](const std::vector<Symbol>& x, const std::vector<Symbol>& y) {
              return std::lexicographical_compare(
                  x.begin(), x.end(), y.begin(), y.end(),
                  [](Symbol p, Symbol q) { return p.code < q.code; });
            });
  return out;
}

std::int32_t SiteGraph::index_of(const InsertionSite& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

SiteGraph build_site_graph(const InsertionSystem& sys, std::size_t max_sites) {
  SiteGraph g;
  auto intern = [&](const InsertionSite& s) -> std::int32_t {
    auto it = g.index_.find(s);
    if (it != g.index_.end()) return it->second;
    std::int32_t id = static_cast<std::int32_t>(g.nodes.size());
    g.index_.emplace(s, id);
    g.nodes.push_back(s);
    g.out_edges.emplace_back();
    return id;
  };

  intern(sys.initiator_site());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::int32_t type : sys.insertable_types(g.nodes[i])) {
      if (g.nodes.size() + 2 > max_sites) {
        g.truncated = true;
        return g;
      }
      auto [left, right] = successor_sites(g.nodes[i], sys.monomer(type));
      SiteGraph::Edge e;
      e.from = static_cast<std::int32_t>(i);
      e.type = type;
      e.left = intern(left);
      e.right = intern(right);
      g.out_edges[i].push_back(static_cast<std::int32_t>(g.edges.size()));
      g.edges.push_back(e);
    }
  }
  return g;
}

namespace {

constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

// Max insertions below each node of an acyclic site graph; memoized DFS.
std::uint64_t max_insertions_below(const SiteGraph& g, std::int32_t node,
                                   std::vector<std::uint64_t>& memo,
                                   std::vector<std::uint8_t>& done) {
  if (done[node]) return memo[node];
  std::uint64_t best = 0;
  for (std::int32_t ei : g.out_edges[node]) {
    const auto& e = g.edges[ei];
    std::uint64_t total =
        sat_add(1, sat_add(max_insertions_below(g, e.left, memo, done),
                           max_insertions_below(g, e.right, memo, done)));
    best = std::max(best, total);
  }
  done[node] = 1;
  memo[node] = best;
  return best;
}

bool find_cycle(const SiteGraph& g) {
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> color(g.nodes.size(), white);
  // Iterative DFS over the flattened successor list (2 per edge);
  // a grey->grey edge is a cycle.
  struct Frame {
    std::int32_t node;
    std::size_t next = 0;
  };
  auto successor = [&](std::int32_t node, std::size_t k) {
    const auto& e = g.edges[g.out_edges[node][k >> 1]];
    return (k & 1) ? e.right : e.left;
  };
  std::vector<Frame> stack;
  for (std::int32_t start = 0; start < static_cast<std::int32_t>(g.nodes.size());
       ++start) {
    if (color[start] != white) continue;
    stack.push_back({start, 0});
    color[start] = grey;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < 2 * g.out_edges[f.node].size()) {
        std::int32_t succ = successor(f.node, f.next++);
        if (color[succ] == grey) return true;
        if (color[succ] == white) {
          color[succ] = grey;
          stack.push_back({succ, 0});
        }
      } else {
        color[f.node] = black;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

SiteStructure analyze_site_structure(const InsertionSystem& sys,
                                     std::size_t max_sites) {
  SiteGraph g = build_site_graph(sys, max_sites);
  SiteStructure s;
  s.truncated = g.truncated;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.out_edges[i].size() > 1) {
      s.single_type_everywhere = false;
      if (!s.multi_type_site) s.multi_type_site = g.nodes[i];
    }
  }
  if (g.truncated) {
    s.acyclic = false;  // unknown; report conservatively
    return s;
  }
  s.acyclic = !find_cycle(g);
  if (s.acyclic) {
    std::vector<std::uint64_t> memo(g.nodes.size(), 0);
    std::vector<std::uint8_t> done(g.nodes.size(), 0);
    s.max_insertions = max_insertions_below(g, 0, memo, done);
    if (s.single_type_everywhere) s.deterministic_insertions = s.max_insertions;
  }
  return s;
}

DeterminismResult check_deterministic(const InsertionSystem& sys,
                                      const EnumerationLimits& limits) {
  ReachableSet rs = enumerate_polymers(sys, limits);
  DeterminismResult r;

  std::vector<std::size_t> terminals = rs.terminal_indices();
  if (terminals.size() >= 2) {
    r.verdict = Verdict::not_deterministic;
    r.terminal = rs.polymers[terminals[0]];
    r.witness = rs.polymers[terminals[1]];
    r.reason = "two distinct terminal polymers (lengths " +
               std::to_string(rs.polymers[terminals[0]].length()) + " and " +
               std::to_string(rs.polymers[terminals[1]].length()) + ")";
    return r;
  }
  if (terminals.size() == 1) {
    const Polymer& p = rs.polymers[terminals[0]];
    r.terminal = p;
    for (std::size_t i = 0; i < rs.polymers.size(); ++i) {
      if (i == terminals[0]) continue;
      if (rs.polymers[i].length() >= p.length()) {
        r.verdict = Verdict::not_deterministic;
        r.witness = rs.polymers[i];
        r.reason = "non-terminal polymer of length " +
                   std::to_string(rs.polymers[i].length()) +
                   " is not shorter than the terminal polymer (length " +
                   std::to_string(p.length()) + ")";
        return r;
      }
    }
    if (rs.truncated) {
      r.verdict = Verdict::inconclusive;
      r.reason = "bounds hit before the closure completed; no witness found";
      return r;
    }
    r.verdict = Verdict::deterministic;
    r.reason = "unique terminal polymer of length " + std::to_string(p.length()) +
               "; all " + std::to_string(rs.polymers.size() - 1) +
               " other constructed polymers are shorter and non-terminal";
    return r;
  }
  if (rs.truncated) {
    r.verdict = Verdict::inconclusive;
    r.reason = "bounds hit before any terminal polymer was found";
  } else {
    r.verdict = Verdict::not_deterministic;
    r.reason = "closure completed with no terminal polymer";
  }
  return r;
}

GrowthDeterminismResult check_growth_deterministic(const InsertionSystem& sys,
                                                   std::size_t max_sites) {
  SiteGraph g = build_site_graph(sys, max_sites);
  GrowthDeterminismResult r;
  r.truncated = g.truncated;

  auto site_live = [&](std::int32_t node) {
    return !g.out_edges[node].empty();
  };
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.out_edges[i].size() < 2) continue;
    int growing = 0;
    for (std::int32_t ei : g.out_edges[i]) {
      const auto& e = g.edges[ei];
      if (site_live(e.left) || site_live(e.right)) ++growing;
    }
    if (growing > 1) {
      r.growth_deterministic = false;
      r.violations.push_back(g.nodes[i]);
    }
  }
  if (!g.truncated) {
    r.acyclic = !find_cycle(g);
    if (r.acyclic) {
      std::vector<std::uint64_t> memo(g.nodes.size(), 0);
      std::vector<std::uint8_t> done(g.nodes.size(), 0);
      r.max_insertions = max_insertions_below(g, 0, memo, done);
    }
  } else {
    r.acyclic = false;
  }
  return r;
}

}  // namespace insys
