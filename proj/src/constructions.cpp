#include "insys/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "insys/analyzer.hpp"
#include "insys/enumerate.hpp"

namespace insys {

std::pair<MonomerType, MonomerType> compile_replacement(const ReplacementSpec& spec) {
  const Symbol a = spec.a, b = spec.b, c = spec.c, d = spec.d;
  const Symbol u = spec.u, x = spec.x;
  auto neg = [](Symbol s) { return complement(s); };
  switch (spec.row) {
    case 1:
      return {make_monomer(neg(b), x, u, neg(c), Sign::positive),
              make_monomer(x, neg(u), a, d, Sign::negative)};
    case 2:
      return {make_monomer(neg(b), u, x, neg(c), Sign::positive),
              make_monomer(d, neg(a), neg(u), x, Sign::negative)};
    case 3:
      return {make_monomer(x, neg(b), neg(c), u, Sign::negative),
              make_monomer(neg(u), x, d, a, Sign::positive)};
    case 4:
      return {make_monomer(u, neg(b), neg(c), x, Sign::negative),
              make_monomer(neg(a), d, x, neg(u), Sign::positive)};
    default:
      throw std::invalid_argument("replacement row must be 1..4");
  }
}

namespace {

class MonomerBag {
 public:
  void add(MonomerType m) {
    for (const MonomerType& have : monomers_)
      if (have == m) return;
    monomers_.push_back(m);
  }
  std::vector<MonomerType> take() { return std::move(monomers_); }

 private:
  std::vector<MonomerType> monomers_;
};

}  // namespace

InsertionSystem gen_counter_system(int r) {
  if (r < 1) throw std::invalid_argument("counter system needs r >= 1");
  auto f = [r](int i, int k) { return Symbol{counter_offset(i, k, r), false}; };
  auto fs = [r](int i, int k) { return Symbol{counter_offset(i, k, r), true}; };
  auto s = [](int k) { return Symbol{k, false}; };
  auto ss = [](int k) { return Symbol{k, true}; };
  const std::int32_t x_base = counter_offset(12, r, r) + 1;
  const Symbol x{x_base, false};

  MonomerBag bag;
  // Inner increment (duplication), variables b < r with c and a free.
  for (int b = 0; b < r; ++b)
    for (int c = 0; c <= r; ++c)
      bag.add(make_monomer(ss(b), f(8, c), f(8, b + 1), ss(c), Sign::positive));
  for (int c = 0; c <= r; ++c)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(f(8, c), ss(a), fs(8, c), x, Sign::negative));
  for (int b = 0; b < r; ++b)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(x, fs(8, b + 1), s(a), s(b + 1), Sign::negative));
  for (int b = 0; b < r; ++b)
    for (int c = 0; c <= r; ++c)
      bag.add(make_monomer(ss(b), x, f(10, b), fs(8, c), Sign::positive));
  for (int b = 0; b < r; ++b)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(x, fs(10, b), s(a), f(9, b), Sign::negative));
  for (int b = 0; b < r; ++b)
    for (int c = 0; c <= r; ++c)
      bag.add(make_monomer(fs(9, b), f(11, c), x, fs(8, c), Sign::positive));
  for (int c = 0; c <= r; ++c)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(s(c), ss(a), fs(11, c), x, Sign::negative));
  for (int b = 0; b < r; ++b)
    for (int c = 0; c <= r; ++c)
      bag.add(make_monomer(fs(9, b), x, f(12, b + 1), ss(c), Sign::positive));
  for (int b = 0; b < r; ++b)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(x, fs(12, b + 1), s(a), s(b + 1), Sign::negative));

  // Middle increment, variable c < r with a free.
  for (int c = 0; c < r; ++c)
    bag.add(make_monomer(ss(r), f(2, c), x, ss(c), Sign::positive));
  for (int c = 0; c < r; ++c)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(f(1, c), ss(a), fs(2, c), x, Sign::negative));
  for (int c = 0; c < r; ++c)
    bag.add(make_monomer(ss(r), x, f(3, c), fs(1, c), Sign::positive));
  for (int c = 0; c < r; ++c)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(x, fs(3, c), s(a), s(0), Sign::negative));
  for (int c = 0; c < r; ++c)
    bag.add(make_monomer(ss(0), f(4, c + 1), x, fs(1, c), Sign::positive));
  for (int c = 0; c < r; ++c)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(s(c + 1), ss(a), fs(4, c + 1), x, Sign::negative));

  // Outer increment, variable a < r.
  bag.add(make_monomer(ss(r), x, f(6, r), ss(r), Sign::positive));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(x, fs(6, r), s(a), f(5, a), Sign::negative));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(5, a), fs(7, r), x, ss(r), Sign::positive));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(5, a), ss(a), f(7, r), x, Sign::negative));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(5, a), x, s(a + 1), f(5, a), Sign::positive));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(s(0), ss(a + 1), s(a), x, Sign::negative));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(5, a), x, f(7, r), ss(0), Sign::positive));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(x, fs(7, r), s(a + 1), s(0), Sign::negative));

  std::vector<MonomerType> monomers = bag.take();
  double conc = 1.0 / static_cast<double>(monomers.size());
  for (MonomerType& m : monomers) m.concentration = conc;

  Initiator init{s(0), s(0), s(0), ss(0)};
  return InsertionSystem(x_base + 1, std::move(monomers), init);
}

InsertionSystem gen_fast_system(int r) {
  if (r < 1 || r % 2 == 0)
    throw std::invalid_argument("fast system needs positive odd r");
  auto f = [r](int i, int k) { return Symbol{counter_offset(i, k, r), false}; };
  auto fs = [r](int i, int k) { return Symbol{counter_offset(i, k, r), true}; };
  const std::int32_t x_base = counter_offset(3, r + 1, r) + 1;
  const Symbol x{x_base, false};

  MonomerBag bag;
  // Inner even-to-odd, b even, b < r. Step 1 always; steps 2-3 only when the
  // incremented-by-2 site exists (b+2 <= r), otherwise it must stay
  // uninsertable.
  for (int b = 0; b < r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(1, b + 1), fs(0, a), f(0, a), x, Sign::negative));
  for (int b = 0; b < r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(0, b), x, f(1, a), f(1, b + 1), Sign::positive));
  for (int b = 0; b < r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(1, b + 1), fs(1, a), f(0, a), f(2, b + 2),
                           Sign::negative));
  for (int b = 0; b + 2 <= r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(2, b + 2), fs(2, a), x, f(1, b + 1), Sign::positive));
  for (int b = 0; b + 2 <= r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(0, b + 2), fs(0, a), f(2, a), x, Sign::negative));
  for (int b = 0; b + 2 <= r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(2, b + 2), x, f(3, a), f(0, b + 2), Sign::positive));
  for (int b = 0; b + 2 <= r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(x, fs(3, a), f(0, a), f(0, b + 2), Sign::negative));

  // Inner odd-to-even, b odd, b < r.
  for (int b = 1; b < r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(0, b + 1), fs(1, a), f(1, a), x, Sign::negative));
  for (int b = 1; b < r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(1, b), x, f(0, a), f(0, b + 1), Sign::positive));
  for (int b = 1; b < r; b += 2)
    for (int a = 0; a <= r; ++a)
      bag.add(make_monomer(fs(0, b + 1), fs(0, a), f(1, a), x, Sign::negative));

  // Outer, a < r.
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(1, r), x, f(3, a + 1), f(1, r), Sign::positive));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(0, 0), fs(3, a + 1), f(1, a), x, Sign::negative));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(1, r), x, f(0, a + 1), f(0, 0), Sign::positive));
  for (int a = 0; a < r; ++a)
    bag.add(make_monomer(fs(0, 0), fs(0, a + 1), f(3, a + 1), x, Sign::negative));

  std::vector<MonomerType> monomers = bag.take();

  // Concentrations: 1/m to each insertion set, split equally inside a set.
  {
    for (std::size_t i = 0; i < monomers.size(); ++i)
      monomers[i].id = static_cast<std::int32_t>(i);
    Initiator init{f(0, 0), f(0, 0), fs(0, 0), fs(0, 0)};
    InsertionSystem probe(x_base + 1, monomers, init);
    InsertionSetPartition part = insertion_sets(probe);
    double per_set = 1.0 / static_cast<double>(part.sets.size());
    for (std::size_t i = 0; i < monomers.size(); ++i) {
      std::size_t size = part.sets[part.set_of[i]].size();
      monomers[i].concentration = per_set / static_cast<double>(size);
    }
  }

  Initiator init{f(0, 0), f(0, 0), fs(0, 0), fs(0, 0)};
  return InsertionSystem(x_base + 1, std::move(monomers), init);
}

InsertionSystem gen_doubling_system() {
  Symbol s1{1, false}, s2{2, false}, x{3, false};
  std::vector<MonomerType> monomers;
  monomers.push_back(
      make_monomer(complement(s2), complement(s1), s1, s2, Sign::positive));
  monomers.back().concentration = 0.5;
  monomers.push_back(make_monomer(complement(s2), x, x, s2, Sign::positive));
  monomers.back().concentration = 0.5;
  Initiator init{s1, s2, complement(s2), complement(s1)};
  return InsertionSystem(4, std::move(monomers), init);
}

Polymer fast_forward(const InsertionSystem& sys, std::size_t max_sites) {
  SiteStructure st = analyze_site_structure(sys, max_sites);
  if (st.truncated)
    throw std::invalid_argument("fast_forward: site graph exceeds bound");
  if (!st.single_type_everywhere)
    throw std::invalid_argument(
        "fast_forward: site " + site_name(*st.multi_type_site) +
        " admits more than one monomer type");
  if (!st.acyclic)
    throw std::invalid_argument("fast_forward: site graph has a cycle; closure "
                                "would not terminate");

  struct Node {
    std::int32_t monomer_id;
    std::int32_t next;
  };
  std::vector<Node> nodes{{-1, 1}, {-2, -1}};
  struct Work {
    InsertionSite site;
    std::int32_t left_node;
  };
  std::vector<Work> stack{{sys.initiator_site(), 0}};
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    std::vector<std::int32_t> types = sys.insertable_types(w.site);
    if (types.empty()) continue;
    const MonomerType& m = sys.monomer(types[0]);
    std::int32_t nn = static_cast<std::int32_t>(nodes.size());
    nodes.push_back({types[0], nodes[w.left_node].next});
    nodes[w.left_node].next = nn;
    auto [left, right] = successor_sites(w.site, m);
    stack.push_back({right, nn});
    stack.push_back({left, w.left_node});  // leftmost site processed first
  }
  std::vector<std::int32_t> ids;
  for (std::int32_t n = nodes[0].next; n != 1; n = nodes[n].next)
    ids.push_back(nodes[n].monomer_id);
  return Polymer{sys, std::move(ids)};
}

}  // namespace insys
