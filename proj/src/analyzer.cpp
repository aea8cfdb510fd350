#include "insys/analyzer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace insys {

SiteClass classify_site(const InsertionSite& site) {
  bool first = complement(site.a) == site.d;
  bool second = complement(site.b) == site.c;
  if (first && second) return SiteClass::mixed;
  if (first) return SiteClass::positive;
  if (second) return SiteClass::negative;
  throw std::invalid_argument("invalid site " + site_name(site));
}

std::string site_class_name(SiteClass c) {
  switch (c) {
    case SiteClass::positive: return "positive";
    case SiteClass::mixed: return "mixed";
    case SiteClass::negative: return "negative";
  }
  return "?";
}

std::size_t InsertionSetPartition::non_singleton_count() const {
  std::size_t n = 0;
  for (const auto& s : sets) n += s.size() > 1 ? 1 : 0;
  return n;
}

InsertionSetPartition insertion_sets(const InsertionSystem& sys) {
  InsertionSetPartition out;
  out.set_of.assign(sys.monomers().size(), -1);
  std::map<std::tuple<int, std::int32_t, std::int32_t>, std::int32_t> index;
  for (const MonomerType& m : sys.monomers()) {
    // Positive (p,q,r,s)+ inserts exactly at sites (a, p̅)(s̅, a̅);
    // negative (p,q,r,s)- exactly at sites (q̅, b)(b̅, r̅).
    std::tuple<int, std::int32_t, std::int32_t> key =
        m.sign == Sign::positive
            ? std::make_tuple(0, m.quad[0].code, m.quad[3].code)
            : std::make_tuple(1, m.quad[1].code, m.quad[2].code);
    auto it = index.find(key);
    std::int32_t set_id;
    if (it == index.end()) {
      set_id = static_cast<std::int32_t>(out.sets.size());
      index.emplace(key, set_id);
      out.sets.emplace_back();
    } else {
      set_id = it->second;
    }
    out.sets[set_id].push_back(m.id);
    out.set_of[m.id] = set_id;
  }
  return out;
}

SequenceReport sequence_stats(const InsertionSystem& sys, const Trace& trace) {
  SequenceReport report;

  // Replay to recover each event's target site.
  std::vector<InsertionSite> event_site(trace.events.size());
  Polymer p{sys};
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    event_site[i] = p.site_at(e.site_index);
    p = p.insert(e.site_index, e.monomer_id);
  }
  if (!trace.events.empty() && !(p == trace.final_polymer))
    throw std::invalid_argument("trace does not replay to its final polymer");

  std::vector<SiteClass> event_class(trace.events.size());
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    event_class[i] = classify_site(event_site[i]);
    switch (event_class[i]) {
      case SiteClass::positive: report.positive_count++; break;
      case SiteClass::mixed: report.mixed_count++; break;
      case SiteClass::negative: report.negative_count++; break;
    }
  }

  // Parent forest over events; lineages are root-to-leaf chains.
  std::vector<std::vector<std::int32_t>> children(trace.events.size());
  std::vector<std::int32_t> roots;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    std::int32_t parent = trace.events[i].parent_event;
    if (parent < 0)
      roots.push_back(static_cast<std::int32_t>(i));
    else
      children[parent].push_back(static_cast<std::int32_t>(i));
  }

  struct Frame {
    std::int32_t event;
    std::size_t next_child = 0;
  };
  std::vector<Frame> stack;
  std::vector<std::int32_t> path;
  auto emit_lineage = [&]() {
    LineageStats ls;
    ls.length = path.size();
    std::unordered_set<InsertionSite, SiteHash> seen;
    int run = 0;
    for (std::int32_t e : path) {
      if (!seen.insert(event_site[e]).second) ls.repeated_sites = true;
      if (event_class[e] == SiteClass::positive) {
        run = 0;
      } else {
        ++run;
        ls.max_nonpositive_run = std::max(ls.max_nonpositive_run, run);
      }
    }
    report.lineages.push_back(ls);
  };
  for (std::int32_t root : roots) {
    stack.clear();
    path.clear();
    stack.push_back({root});
    path.push_back(root);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_child < children[f.event].size()) {
        std::int32_t c = children[f.event][f.next_child++];
        stack.push_back({c});
        path.push_back(c);
      } else {
        if (children[f.event].empty()) emit_lineage();
        stack.pop_back();
        path.pop_back();
      }
    }
  }
  return report;
}

}  // namespace insys
