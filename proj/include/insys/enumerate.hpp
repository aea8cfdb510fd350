#ifndef INSYS_ENUMERATE_HPP
#define INSYS_ENUMERATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "insys/polymer.hpp"

namespace insys {

bool is_terminal(const InsertionSystem& sys, const Polymer& p);

struct EnumerationLimits {
  std::size_t max_length = 10000;
  std::size_t max_count = 1000000;
};

/// Breadth-first closure of insert over all sites and types, deduplicated by
/// monomer-id sequence. truncated is set iff some expansion was skipped
/// because a bound was hit.
struct ReachableSet {
  std::vector<Polymer> polymers;
  std::vector<bool> terminal;  // parallel to polymers
  bool truncated = false;
  EnumerationLimits limits;

  std::size_t terminal_count() const;
  std::vector<std::size_t> terminal_indices() const;
};

ReachableSet enumerate_polymers(const InsertionSystem& sys,
                                const EnumerationLimits& limits = {});

/// String representations of all terminal polymers with length <= max_length.
std::vector<std::vector<Symbol>> language(const InsertionSystem& sys,
                                          std::size_t max_length,
                                          const EnumerationLimits& limits = {});

/// Fixed-point closure over canonicalized sites. Node 0 is the initiator
/// site; each edge records the two successor sites of one insertion.
struct SiteGraph {
  struct Edge {
    std::int32_t from;
    std::int32_t type;  // monomer id
    std::int32_t left, right;
  };
  std::vector<InsertionSite> nodes;
  std::vector<Edge> edges;
  std::vector<std::vector<std::int32_t>> out_edges;  // node -> edge indices
  bool truncated = false;

  std::int32_t index_of(const InsertionSite& s) const;

 private:
  friend SiteGraph build_site_graph(const InsertionSystem&, std::size_t);
  std::unordered_map<InsertionSite, std::int32_t, SiteHash> index_;
};

SiteGraph build_site_graph(const InsertionSystem& sys,
                           std::size_t max_sites = 1000000);

/// Structural facts derived from the site graph. A system whose every
/// reachable site admits at most one monomer type and whose live-site graph is
/// acyclic deterministically constructs a unique terminal polymer; the DP
/// gives its insertion count without building it.
struct SiteStructure {
  bool single_type_everywhere = true;
  std::optional<InsertionSite> multi_type_site;
  bool acyclic = true;  // no live site reachable from itself
  bool truncated = false;
  /// Max insertions from the initiator site when acyclic (saturating).
  std::uint64_t max_insertions = 0;
  /// Insertions of the unique maximal polymer when single-typed and acyclic.
  std::optional<std::uint64_t> deterministic_insertions;
};

SiteStructure analyze_site_structure(const InsertionSystem& sys,
                                     std::size_t max_sites = 1000000);

enum class Verdict { deterministic, not_deterministic, inconclusive };

struct DeterminismResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<Polymer> terminal;  // P for deterministic; candidate otherwise
  std::optional<Polymer> witness;   // second terminal or non-terminal not shorter than P
  std::string reason;
};

/// Polymer-level check via enumerate: deterministic iff the complete closure
/// has exactly one terminal P and everything else is non-terminal and shorter.
/// Witnesses (two terminals; or a terminal plus any other polymer at least as
/// long) are sound even when the enumeration is truncated.
DeterminismResult check_deterministic(const InsertionSystem& sys,
                                      const EnumerationLimits& limits = {});

struct GrowthDeterminismResult {
  bool growth_deterministic = true;  // every multi-type site has <= 1 growing type
  std::vector<InsertionSite> violations;
  bool acyclic = true;
  bool truncated = false;
  std::uint64_t max_insertions = 0;  // longest-polymer bound when acyclic
};

/// Site-graph check of the Theorem 4.4 property: at every site accepting two
/// or more types, at most one type's successor sites admit further insertion.
GrowthDeterminismResult check_growth_deterministic(const InsertionSystem& sys,
                                                   std::size_t max_sites = 1000000);

}  // namespace insys

#endif
