#ifndef INSYS_ANALYZER_HPP
#define INSYS_ANALYZER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "insys/kinetics.hpp"
#include "insys/model.hpp"

namespace insys {

/// Which complementarity holds at a valid site:
///   positive: complement(a)=d only; mixed: both; negative: complement(b)=c only.
enum class SiteClass { positive, mixed, negative };

/// Throws std::invalid_argument on an invalid site.
SiteClass classify_site(const InsertionSite& site);

std::string site_class_name(SiteClass c);

/// Maximal groups of same-signed monomer types insertable into exactly the
/// same sites. Signature (from the rule templates): positives group by
/// (first, fourth) symbols, negatives by (second, third).
struct InsertionSetPartition {
  std::vector<std::vector<std::int32_t>> sets;  // monomer ids, id order
  std::vector<std::int32_t> set_of;             // monomer id -> set index

  std::size_t non_singleton_count() const;
};

InsertionSetPartition insertion_sets(const InsertionSystem& sys);

/// Site classes and lineage structure of one trace. A lineage is a maximal
/// chain of insertions where each lands in a site created by the previous
/// one; the initiator site is position 0 of its lineage.
struct LineageStats {
  std::size_t length = 0;          // number of insertions on the chain
  int max_nonpositive_run = 0;     // longest run of mixed/negative sites
  bool repeated_sites = false;     // some site tuple occurs twice on the chain
};

struct SequenceReport {
  std::size_t positive_count = 0;
  std::size_t mixed_count = 0;
  std::size_t negative_count = 0;
  std::vector<LineageStats> lineages;
};

/// Requires a trace recorded with parent links (record_trace). Replays the
/// events through Polymer::insert; throws if an event was not insertable.
SequenceReport sequence_stats(const InsertionSystem& sys, const Trace& trace);

}  // namespace insys

#endif
