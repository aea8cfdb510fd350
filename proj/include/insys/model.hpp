#ifndef INSYS_MODEL_HPP
#define INSYS_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "insys/symbol.hpp"

namespace insys {

enum class Sign : std::uint8_t { positive, negative };

/// An insertable unit: signed quadruple of symbols with a concentration.
struct MonomerType {
  std::array<Symbol, 4> quad{};
  Sign sign = Sign::positive;
  double concentration = 1.0;
  std::int32_t id = -1;

  friend bool operator==(const MonomerType& a, const MonomerType& b) {
    return a.quad == b.quad && a.sign == b.sign;
  }
};

MonomerType make_monomer(Symbol a, Symbol b, Symbol c, Symbol d, Sign sign,
                         double concentration = 1.0);

/// The two-part initiator: Q = (a,b) caps the left end, R = (c,d) the right.
struct Initiator {
  Symbol qa, qb;
  Symbol rc, rd;
};

/// The four symbols exposed between two adjacent monomer ends: (a,b)(c,d).
struct InsertionSite {
  Symbol a, b, c, d;

  /// complement(a) == d or complement(b) == c.
  bool valid() const { return complement(a) == d || complement(b) == c; }

  friend bool operator==(const InsertionSite& x, const InsertionSite& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

std::string site_name(const InsertionSite& s);

struct SiteHash {
  std::size_t operator()(const InsertionSite& s) const noexcept;
};

/// True iff m may be inserted into site per the two insertion rules:
///   1. complement(a) = d admits positive (complement(b), e, f, complement(c)).
///   2. complement(b) = c admits negative (e, complement(a), complement(d), f).
bool insertable(const InsertionSite& site, const MonomerType& m);

/// The two sites an insertion of m into site leaves behind:
/// (a,b)(m0,m1) and (m2,m3)(c,d).
std::pair<InsertionSite, InsertionSite> successor_sites(const InsertionSite& site,
                                                        const MonomerType& m);

struct ValidationIssue {
  std::string code;     // e.g. "concentration-sum", "initiator-complementarity"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// A complete system: symbol universe size, monomer types, initiator.
class InsertionSystem {
 public:
  InsertionSystem() = default;
  InsertionSystem(std::int32_t symbol_count, std::vector<MonomerType> monomers,
                  Initiator initiator);

  std::int32_t symbol_count() const { return symbol_count_; }
  const std::vector<MonomerType>& monomers() const { return monomers_; }
  const MonomerType& monomer(std::int32_t id) const { return monomers_.at(id); }
  const Initiator& initiator() const { return initiator_; }
  InsertionSite initiator_site() const {
    return {initiator_.qa, initiator_.qb, initiator_.rc, initiator_.rd};
  }

  /// Ids of every monomer type insertable into site, in id order.
  std::vector<std::int32_t> insertable_types(const InsertionSite& site) const;

  /// Sum of concentrations of all types insertable into site.
  double insertable_rate(const InsertionSite& site) const;

  bool any_insertable(const InsertionSite& site) const;

  ValidationReport validate() const;

  /// Visits (id, concentration) of every type insertable into site, positive
  /// bucket first, id order within each bucket. Allocation-free.
  template <typename Fn>
  void for_each_insertable(const InsertionSite& site, Fn&& fn) const {
    if (complement(site.a) == site.d) {
      if (const Bucket* b = positive_bucket(complement(site.b), complement(site.c)))
        for (std::int32_t id : b->ids) fn(id, monomers_[id].concentration);
    }
    if (complement(site.b) == site.c) {
      if (const Bucket* b = negative_bucket(complement(site.a), complement(site.d)))
        for (std::int32_t id : b->ids) fn(id, monomers_[id].concentration);
    }
  }

  /// Tolerance on the sum-of-concentrations <= 1 check.
  static constexpr double kConcentrationTolerance = 1e-9;

 private:
  struct Bucket {
    std::vector<std::int32_t> ids;
    double total = 0.0;
  };
  static std::uint64_t pair_key(Symbol x, Symbol y);
  const Bucket* positive_bucket(Symbol first, Symbol fourth) const;
  const Bucket* negative_bucket(Symbol second, Symbol third) const;
  void reindex();

  std::int32_t symbol_count_ = 0;
  std::vector<MonomerType> monomers_;
  Initiator initiator_{};
  // Positive types keyed by (quad[0], quad[3]); negative by (quad[1], quad[2]).
  // These are exactly the §5 insertion-set signatures, so a site's candidates
  // are two O(1) lookups.
  std::unordered_map<std::uint64_t, Bucket> positive_index_;
  std::unordered_map<std::uint64_t, Bucket> negative_index_;

  friend class SimulationEngine;
  friend const void* system_identity(const InsertionSystem&);
};

}  // namespace insys

#endif
