#ifndef INSYS_POLYMER_HPP
#define INSYS_POLYMER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "insys/model.hpp"

namespace insys {

/// An assembly state: the initiator end-caps plus an ordered run of inserted
/// monomers. Immutable; insert() returns a new polymer.
class Polymer {
 public:
  explicit Polymer(const InsertionSystem& sys) : sys_(&sys) {}
  Polymer(const InsertionSystem& sys, std::vector<std::int32_t> ids)
      : sys_(&sys), ids_(std::move(ids)) {}

  const InsertionSystem& system() const { return *sys_; }
  const std::vector<std::int32_t>& monomer_ids() const { return ids_; }

  /// Number of monomers including both end-caps.
  std::size_t length() const { return ids_.size() + 2; }
  std::size_t site_count() const { return length() - 1; }

  /// The (a,b)(c,d) interface between ends i and i+1. 0 <= i < length()-1.
  InsertionSite site_at(std::size_t i) const;

  /// Splices m between ends i and i+1. Throws std::invalid_argument if m is
  /// not insertable at that site.
  Polymer insert(std::size_t i, const MonomerType& m) const;
  Polymer insert(std::size_t i, std::int32_t monomer_id) const;

  /// All symbols left to right: 2 per end-cap, 4 per monomer.
  std::vector<Symbol> string_representation() const;
  std::string string_name() const;  // space-joined symbol names

  friend bool operator==(const Polymer& x, const Polymer& y) {
    return x.ids_ == y.ids_;
  }

 private:
  const InsertionSystem* sys_;
  std::vector<std::int32_t> ids_;
};

}  // namespace insys

#endif
