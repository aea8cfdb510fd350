#include "insys/polymer.hpp"

#include <stdexcept>

namespace insys {

InsertionSite Polymer::site_at(std::size_t i) const {
  if (i + 1 >= length())
    throw std::out_of_range("site index " + std::to_string(i) +
                            " out of range for polymer of length " +
                            std::to_string(length()));
  Symbol a, b, c, d;
  if (i == 0) {
    a = sys_->initiator().qa;
    b = sys_->initiator().qb;
  } else {
    const MonomerType& left = sys_->monomer(ids_[i - 1]);
    a = left.quad[2];
    b = left.quad[3];
  }
  if (i + 1 == length() - 1) {
    c = sys_->initiator().rc;
    d = sys_->initiator().rd;
  } else {
    const MonomerType& right = sys_->monomer(ids_[i]);
    c = right.quad[0];
    d = right.quad[1];
  }
  return InsertionSite{a, b, c, d};
}

Polymer Polymer::insert(std::size_t i, const MonomerType& m) const {
  InsertionSite site = site_at(i);
  if (!insertable(site, m))
    throw std::invalid_argument("monomer " + std::to_string(m.id) +
                                " not insertable at site " + site_name(site));
  std::vector<std::int32_t> ids;
  ids.reserve(ids_.size() + 1);
  ids.insert(ids.end(), ids_.begin(), ids_.begin() + i);
  ids.push_back(m.id);
  ids.insert(ids.end(), ids_.begin() + i, ids_.end());
  return Polymer{*sys_, std::move(ids)};
}

Polymer Polymer::insert(std::size_t i, std::int32_t monomer_id) const {
  return insert(i, sys_->monomer(monomer_id));
}

std::vector<Symbol> Polymer::string_representation() const {
  std::vector<Symbol> out;
  out.reserve(4 * length() - 4);
  out.push_back(sys_->initiator().qa);
  out.push_back(sys_->initiator().qb);
  for (std::int32_t id : ids_)
    for (Symbol s : sys_->monomer(id).quad) out.push_back(s);
  out.push_back(sys_->initiator().rc);
  out.push_back(sys_->initiator().rd);
  return out;
}

std::string Polymer::string_name() const {
  std::string out;
  for (Symbol s : string_representation()) {
    if (!out.empty()) out += ' ';
    out += symbol_name(s);
  }
  return out;
}

}  // namespace insys
