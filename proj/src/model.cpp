#include "insys/model.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace insys {

std::string symbol_name(Symbol s) {
  std::string out = "s" + std::to_string(s.base());
  if (s.starred()) out += '*';
  return out;
}

Symbol parse_symbol(const std::string& text) {
  if (text.size() < 2 || text[0] != 's')
    throw std::invalid_argument("bad symbol '" + text + "'");
  bool starred = text.back() == '*';
  std::string digits = text.substr(1, text.size() - 1 - (starred ? 1 : 0));
  if (digits.empty()) throw std::invalid_argument("bad symbol '" + text + "'");
  for (char ch : digits)
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("bad symbol '" + text + "'");
  return Symbol{static_cast<std::int32_t>(std::stol(digits)), starred};
}

MonomerType make_monomer(Symbol a, Symbol b, Symbol c, Symbol d, Sign sign,
                         double concentration) {
  MonomerType m;
  m.quad = {a, b, c, d};
  m.sign = sign;
  m.concentration = concentration;
  return m;
}

std::string site_name(const InsertionSite& s) {
  return "(" + symbol_name(s.a) + "," + symbol_name(s.b) + ")(" +
         symbol_name(s.c) + "," + symbol_name(s.d) + ")";
}

std::size_t SiteHash::operator()(const InsertionSite& s) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (std::int32_t c : {s.a.code, s.b.code, s.c.code, s.d.code}) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

bool insertable(const InsertionSite& site, const MonomerType& m) {
  if (m.sign == Sign::positive) {
    return complement(site.a) == site.d && m.quad[0] == complement(site.b) &&
           m.quad[3] == complement(site.c);
  }
  return complement(site.b) == site.c && m.quad[1] == complement(site.a) &&
         m.quad[2] == complement(site.d);
}

std::pair<InsertionSite, InsertionSite> successor_sites(const InsertionSite& site,
                                                        const MonomerType& m) {
  InsertionSite left{site.a, site.b, m.quad[0], m.quad[1]};
  InsertionSite right{m.quad[2], m.quad[3], site.c, site.d};
  return {left, right};
}

InsertionSystem::InsertionSystem(std::int32_t symbol_count,
                                 std::vector<MonomerType> monomers,
                                 Initiator initiator)
    : symbol_count_(symbol_count),
      monomers_(std::move(monomers)),
      initiator_(initiator) {
  for (std::size_t i = 0; i < monomers_.size(); ++i)
    monomers_[i].id = static_cast<std::int32_t>(i);
  reindex();
}

std::uint64_t InsertionSystem::pair_key(Symbol x, Symbol y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x.code)) << 32) |
         static_cast<std::uint32_t>(y.code);
}

void InsertionSystem::reindex() {
  positive_index_.clear();
  negative_index_.clear();
  for (const MonomerType& m : monomers_) {
    Bucket& b = (m.sign == Sign::positive)
                    ? positive_index_[pair_key(m.quad[0], m.quad[3])]
                    : negative_index_[pair_key(m.quad[1], m.quad[2])];
    b.ids.push_back(m.id);
    b.total += m.concentration;
  }
}

const InsertionSystem::Bucket* InsertionSystem::positive_bucket(Symbol first,
                                                                Symbol fourth) const {
  auto it = positive_index_.find(pair_key(first, fourth));
  return it == positive_index_.end() ? nullptr : &it->second;
}

const InsertionSystem::Bucket* InsertionSystem::negative_bucket(Symbol second,
                                                                Symbol third) const {
  auto it = negative_index_.find(pair_key(second, third));
  return it == negative_index_.end() ? nullptr : &it->second;
}

std::vector<std::int32_t> InsertionSystem::insertable_types(
    const InsertionSite& site) const {
  std::vector<std::int32_t> out;
  if (complement(site.a) == site.d) {
    if (const Bucket* b = positive_bucket(complement(site.b), complement(site.c)))
      out.insert(out.end(), b->ids.begin(), b->ids.end());
  }
  if (complement(site.b) == site.c) {
    if (const Bucket* b = negative_bucket(complement(site.a), complement(site.d)))
      out.insert(out.end(), b->ids.begin(), b->ids.end());
  }
  return out;
}

double InsertionSystem::insertable_rate(const InsertionSite& site) const {
  double rate = 0.0;
  if (complement(site.a) == site.d) {
    if (const Bucket* b = positive_bucket(complement(site.b), complement(site.c)))
      rate += b->total;
  }
  if (complement(site.b) == site.c) {
    if (const Bucket* b = negative_bucket(complement(site.a), complement(site.d)))
      rate += b->total;
  }
  return rate;
}

bool InsertionSystem::any_insertable(const InsertionSite& site) const {
  if (complement(site.a) == site.d &&
      positive_bucket(complement(site.b), complement(site.c)))
    return true;
  if (complement(site.b) == site.c &&
      negative_bucket(complement(site.a), complement(site.d)))
    return true;
  return false;
}

ValidationReport InsertionSystem::validate() const {
  ValidationReport report;
  double sum = 0.0;
  for (const MonomerType& m : monomers_) {
    if (!(m.concentration > 0.0)) {
      report.issues.push_back(
          {"concentration-positive",
           "monomer " + std::to_string(m.id) + " has non-positive concentration"});
    }
    sum += m.concentration;
  }
  if (sum > 1.0 + kConcentrationTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", sum);
    report.issues.push_back(
        {"concentration-sum", std::string("concentration sum ") + buf + " exceeds 1"});
  }
  InsertionSite init{initiator_.qa, initiator_.qb, initiator_.rc, initiator_.rd};
  if (!init.valid()) {
    report.issues.push_back(
        {"initiator-complementarity",
         "initiator " + site_name(init) + " has neither complement(a)=d nor complement(b)=c"});
  }
  auto check_symbol = [&](Symbol s, const std::string& where) {
    if (s.base() < 0 || s.base() >= symbol_count_)
      report.issues.push_back(
          {"symbol-range", "symbol " + symbol_name(s) + " out of range in " + where});
  };
  for (Symbol s : {initiator_.qa, initiator_.qb, initiator_.rc, initiator_.rd})
    check_symbol(s, "initiator");
  for (const MonomerType& m : monomers_)
    for (Symbol s : m.quad) check_symbol(s, "monomer " + std::to_string(m.id));
  return report;
}

const void* system_identity(const InsertionSystem& sys) { return &sys; }

}  // namespace insys
