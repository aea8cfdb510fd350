#ifndef INSYS_SYMBOL_HPP
#define INSYS_SYMBOL_HPP

#include <cstdint>
#include <functional>
#include <string>

namespace insys {

/// A bonding symbol: a base index plus a star (complement) flag.
/// Packed as (base << 1) | starred so complementing is a single bit flip.
struct Symbol {
  std::int32_t code = 0;

  constexpr Symbol() = default;
  constexpr Symbol(std::int32_t base, bool starred)
      : code((base << 1) | (starred ? 1 : 0)) {}

  constexpr std::int32_t base() const { return code >> 1; }
  constexpr bool starred() const { return (code & 1) != 0; }

  friend constexpr bool operator==(Symbol a, Symbol b) { return a.code == b.code; }
  friend constexpr bool operator!=(Symbol a, Symbol b) { return a.code != b.code; }
  friend constexpr bool operator<(Symbol a, Symbol b) { return a.code < b.code; }
};

/// s -> s*, s* -> s. Involution; never the identity.
constexpr Symbol complement(Symbol s) { return Symbol{s.base(), !s.starred()}; }

/// "s3" or "s3*".
std::string symbol_name(Symbol s);

/// Parses "s<k>" / "s<k>*". Throws std::invalid_argument on malformed input.
Symbol parse_symbol(const std::string& text);

}  // namespace insys

template <>
struct std::hash<insys::Symbol> {
  std::size_t operator()(insys::Symbol s) const noexcept {
    return std::hash<std::int32_t>{}(s.code);
  }
};

#endif
