#ifndef INSYS_CONSTRUCTIONS_HPP
#define INSYS_CONSTRUCTIONS_HPP

#include <cstdint>
#include <utility>

#include "insys/model.hpp"
#include "insys/polymer.hpp"

namespace insys {

/// One of the four single-symbol site rewrites, each implemented by a pair of
/// monomer types whose by-product sites all carry the blocked symbol:
///   row 1: (s_a, s_b)(s_c, s_a*) -> (s_a, s_d)(s_c, s_a*)
///   row 2: (s_a, s_b)(s_c, s_a*) -> (s_a, s_b)(s_d, s_a*)
///   row 3: (s_b, s_a)(s_a*, s_c) -> (s_d, s_a)(s_a*, s_c)
///   row 4: (s_b, s_a)(s_a*, s_c) -> (s_b, s_a)(s_a*, s_d)
struct ReplacementSpec {
  int row = 1;        // 1..4
  Symbol a, b, c, d;  // the roles as written in the table rows
  Symbol u;           // helper symbol
  Symbol x;           // blocked symbol; x* must appear on no monomer
};

/// The two monomer types implementing the rewrite, in insertion order.
/// Concentrations are left at 1.0 for the caller to assign.
std::pair<MonomerType, MonomerType> compile_replacement(const ReplacementSpec& spec);

/// Three-variable counter (variables 0..r) that deterministically constructs
/// one polymer of length 2^Theta(r^3) from initiator (s_0,s_0)(s_0,s_0*).
/// Monomer count is 12r^2 + 24r + 3, all concentrations equal.
InsertionSystem gen_counter_system(int r);

/// Two-variable parity counter (r odd) constructing a finite polymer set with
/// growth-deterministic sites; longest polymer has length 2^Theta(r^2).
/// Concentrations are equal across insertion sets and split equally within
/// each set. Throws std::invalid_argument for even or non-positive r.
InsertionSystem gen_fast_system(int r);

/// Initiator (s1,s2)(s2*,s1*) with duplicator (s2*,s1*,s1,s2)+ and
/// terminator (s2*,x,x,s2)+ at concentration 0.5 each.
InsertionSystem gen_doubling_system();

/// Offset families f_i(k) = k + 2*i*r^2 keep the counter step symbols from
/// colliding across steps.
inline std::int32_t counter_offset(int i, int k, int r) {
  return static_cast<std::int32_t>(k + 2 * i * r * r);
}

/// Deterministic closure: repeatedly inserts the unique insertable type at
/// each live site (leftmost first) until none remain. Precondition (checked
/// via the site graph): every reachable site admits at most one type and the
/// site graph is acyclic. Throws std::invalid_argument with a witness site
/// otherwise.
Polymer fast_forward(const InsertionSystem& sys, std::size_t max_sites = 1000000);

}  // namespace insys

#endif
