#include <doctest.h>

#include <map>
#include <set>

#include "insys/analyzer.hpp"
#include "insys/constructions.hpp"
#include "insys/rng.hpp"
#include "oracles.hpp"

using namespace insys;

namespace {

Symbol S(int base) { return Symbol{base, false}; }
Symbol Ss(int base) { return Symbol{base, true}; }

}  // namespace

TEST_CASE("classify_site covers the three forms") {
  // (a,b)(c*,a*) with b != c: positive.
  CHECK(classify_site({S(0), S(1), Ss(2), Ss(0)}) == SiteClass::positive);
  // (a,b)(b*,a*): mixed.
  CHECK(classify_site({S(0), S(1), Ss(1), Ss(0)}) == SiteClass::mixed);
  // (b,a)(a*,c*) with b != c: negative.
  CHECK(classify_site({S(1), S(0), Ss(0), Ss(2)}) == SiteClass::negative);
  CHECK_THROWS_AS(classify_site({S(0), S(1), S(2), S(3)}),
                  std::invalid_argument);
}

TEST_CASE("every valid site gets exactly one class") {
  auto universe = test::symbol_universe(3);
  for (const InsertionSite& site : test::all_valid_sites(universe)) {
    SiteClass c = classify_site(site);
    bool first = complement(site.a) == site.d;
    bool second = complement(site.b) == site.c;
    switch (c) {
      case SiteClass::positive: CHECK((first && !second)); break;
      case SiteClass::mixed: CHECK((first && second)); break;
      case SiteClass::negative: CHECK((!first && second)); break;
    }
  }
}

TEST_CASE("insertion sets group same-signed types with equal signatures") {
  // Two positives sharing first and fourth symbols share a set.
  std::vector<MonomerType> ms = {
      make_monomer(S(0), S(1), S(2), S(3), Sign::positive, 0.2),
      make_monomer(S(0), S(4), S(5), S(3), Sign::positive, 0.2),
      make_monomer(S(0), S(1), S(2), S(3), Sign::negative, 0.2),
  };
  InsertionSystem sys(6, ms, Initiator{S(0), S(1), Ss(1), Ss(0)});
  InsertionSetPartition part = insertion_sets(sys);
  CHECK(part.sets.size() == 2);
  CHECK(part.set_of[0] == part.set_of[1]);
  CHECK(part.set_of[2] != part.set_of[0]);
  CHECK(part.non_singleton_count() == 1);
}

TEST_CASE("signature grouping equals extensional accepting-site sets") {
  // Random small systems over 3 bases: two same-signed types share a set iff
  // the set of sites (over the bounded universe) accepting them coincides.
  auto universe = test::symbol_universe(3);
  auto sites = test::all_valid_sites(universe);
  Xoshiro256pp rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<MonomerType> ms;
    for (int k = 0; k < 6; ++k) {
      auto pick = [&]() {
        return Symbol{static_cast<std::int32_t>(rng.next() % 3),
                      (rng.next() & 1) != 0};
      };
      MonomerType m = make_monomer(pick(), pick(), pick(), pick(),
                                   rng.next() & 1 ? Sign::positive
                                                  : Sign::negative,
                                   0.1);
      if (std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(m);
    }
    InsertionSystem sys(3, ms, Initiator{S(0), S(1), Ss(1), Ss(0)});
    InsertionSetPartition part = insertion_sets(sys);

    auto accepting = [&](const MonomerType& m) {
      std::set<std::size_t> acc;
      for (std::size_t i = 0; i < sites.size(); ++i)
        if (insertable(sites[i], m)) acc.insert(i);
      return acc;
    };
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        const MonomerType& mi = sys.monomers()[i];
        const MonomerType& mj = sys.monomers()[j];
        bool same_set = part.set_of[i] == part.set_of[j];
        bool same_sites =
            mi.sign == mj.sign && accepting(mi) == accepting(mj);
        CHECK(same_set == same_sites);
      }
    }
  }
}

TEST_CASE("Theorem 4.2 system has exclusively singleton insertion sets") {
  InsertionSystem sys = gen_counter_system(1);
  InsertionSetPartition part = insertion_sets(sys);
  CHECK(part.sets.size() == sys.monomers().size());
  CHECK(part.non_singleton_count() == 0);
}

TEST_CASE("Theorem 4.4 system has competition sets of size r+1") {
  const int r = 3;
  InsertionSystem sys = gen_fast_system(r);
  InsertionSetPartition part = insertion_sets(sys);
  CHECK(part.sets.size() <= static_cast<std::size_t>(20 * r));
  CHECK(part.non_singleton_count() >= 1);
  std::size_t largest = 0;
  for (const auto& set : part.sets) largest = std::max(largest, set.size());
  CHECK(largest == static_cast<std::size_t>(r + 1));
  // Concentrations: equal per set, split within.
  double per_set = 1.0 / static_cast<double>(part.sets.size());
  for (const auto& set : part.sets) {
    double total = 0;
    for (std::int32_t id : set) total += sys.monomer(id).concentration;
    CHECK(total == doctest::Approx(per_set));
  }
}

TEST_CASE("sequence_stats classifies events and reconstructs lineages") {
  InsertionSystem dbl = gen_doubling_system();
  SimConfig cfg;
  cfg.seed = 41;
  cfg.stop = StopRule::at_length(32);
  cfg.record_trace = true;
  Trace t = simulate(dbl, cfg);
  REQUIRE(t.events.size() >= 3);
  SequenceReport rep = sequence_stats(dbl, t);
  CHECK(rep.positive_count + rep.mixed_count + rep.negative_count ==
        t.events.size());
  // Doubling events always land in the mixed self-reproducing site.
  CHECK(rep.mixed_count == t.events.size());
  REQUIRE_FALSE(rep.lineages.empty());
  // Any lineage with two or more insertions repeats (s1,s2)(s2*,s1*).
  for (const LineageStats& ls : rep.lineages)
    if (ls.length >= 2) CHECK(ls.repeated_sites);
}

TEST_CASE("sequence_stats on an empty trace") {
  InsertionSystem dbl = gen_doubling_system();
  Trace t{{}, Polymer{dbl}, 0.0, 0, RunOutcome::went_terminal};
  SequenceReport rep = sequence_stats(dbl, t);
  CHECK(rep.positive_count == 0);
  CHECK(rep.mixed_count == 0);
  CHECK(rep.negative_count == 0);
  CHECK(rep.lineages.empty());
}

TEST_CASE("sequence_stats rejects traces from another system") {
  InsertionSystem dbl = gen_doubling_system();
  SimConfig cfg;
  cfg.seed = 5;
  cfg.stop = StopRule::at_length(16);
  cfg.record_trace = true;
  Trace t = simulate(dbl, cfg);
  REQUIRE(t.events.size() >= 2);
  InsertionSystem counter = gen_counter_system(1);
  CHECK_THROWS(sequence_stats(counter, t));
}

TEST_CASE("Lemma 5.1: repeat-free lineages have short non-positive runs") {
  // 100 seeded traces of the r=1 counter and the r=3 fast system.
  for (int which : {0, 1}) {
    InsertionSystem sys = which == 0 ? gen_counter_system(1) : gen_fast_system(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SimConfig cfg = to_terminal_config(trial_seed(1000 + which, seed));
      cfg.record_trace = true;
      Trace t = simulate(sys, cfg);
      SequenceReport rep = sequence_stats(sys, t);
      for (const LineageStats& ls : rep.lineages)
        if (!ls.repeated_sites) CHECK(ls.max_nonpositive_run <= 3);
    }
  }
}
