#ifndef INSYS_KINETICS_HPP
#define INSYS_KINETICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "insys/polymer.hpp"
#include "insys/rng.hpp"

namespace insys {

struct StopRule {
  enum class Kind { target_length, max_events, max_time };
  Kind kind = Kind::max_events;
  std::size_t target_length = 0;
  std::uint64_t max_events = 0;
  double max_time = 0.0;

  static StopRule at_length(std::size_t n) {
    StopRule r;
    r.kind = Kind::target_length;
    r.target_length = n;
    return r;
  }
  static StopRule after_events(std::uint64_t n) {
    StopRule r;
    r.kind = Kind::max_events;
    r.max_events = n;
    return r;
  }
  static StopRule at_time(double t) {
    StopRule r;
    r.kind = Kind::max_time;
    r.max_time = t;
    return r;
  }
};

struct SimConfig {
  std::uint64_t seed = 0;
  StopRule stop;
  bool record_trace = false;
  std::uint64_t safety_max_events = 10000000;  // non-terminating systems
};

/// Configuration for a run that goes until no insertion is possible.
SimConfig to_terminal_config(std::uint64_t seed,
                             std::uint64_t safety_max_events = 10000000);

enum class RunOutcome { reached_target, went_terminal, hit_max_events, hit_max_time };

struct TraceEvent {
  double time;
  std::int32_t site_index;   // polymer site position at insertion time
  std::int32_t monomer_id;
  std::int32_t parent_event;  // event that created the site; -1 for the initiator site
};

struct Trace {
  std::vector<TraceEvent> events;  // populated when record_trace
  Polymer final_polymer;
  double final_time = 0.0;
  std::uint64_t event_count = 0;
  RunOutcome outcome = RunOutcome::went_terminal;
};

/// Sum over all sites of the concentrations of insertable types; 0 iff terminal.
double total_rate(const InsertionSystem& sys, const Polymer& p);

struct StepSample {
  double dt;
  std::size_t site_index;
  std::int32_t monomer_id;
};

/// One Gillespie direct-method step: dt ~ Exponential(total rate), then the
/// (site, type) pair picked with probability proportional to concentration.
/// Draw order: dt first, then the selection uniform. Throws
/// std::domain_error on a terminal polymer.
StepSample step(const InsertionSystem& sys, const Polymer& p, Xoshiro256pp& rng);

/// Repeated step() until the stop rule (or terminality, or the safety cap)
/// fires. Same seed, same config => identical trace.
Trace simulate(const InsertionSystem& sys, const SimConfig& cfg);

struct TrialStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;       // sample variance; meaningful iff variance_defined
  bool variance_defined = false;
  double median = 0.0;
  double q05 = 0.0, q25 = 0.0, q75 = 0.0, q95 = 0.0;
  double min_time = 0.0, max_time = 0.0;
  std::size_t reached_target = 0;
  std::map<std::size_t, std::size_t> completion_lengths;
  std::vector<double> times;  // per-trial completion times, sorted
};

/// Independent seeded runs; trial i uses trial_seed(cfg.seed, i). A trial's
/// completion time is the simulated time at which its stop rule fired
/// (reaching the target or going terminal first are both completions).
TrialStats run_trials(const InsertionSystem& sys, const SimConfig& cfg,
                      std::size_t n_trials, int jobs = 1);

}  // namespace insys

#endif
