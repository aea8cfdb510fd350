#include "insys/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace insys {

namespace {

/// Doubling segment tree of per-site rates: O(log n) update and
/// proportional selection, exact running total at the root.
class RateTree {
 public:
  RateTree() { clear(); }

  void clear() {
    cap_ = 1;
    size_ = 0;
    t_.assign(2, 0.0);
  }

  std::size_t add(double v) {
    if (size_ == cap_) grow();
    std::size_t slot = size_++;
    set(slot, v);
    return slot;
  }

  void set(std::size_t slot, double v) {
    std::size_t i = cap_ + slot;
    t_[i] = v;
    for (i >>= 1; i >= 1; i >>= 1) t_[i] = t_[2 * i] + t_[2 * i + 1];
  }

  double total() const { return t_[1]; }
  std::size_t size() const { return size_; }

  /// Slot whose cumulative rate interval contains target, plus the offset
  /// into that interval. target should be in [0, total()).
  std::pair<std::size_t, double> find(double target) const {
    std::size_t i = 1;
    while (i < cap_) {
      std::size_t left = 2 * i;
      if (target < t_[left]) {
        i = left;
      } else {
        target -= t_[left];
        i = left + 1;
      }
    }
    std::size_t slot = i - cap_;
    if (t_[i] <= 0.0) {
      // Rounding pushed the target into a dead slot; take the nearest live one.
      for (std::size_t k = slot + 1; k < size_; ++k)
        if (t_[cap_ + k] > 0.0) return {k, 0.0};
      for (std::size_t k = slot; k-- > 0;)
        if (t_[cap_ + k] > 0.0) return {k, 0.0};
    }
    return {slot, target};
  }

 private:
  void grow() {
    std::size_t new_cap = cap_ * 2;
    std::vector<double> nt(2 * new_cap, 0.0);
    for (std::size_t k = 0; k < size_; ++k) nt[new_cap + k] = t_[cap_ + k];
    for (std::size_t i = new_cap - 1; i >= 1; --i) nt[i] = nt[2 * i] + nt[2 * i + 1];
    t_ = std::move(nt);
    cap_ = new_cap;
  }

  std::size_t cap_ = 1;
  std::size_t size_ = 0;
  std::vector<double> t_;
};

struct RunResult {
  double final_time = 0.0;
  std::uint64_t events = 0;
  RunOutcome outcome = RunOutcome::went_terminal;
};

class Engine {
 public:
  explicit Engine(const InsertionSystem& sys) : sys_(sys) {}

  RunResult run(const SimConfig& cfg) {
    reset(cfg.record_trace);
    Xoshiro256pp rng(cfg.seed);
    const StopRule& stop = cfg.stop;
    double t = 0.0;
    std::uint64_t events = 0;

    auto finish = [&](RunOutcome oc) {
      RunResult r;
      r.final_time = t;
      r.events = events;
      r.outcome = oc;
      return r;
    };

    if (stop.kind == StopRule::Kind::target_length && 2 + events >= stop.target_length)
      return finish(RunOutcome::reached_target);

    while (true) {
      if (stop.kind == StopRule::Kind::max_events && events >= stop.max_events)
        return finish(RunOutcome::hit_max_events);
      if (events >= cfg.safety_max_events) return finish(RunOutcome::hit_max_events);

      double total = rates_.total();
      if (!(total > 0.0)) return finish(RunOutcome::went_terminal);

      double dt = rng.exponential(total);
      if (stop.kind == StopRule::Kind::max_time && t + dt > stop.max_time) {
        t = stop.max_time;
        return finish(RunOutcome::hit_max_time);
      }
      t += dt;

      auto [slot, offset] = rates_.find(rng.uniform() * total);
      std::int32_t chosen = pick_type(sites_[slot].site, offset);
      apply(slot, chosen, t, static_cast<std::int32_t>(events));
      ++events;

      if (stop.kind == StopRule::Kind::target_length &&
          2 + events >= stop.target_length)
        return finish(RunOutcome::reached_target);
    }
  }

  Polymer final_polymer() const {
    std::vector<std::int32_t> ids;
    for (std::int32_t n = nodes_[0].next; n != 1; n = nodes_[n].next)
      ids.push_back(nodes_[n].monomer_id);
    return Polymer{sys_, std::move(ids)};
  }

  std::vector<TraceEvent> take_events() { return std::move(trace_); }

 private:
  struct SiteRec {
    InsertionSite site;
    std::int32_t left_node = 0;
    std::int32_t parent_event = -1;
  };
  struct Node {
    std::int32_t monomer_id;
    std::int32_t next;
  };

  void reset(bool record_trace) {
    record_trace_ = record_trace;
    rates_.clear();
    sites_.clear();
    free_slots_.clear();
    trace_.clear();
    porder_.clear();
    nodes_.clear();
    nodes_.push_back({-1, 1});   // Q cap
    nodes_.push_back({-2, -1});  // R cap
    std::size_t slot = alloc_site(sys_.initiator_site(), 0, -1);
    if (record_trace_) porder_.push_back(slot);
  }

  std::size_t alloc_site(const InsertionSite& site, std::int32_t left_node,
                         std::int32_t parent_event) {
    double rate = sys_.insertable_rate(site);
    std::size_t slot;
    // Traced runs keep dead sites addressable so event positions line up with
    // polymer site indices; fast runs only track live sites.
    if (!record_trace_ && rate <= 0.0) return static_cast<std::size_t>(-1);
    if (!record_trace_ && !free_slots_.empty()) {
      slot = free_slots_.back();
      free_slots_.pop_back();
      rates_.set(slot, rate);
      sites_[slot] = {site, left_node, parent_event};
    } else {
      slot = rates_.add(rate);
      if (sites_.size() <= slot) sites_.resize(slot + 1);
      sites_[slot] = {site, left_node, parent_event};
    }
    return slot;
  }

  std::int32_t pick_type(const InsertionSite& site, double offset) const {
    std::int32_t chosen = -1;
    double acc = 0.0;
    sys_.for_each_insertable(site, [&](std::int32_t id, double conc) {
      if (chosen >= 0) return;
      acc += conc;
      if (offset < acc) chosen = id;
    });
    if (chosen < 0) {
      // Rounding spill past the last candidate.
      sys_.for_each_insertable(site, [&](std::int32_t id, double) { chosen = id; });
    }
    if (chosen < 0) throw std::logic_error("selection on a dead site");
    return chosen;
  }

  void apply(std::size_t slot, std::int32_t monomer_id, double time,
             std::int32_t event_index) {
    SiteRec rec = sites_[slot];
    const MonomerType& m = sys_.monomer(monomer_id);

    std::int32_t new_node = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({monomer_id, nodes_[rec.left_node].next});
    nodes_[rec.left_node].next = new_node;

    rates_.set(slot, 0.0);
    if (!record_trace_) free_slots_.push_back(slot);

    auto [left, right] = successor_sites(rec.site, m);
    std::size_t lslot = alloc_site(left, rec.left_node, event_index);
    std::size_t rslot = alloc_site(right, new_node, event_index);

    if (record_trace_) {
      auto pos_it = std::find(porder_.begin(), porder_.end(), slot);
      std::size_t pos = static_cast<std::size_t>(pos_it - porder_.begin());
      trace_.push_back({time, static_cast<std::int32_t>(pos), monomer_id,
                        rec.parent_event});
      porder_[pos] = lslot;
      porder_.insert(porder_.begin() + pos + 1, rslot);
    }
  }

  const InsertionSystem& sys_;
  RateTree rates_;
  std::vector<SiteRec> sites_;
  std::vector<std::size_t> free_slots_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> porder_;
  std::vector<TraceEvent> trace_;
  bool record_trace_ = false;
};

double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  double pos = q * static_cast<double>(v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, v.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

SimConfig to_terminal_config(std::uint64_t seed, std::uint64_t safety_max_events) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.stop = StopRule::after_events(safety_max_events);
  cfg.safety_max_events = safety_max_events;
  return cfg;
}

double total_rate(const InsertionSystem& sys, const Polymer& p) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.length(); ++i)
    total += sys.insertable_rate(p.site_at(i));
  return total;
}

StepSample step(const InsertionSystem& sys, const Polymer& p, Xoshiro256pp& rng) {
  double total = total_rate(sys, p);
  if (!(total > 0.0)) throw std::domain_error("step on a terminal polymer");
  double dt = rng.exponential(total);
  double target = rng.uniform() * total;

  double acc = 0.0;
  StepSample out{dt, 0, -1};
  for (std::size_t i = 0; i + 1 < p.length(); ++i) {
    sys.for_each_insertable(p.site_at(i), [&](std::int32_t id, double conc) {
      if (out.monomer_id >= 0) return;
      acc += conc;
      if (target < acc) {
        out.site_index = i;
        out.monomer_id = id;
      }
    });
    if (out.monomer_id >= 0) return out;
  }
  // Rounding spill: last insertable pair.
  for (std::size_t i = p.length() - 1; i-- > 0;) {
    std::vector<std::int32_t> ids = sys.insertable_types(p.site_at(i));
    if (!ids.empty()) {
      out.site_index = i;
      out.monomer_id = ids.back();
      return out;
    }
  }
  throw std::logic_error("unreachable: positive total rate but no insertable type");
}

Trace simulate(const InsertionSystem& sys, const SimConfig& cfg) {
  Engine engine(sys);
  RunResult rr = engine.run(cfg);
  Trace trace{std::vector<TraceEvent>{}, engine.final_polymer(), rr.final_time,
              rr.events, rr.outcome};
  if (cfg.record_trace) trace.events = engine.take_events();
  return trace;
}

TrialStats run_trials(const InsertionSystem& sys, const SimConfig& cfg,
                      std::size_t n_trials, int jobs) {
  if (n_trials < 1) throw std::invalid_argument("run_trials needs n_trials >= 1");

  struct PerTrial {
    double time;
    std::size_t length;
    bool reached;
  };
  std::vector<PerTrial> results(n_trials);

  auto worker = [&](std::size_t begin, std::size_t end) {
    Engine engine(sys);
    for (std::size_t i = begin; i < end; ++i) {
      SimConfig trial_cfg = cfg;
      trial_cfg.seed = trial_seed(cfg.seed, i);
      trial_cfg.record_trace = false;
      RunResult rr = engine.run(trial_cfg);
      results[i] = {rr.final_time, static_cast<std::size_t>(2 + rr.events),
                    rr.outcome == RunOutcome::reached_target};
    }
  };

  int n_jobs = std::max(1, jobs);
  if (n_jobs == 1 || n_trials < 2) {
    worker(0, n_trials);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (n_trials + n_jobs - 1) / n_jobs;
    for (int j = 0; j < n_jobs; ++j) {
      std::size_t b = std::min(n_trials, static_cast<std::size_t>(j) * chunk);
      std::size_t e = std::min(n_trials, b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }

  TrialStats stats;
  stats.n = n_trials;
  stats.times.reserve(n_trials);
  double sum = 0.0;
  for (const PerTrial& r : results) {
    stats.times.push_back(r.time);
    sum += r.time;
    stats.completion_lengths[r.length]++;
    if (r.reached) stats.reached_target++;
  }
  std::sort(stats.times.begin(), stats.times.end());
  stats.mean = sum / static_cast<double>(n_trials);
  if (n_trials >= 2) {
    double ss = 0.0;
    for (double t : stats.times) ss += (t - stats.mean) * (t - stats.mean);
    stats.variance = ss / static_cast<double>(n_trials - 1);
    stats.variance_defined = true;
  }
  stats.median = quantile_sorted(stats.times, 0.5);
  stats.q05 = quantile_sorted(stats.times, 0.05);
  stats.q25 = quantile_sorted(stats.times, 0.25);
  stats.q75 = quantile_sorted(stats.times, 0.75);
  stats.q95 = quantile_sorted(stats.times, 0.95);
  stats.min_time = stats.times.front();
  stats.max_time = stats.times.back();
  return stats;
}

}  // namespace insys
