#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "busytime/analysis.hpp"
#include "busytime/engine.hpp"
#include "busytime/instance.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

struct RandomSpec {
  std::int64_t jobs = 10;
  std::int32_t types = 2;
  Time window_max = 6;    // deadline - release <= window_max
  Time horizon = 11;      // deadlines stay within [0, horizon]
  bool agreeable = false;
  bool pow2_costs = false;  // costs 2^k with doubling-plus capacities
  std::uint64_t seed = 0;
};

// Deterministic in the seed; emitted types are canonical.
Instance gen_random(const RandomSpec& spec);

enum class AppendixVariant { greedy, cost_efficient, lazy, ramp_up };

std::optional<AppendixVariant> appendix_variant_from_name(std::string_view name);

// Killer instances on the menu with capacities 10^l and costs 2^l for
// l in {0..K}. K must be even and >= 2. Throws std::invalid_argument when the
// construction would exceed 10^6 jobs.
Instance appendix_a_instance(AppendixVariant variant, int K);

// Closed-form cost the named baseline incurs on its killer instance.
Rational appendix_a_expected_alg_cost(AppendixVariant variant, int K);
// Closed-form upper bound on the offline optimum for that instance.
Rational appendix_a_opt_bound(AppendixVariant variant, int K);

struct TightExample {
  Instance instance;
  IntervalAssignment assignment;  // sigma = 2^{2q+3} - 2^q
  Schedule schedule;              // cost (2^q + 1) * 2^{q+1}
};

// The family showing the 1/4 constant of the interval lower bound is tight.
TightExample tight_example(int q);

// The small/large menu of the competitive-ratio-2 adversary:
// (capacity 1, cost 1) and (capacity M^3, cost M).
std::vector<MachineType> adversary_menu(std::int64_t M);

// Adaptive source: releases a group of M^3/2 jobs at time 1, deadlines on
// fresh even slots; after each observed large-machine dispatch, releases the
// next group at the following odd slot, up to M groups in total. Triggers
// beyond the M-th group are counted, not acted on.
class Theorem3Source final : public InstanceSource {
 public:
  // `is_large` classifies trace batch types (real menu: index 1; ladder runs:
  // rungs realized by the large machine).
  Theorem3Source(std::int64_t M, std::function<bool(std::int32_t)> is_large);

  std::optional<Time> peek_time(Time now, const DispatchTrace& trace) override;
  std::vector<JobSpec> take(Time at, const DispatchTrace& trace) override;

  std::int64_t groups_released() const { return static_cast<std::int64_t>(releases_.size()); }
  const std::vector<Time>& release_times() const { return releases_; }
  std::int64_t suppressed_triggers() const { return suppressed_; }
  const std::vector<JobSpec>& jobs_yielded() const { return yielded_; }

 private:
  void scan_trace(const DispatchTrace& trace);

  std::int64_t M_;
  std::int64_t group_size_;
  std::function<bool(std::int32_t)> is_large_;
  std::optional<Time> pending_ = 1;  // group 1 is unconditional
  std::vector<Time> releases_;
  std::vector<JobSpec> yielded_;
  Time next_even_ = 2;
  JobId next_id_ = 0;
  std::size_t scanned_ = 0;
  std::int64_t suppressed_ = 0;
};

// Exact upper bound on OPT for a finished adversary run: the minimum cost over
// three concrete schedules (one large batch per group; large-first and
// small-first alternations), each constructed from the trace and validated.
// Throws std::logic_error if any construction fails validation.
Rational adversary_opt_bounds(std::int64_t M, const Instance& realized,
                              const DispatchTrace& trace, const std::vector<Time>& release_times,
                              const std::function<bool(std::int32_t)>& is_large);

}  // namespace busytime
