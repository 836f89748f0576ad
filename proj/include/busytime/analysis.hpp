#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "busytime/engine.hpp"
#include "busytime/instance.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

// One certificate tuple (I, t_I, J_I): a closed integer interval, a type, and
// the charged job set. Intervals sharing only an endpoint slot count as
// overlapping.
struct IntervalTuple {
  Time left = 0;
  Time right = 0;
  std::int32_t type = 0;
  std::vector<JobId> jobs;
};

using IntervalAssignment = std::vector<IntervalTuple>;

// Conditions checked, against the capacities of the tagged type system:
//   size:     |J_I| = B_{t_I - 1} for t_I >= 1, |J_I| = 1 for t_I = 0
//   window:   [r_j, d_j] subseteq I for every j in J_I
//   disjoint: intervals of equal type share no slot
//   unique:   each job charged to at most one tuple
std::vector<Violation> check_valid_assignment(const Instance& instance,
                                              std::span<const std::int64_t> capacities,
                                              const IntervalAssignment& assignment);

// Sum over the interval multiset of 2^{t_I}.
Int sigma(const IntervalAssignment& assignment);

struct CreditBatchRow {
  std::size_t batch_index = 0;
  std::int32_t type = 0;
  Rational low_side;   // credits to jobs with t_I <= k
  Rational high_side;  // credits to jobs with t_I > k
};

struct CreditIntervalRow {
  std::size_t interval_index = 0;
  std::int32_t type = 0;
  Rational received;
};

struct CreditReport {
  std::vector<CreditBatchRow> batches;
  std::vector<CreditIntervalRow> intervals;
  Rational total_distributed;
  Rational schedule_cost;  // in normalized units: sum of 2^{t(X)}
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Replays the credit distribution of the sigma/4 lower-bound argument on a
// concrete schedule and assignment, both in a normalized type system (costs
// 2^k, per-job cost non-increasing). Each batch of type k awards every job j
// it carries 2^{t_I(j)}/|J_I(j)| credits when t_I(j) <= k and 2^{k+1}/B_k
// otherwise. Checks, exactly:
//   - the small-side bound per job when t_I(j) > k,
//   - per-batch totals <= 2^{k+1} on each side,
//   - per-interval received totals >= 2^{t_I},
//   - every interval served by some batch,
//   - total distributed <= 4x schedule cost.
CreditReport credit_audit(const Instance& instance, std::span<const std::int64_t> capacities,
                          const Schedule& schedule, const IntervalAssignment& assignment);

// For each dispatch time of the trace, builds the interval from the earliest
// release to the latest deadline over all jobs dispatched at that time, and
// returns the maximum number of such intervals sharing a slot. 0 for an empty
// trace.
int overlap_depth(const DispatchTrace& trace, const Instance& instance);

}  // namespace busytime
