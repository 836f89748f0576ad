#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "busytime/instance.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

// A batch slot without a job assignment.
struct Placement {
  Time time = 0;
  std::int32_t type = 0;  // real type index
};

struct EdfAssignment {
  // job index (into instance.jobs) -> placement index
  std::vector<std::int32_t> job_to_placement;
};

// Sweeps placements by time, assigning released unassigned jobs by
// (deadline, id) up to each placement's capacity. Returns the assignment when
// every job is covered; nullopt otherwise. Placements need not be sorted.
std::optional<EdfAssignment> edf_feasible(const Instance& instance,
                                          std::vector<Placement> placements);

// Independent feasibility oracle: bipartite max-flow between jobs and
// placement slots (edge iff r_j <= t <= d_j, slot capacity = type capacity).
bool matching_feasible(const Instance& instance, const std::vector<Placement>& placements);

struct OracleLimits {
  std::int64_t max_jobs = 16;
  std::int64_t max_distinct_deadlines = 12;
  std::int64_t max_types = 5;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Schedule schedule;
  Rational cost;
};

// Exact offline optimum at desk scale: branch and bound over deadline times
// processed ascending, memoized on (time index, multiset of deadlines of
// released unassigned jobs), with the optimal-cover table as an admissible
// lower bound. Throws OracleLimitExceeded rather than approximating.
OracleResult exact_opt(const Instance& instance, const OracleLimits& limits = {});

}  // namespace busytime
