#pragma once

#include <cstdint>
#include <vector>

#include "busytime/rational.hpp"

namespace busytime {

using Time = std::int64_t;
using JobId = std::int64_t;

struct JobSpec {
  JobId id = 0;
  Time release = 0;
  Time deadline = 0;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

struct MachineType {
  std::int64_t capacity = 1;
  Rational cost = 1;

  friend bool operator==(const MachineType&, const MachineType&) = default;
};

struct Instance {
  std::vector<MachineType> machine_types;
  std::vector<JobSpec> jobs;

  std::int64_t job_count() const { return static_cast<std::int64_t>(jobs.size()); }
  Time horizon() const;  // max deadline, 0 when there are no jobs
};

// Throws std::invalid_argument naming the offending field: duplicate job id,
// deadline < release, negative release, capacity < 1, cost < 1, empty machine list.
void validate_instance(const Instance& instance);

// Indices (into the input) of the surviving types: sorted by capacity strictly
// increasing, equal-capacity duplicates resolved to the cheaper, and any type
// at least as expensive as a larger one removed. Costs end strictly increasing.
std::vector<std::size_t> canonical_type_indices(const std::vector<MachineType>& types);

std::vector<MachineType> canonicalize_types(const std::vector<MachineType>& types);

Instance canonicalized(Instance instance);

bool is_canonical(const std::vector<MachineType>& types);

// True iff r_i < r_j implies d_i <= d_j for all job pairs. O(n log n).
bool is_agreeable(const Instance& instance);

}  // namespace busytime
