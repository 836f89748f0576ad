#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "busytime/instance.hpp"
#include "busytime/ladder.hpp"

namespace busytime {

enum class TypeSystem { real, virtual_ladder };

struct Batch {
  std::int32_t type = 0;  // index into the tagged type system
  Time time = 0;          // execution slot
  std::vector<JobId> jobs;
};

struct Schedule {
  TypeSystem system = TypeSystem::real;
  std::vector<Batch> batches;
};

struct Violation {
  static constexpr std::size_t kScheduleLevel = static_cast<std::size_t>(-1);
  std::size_t batch_index = kScheduleLevel;
  std::string rule;  // unknown_type | unknown_job | capacity | window | duplicate_job | missing_job
  std::string detail;
};

// Empty result means the schedule is valid. `complete` additionally requires
// the batches to cover every job of the instance.
std::vector<Violation> validate_schedule(const Instance& instance, const Schedule& schedule,
                                         bool complete = true);

Rational schedule_cost(const Instance& instance, const Schedule& schedule);
Rational schedule_cost(const NormalizedLadder& ladder, const Schedule& schedule);

// Splits a virtual rung-k batch over the rung's real machines, preserving the
// execution slot. Only non-empty real batches are emitted. Throws if more jobs
// than beta_k are given.
std::vector<Batch> realize_batch(const NormalizedLadder& ladder, std::size_t rung,
                                 std::span<const JobId> job_ids, Time exec_time);

// Realizes every batch of a virtual schedule into the real type system.
Schedule realize_schedule(const NormalizedLadder& ladder, const Schedule& virtual_schedule);

}  // namespace busytime
