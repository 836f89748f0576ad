#include "busytime/schedule.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace busytime {

namespace {

struct ResolvedTypes {
  std::vector<std::int64_t> capacities;
  std::vector<Rational> costs;
};

ResolvedTypes resolve_types(const Instance& instance, const Schedule& schedule) {
  ResolvedTypes out;
  if (schedule.system == TypeSystem::real) {
    for (const auto& type : instance.machine_types) {
      out.capacities.push_back(type.capacity);
      out.costs.push_back(type.cost);
    }
    return out;
  }
  NormalizedLadder ladder = normalize_types(instance);
  std::int32_t max_type = -1;
  for (const auto& batch : schedule.batches) max_type = std::max(max_type, batch.type);
  if (max_type >= 0) ladder.ensure_rung(static_cast<std::size_t>(max_type));
  for (std::size_t k = 0; k < ladder.rung_count(); ++k) {
    out.capacities.push_back(ladder.rung(k).capacity);
    out.costs.push_back(ladder.rung_cost(k));
  }
  return out;
}

}  // namespace

std::vector<Violation> validate_schedule(const Instance& instance, const Schedule& schedule,
                                         bool complete) {
  std::vector<Violation> violations;
  const ResolvedTypes types = resolve_types(instance, schedule);

  std::unordered_map<JobId, const JobSpec*> by_id;
  by_id.reserve(instance.jobs.size() * 2);
  for (const auto& job : instance.jobs) by_id.emplace(job.id, &job);

  std::unordered_set<JobId> covered;
  covered.reserve(instance.jobs.size() * 2);

  for (std::size_t i = 0; i < schedule.batches.size(); ++i) {
    const Batch& batch = schedule.batches[i];
    if (batch.type < 0 || static_cast<std::size_t>(batch.type) >= types.capacities.size()) {
      violations.push_back({i, "unknown_type", "type " + std::to_string(batch.type)});
      continue;
    }
    const std::int64_t capacity = types.capacities[batch.type];
    if (static_cast<std::int64_t>(batch.jobs.size()) > capacity) {
      violations.push_back({i, "capacity",
                            std::to_string(batch.jobs.size()) + " jobs on capacity " +
                                std::to_string(capacity)});
    }
    for (JobId id : batch.jobs) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        violations.push_back({i, "unknown_job", "job " + std::to_string(id)});
        continue;
      }
      const JobSpec& job = *it->second;
      if (batch.time < job.release || batch.time > job.deadline) {
        violations.push_back({i, "window",
                              "job " + std::to_string(id) + " window [" +
                                  std::to_string(job.release) + "," + std::to_string(job.deadline) +
                                  "] excludes time " + std::to_string(batch.time)});
      }
      if (!covered.insert(id).second) {
        violations.push_back({i, "duplicate_job", "job " + std::to_string(id)});
      }
    }
  }
  if (complete) {
    for (const auto& job : instance.jobs) {
      if (!covered.contains(job.id)) {
        violations.push_back(
            {Violation::kScheduleLevel, "missing_job", "job " + std::to_string(job.id)});
      }
    }
  }
  return violations;
}

Rational schedule_cost(const Instance& instance, const Schedule& schedule) {
  const ResolvedTypes types = resolve_types(instance, schedule);
  Rational total = 0;
  for (const auto& batch : schedule.batches) {
    if (batch.type < 0 || static_cast<std::size_t>(batch.type) >= types.costs.size()) {
      throw std::invalid_argument("schedule references unknown type " +
                                  std::to_string(batch.type));
    }
    total += types.costs[batch.type];
  }
  return total;
}

Rational schedule_cost(const NormalizedLadder& ladder, const Schedule& schedule) {
  if (schedule.system != TypeSystem::virtual_ladder) {
    throw std::invalid_argument("ladder cost requires a virtual schedule");
  }
  Rational total = 0;
  for (const auto& batch : schedule.batches) {
    total += ladder.rung_cost(static_cast<std::size_t>(batch.type));
  }
  return total;
}

std::vector<Batch> realize_batch(const NormalizedLadder& ladder, std::size_t rung,
                                 std::span<const JobId> job_ids, Time exec_time) {
  const LadderRung& r = ladder.rung(rung);
  if (static_cast<std::int64_t>(job_ids.size()) > r.capacity) {
    throw std::invalid_argument("realize_batch: " + std::to_string(job_ids.size()) +
                                " jobs exceed rung capacity " + std::to_string(r.capacity));
  }
  const std::int64_t real_capacity = ladder.real_types()[r.real_type].capacity;
  std::vector<Batch> out;
  std::size_t next = 0;
  while (next < job_ids.size()) {
    const std::size_t take =
        std::min<std::size_t>(job_ids.size() - next, static_cast<std::size_t>(real_capacity));
    Batch real;
    real.type = static_cast<std::int32_t>(r.real_type);
    real.time = exec_time;
    real.jobs.assign(job_ids.begin() + next, job_ids.begin() + next + take);
    out.push_back(std::move(real));
    next += take;
  }
  return out;
}

Schedule realize_schedule(const NormalizedLadder& ladder, const Schedule& virtual_schedule) {
  if (virtual_schedule.system != TypeSystem::virtual_ladder) {
    throw std::invalid_argument("realize_schedule expects a virtual schedule");
  }
  Schedule real;
  real.system = TypeSystem::real;
  for (const auto& batch : virtual_schedule.batches) {
    auto split = realize_batch(ladder, static_cast<std::size_t>(batch.type), batch.jobs, batch.time);
    for (auto& piece : split) real.batches.push_back(std::move(piece));
  }
  return real;
}

}  // namespace busytime
