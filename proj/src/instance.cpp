#include "busytime/instance.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace busytime {

namespace {
constexpr std::int64_t kMaxCapacity = 1'000'000'000'000'000;  // keeps doubling in int64
}

Time Instance::horizon() const {
  Time t = 0;
  for (const auto& job : jobs) t = std::max(t, job.deadline);
  return t;
}

void validate_instance(const Instance& instance) {
  if (instance.machine_types.empty()) {
    throw std::invalid_argument("machine_types: empty machine list");
  }
  for (std::size_t i = 0; i < instance.machine_types.size(); ++i) {
    const auto& type = instance.machine_types[i];
    const std::string where = "machine_types[" + std::to_string(i) + "]";
    if (type.capacity < 1) throw std::invalid_argument(where + ".capacity: must be >= 1");
    if (type.capacity > kMaxCapacity) {
      throw std::invalid_argument(where + ".capacity: exceeds 10^15");
    }
    if (type.cost < 1) throw std::invalid_argument(where + ".cost: must be >= 1");
  }
  std::unordered_set<JobId> seen;
  seen.reserve(instance.jobs.size() * 2);
  for (const auto& job : instance.jobs) {
    const std::string where = "job " + std::to_string(job.id);
    if (job.id < 0) throw std::invalid_argument(where + ": negative id");
    if (!seen.insert(job.id).second) {
      throw std::invalid_argument("duplicate job id " + std::to_string(job.id));
    }
    if (job.release < 0) throw std::invalid_argument(where + ": negative release");
    if (job.deadline < job.release) {
      throw std::invalid_argument(where + ": deadline " + std::to_string(job.deadline) +
                                  " < release " + std::to_string(job.release));
    }
  }
}

std::vector<std::size_t> canonical_type_indices(const std::vector<MachineType>& types) {
  std::vector<std::size_t> order(types.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (types[a].capacity != types[b].capacity) return types[a].capacity < types[b].capacity;
    return types[a].cost < types[b].cost;
  });
  // Equal capacities resolve to the cheaper already-first entry.
  std::vector<std::size_t> dedup;
  for (std::size_t idx : order) {
    if (!dedup.empty() && types[dedup.back()].capacity == types[idx].capacity) continue;
    dedup.push_back(idx);
  }
  // Drop any type at least as expensive as a larger-capacity one.
  std::vector<std::size_t> keep;
  for (auto it = dedup.rbegin(); it != dedup.rend(); ++it) {
    if (keep.empty() || types[*it].cost < types[keep.back()].cost) keep.push_back(*it);
  }
  std::reverse(keep.begin(), keep.end());
  return keep;
}

std::vector<MachineType> canonicalize_types(const std::vector<MachineType>& types) {
  std::vector<MachineType> out;
  for (std::size_t idx : canonical_type_indices(types)) out.push_back(types[idx]);
  return out;
}

Instance canonicalized(Instance instance) {
  instance.machine_types = canonicalize_types(instance.machine_types);
  return instance;
}

bool is_canonical(const std::vector<MachineType>& types) {
  for (std::size_t i = 1; i < types.size(); ++i) {
    if (types[i].capacity <= types[i - 1].capacity) return false;
    if (types[i].cost <= types[i - 1].cost) return false;
  }
  return !types.empty();
}

bool is_agreeable(const Instance& instance) {
  std::vector<const JobSpec*> sorted;
  sorted.reserve(instance.jobs.size());
  for (const auto& job : instance.jobs) sorted.push_back(&job);
  std::sort(sorted.begin(), sorted.end(), [](const JobSpec* a, const JobSpec* b) {
    if (a->release != b->release) return a->release < b->release;
    return a->deadline < b->deadline;
  });
  // Every deadline in an earlier release group must be <= every deadline in a
  // later group; equal releases are unconstrained.
  Time max_before = std::numeric_limits<Time>::min();
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    Time group_max = std::numeric_limits<Time>::min();
    while (j < sorted.size() && sorted[j]->release == sorted[i]->release) {
      group_max = std::max(group_max, sorted[j]->deadline);
      ++j;
    }
    if (max_before > sorted[i]->deadline) return false;  // sorted[i] has the group min
    max_before = std::max(max_before, group_max);
    i = j;
  }
  return true;
}

}  // namespace busytime
