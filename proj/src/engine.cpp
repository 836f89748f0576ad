#include "busytime/engine.hpp"

#include <algorithm>
#include <limits>

namespace busytime {

const JobSpec& WaitingSet::earliest() const {
  const auto& [deadline, id] = *order_.begin();
  return jobs_.at(id);
}

std::size_t WaitingSet::due_count(Time t) const {
  std::size_t count = 0;
  auto it = order_.lower_bound({t, std::numeric_limits<JobId>::min()});
  while (it != order_.end() && it->first == t) {
    ++count;
    ++it;
  }
  return count;
}

const JobSpec& WaitingSet::job(JobId id) const { return jobs_.at(id); }

void WaitingSet::insert(const JobSpec& job) {
  order_.emplace(job.deadline, job.id);
  jobs_.emplace(job.id, job);
}

std::vector<JobId> WaitingSet::take_earliest(std::int64_t capacity) {
  std::vector<JobId> taken;
  while (capacity > 0 && !order_.empty()) {
    const auto it = order_.begin();
    taken.push_back(it->second);
    jobs_.erase(it->second);
    order_.erase(it);
    --capacity;
  }
  return taken;
}

std::vector<JobId> edf_fill(WaitingSet& waiting, std::int64_t capacity, Time exec_time) {
  if (!waiting.empty() && waiting.earliest().deadline < exec_time) {
    throw SimulationFault("missed deadline: job " + std::to_string(waiting.earliest().id) +
                          " due " + std::to_string(waiting.earliest().deadline) + " at time " +
                          std::to_string(exec_time));
  }
  return waiting.take_earliest(capacity);
}

StaticSource::StaticSource(const Instance& instance) : sorted_(instance.jobs) {
  std::sort(sorted_.begin(), sorted_.end(), [](const JobSpec& a, const JobSpec& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.id < b.id;
  });
}

std::optional<Time> StaticSource::peek_time(Time, const DispatchTrace&) {
  if (next_ >= sorted_.size()) return std::nullopt;
  return sorted_[next_].release;
}

std::vector<JobSpec> StaticSource::take(Time at, const DispatchTrace&) {
  std::vector<JobSpec> out;
  while (next_ < sorted_.size() && sorted_[next_].release == at) {
    out.push_back(sorted_[next_]);
    ++next_;
  }
  return out;
}

namespace {

// Delivers every arrival the source has at time tau; returns the next
// pending arrival time (> tau or none).
std::optional<Time> drain_arrivals(InstanceSource& source, OnlineAlgorithm& algorithm,
                                   WaitingSet& waiting, RunResult& result, Time tau) {
  std::optional<Time> next = source.peek_time(tau, result.trace);
  while (next && *next == tau) {
    std::vector<JobSpec> arrivals = source.take(tau, result.trace);
    for (const auto& job : arrivals) {
      if (job.release != tau) {
        throw SimulationFault("source yielded job " + std::to_string(job.id) +
                              " with release != arrival time");
      }
      if (job.deadline < tau) {
        throw SimulationFault("source yielded job " + std::to_string(job.id) +
                              " with deadline before arrival");
      }
      waiting.insert(job);
      result.jobs_seen.push_back(job);
    }
    algorithm.on_arrivals(tau, arrivals);
    next = source.peek_time(tau, result.trace);
  }
  return next;
}

}  // namespace

RunResult run_online(InstanceSource& source, OnlineAlgorithm& algorithm) {
  RunResult result;
  result.schedule.system = algorithm.type_system();
  WaitingSet waiting;
  Time last_event = std::numeric_limits<Time>::min();

  while (true) {
    std::optional<Time> arrival = source.peek_time(last_event, result.trace);
    Time tau;
    if (!waiting.empty() && (!arrival || waiting.earliest().deadline <= *arrival)) {
      tau = waiting.earliest().deadline;
    } else if (arrival) {
      tau = *arrival;
    } else {
      break;
    }
    if (tau < last_event) throw SimulationFault("source time went backwards");
    last_event = tau;

    drain_arrivals(source, algorithm, waiting, result, tau);

    std::size_t rounds = 0;
    while (!waiting.empty() && waiting.earliest().deadline == tau) {
      if (++rounds > result.jobs_seen.size() + 1) {
        throw SimulationFault("livelock: decide made no progress at time " + std::to_string(tau));
      }
      const std::vector<std::int32_t> types = algorithm.decide(tau, waiting);
      for (std::int32_t type : types) {
        std::optional<JobId> critical;
        if (!waiting.empty() && waiting.earliest().deadline == tau) {
          critical = waiting.earliest().id;
        }
        std::vector<JobId> jobs = edf_fill(waiting, algorithm.capacity_of(type), tau);
        if (jobs.empty()) continue;
        TraceEntry entry{tau, type, std::move(jobs), critical};
        result.schedule.batches.push_back(Batch{type, tau, entry.jobs});
        result.trace.push_back(std::move(entry));
        algorithm.on_dispatch(result.trace.back(), waiting.size());
      }
      // Adaptive sources may react to the dispatches within the same slot.
      drain_arrivals(source, algorithm, waiting, result, tau);
    }
  }
  return result;
}

}  // namespace busytime
