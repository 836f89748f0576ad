#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "busytime/instance.hpp"
#include "busytime/schedule.hpp"

namespace busytime {

struct TraceEntry {
  Time time = 0;
  std::int32_t type = 0;
  std::vector<JobId> jobs;           // EDF order
  std::optional<JobId> critical;     // deadline == time when present
};

using DispatchTrace = std::vector<TraceEntry>;

// Released, unscheduled jobs ordered by (deadline, id). Algorithms get a
// read-only view; only the engine inserts and removes.
class WaitingSet {
 public:
  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }
  const JobSpec& earliest() const;                  // min (deadline, id)
  std::size_t due_count(Time t) const;              // jobs with deadline == t
  const JobSpec& job(JobId id) const;

  void insert(const JobSpec& job);
  // Removes and returns up to `capacity` jobs with smallest (deadline, id).
  std::vector<JobId> take_earliest(std::int64_t capacity);

 private:
  std::set<std::pair<Time, JobId>> order_;
  std::unordered_map<JobId, JobSpec> jobs_;
};

// Returns min(capacity, |W|) waiting jobs with smallest (deadline, id),
// removing them from the set. Throws SimulationFault("missed deadline") if a
// waiting job's deadline already passed.
std::vector<JobId> edf_fill(WaitingSet& waiting, std::int64_t capacity, Time exec_time);

class SimulationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Yields jobs over time. Adaptive sources may condition on the trace so far;
// arrival times must be non-decreasing across queries.
class InstanceSource {
 public:
  virtual ~InstanceSource() = default;
  // Earliest time >= now at which jobs will arrive, or nullopt.
  virtual std::optional<Time> peek_time(Time now, const DispatchTrace& trace) = 0;
  // The jobs arriving at the peeked time; each job is yielded exactly once.
  virtual std::vector<JobSpec> take(Time at, const DispatchTrace& trace) = 0;
};

// Replays a fixed instance's jobs at their release times.
class StaticSource final : public InstanceSource {
 public:
  explicit StaticSource(const Instance& instance);
  std::optional<Time> peek_time(Time now, const DispatchTrace& trace) override;
  std::vector<JobSpec> take(Time at, const DispatchTrace& trace) override;

 private:
  std::vector<JobSpec> sorted_;  // by (release, id)
  std::size_t next_ = 0;
};

// Online policies only pick batch types; the engine performs all EDF fills
// and never dispatches before a waiting job's deadline.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::string_view name() const = 0;
  virtual TypeSystem type_system() const { return TypeSystem::real; }
  virtual std::int64_t capacity_of(std::int32_t type) = 0;
  virtual void on_arrivals(Time now, std::span<const JobSpec> jobs) {}
  // Called while some waiting job has deadline == now. Returns the batch
  // types to dispatch at `now`, EDF-filled in order.
  virtual std::vector<std::int32_t> decide(Time now, const WaitingSet& waiting) = 0;
  virtual void on_dispatch(const TraceEntry& batch, std::size_t waiting_after) {}
};

struct RunResult {
  Schedule schedule;
  DispatchTrace trace;
  std::vector<JobSpec> jobs_seen;
};

// Deterministic event-driven simulation. Event times advance to
// min(next arrival, earliest waiting deadline); arrivals at a time are
// delivered before decisions at that time. Throws SimulationFault on a missed
// deadline or a livelocked decide loop.
RunResult run_online(InstanceSource& source, OnlineAlgorithm& algorithm);

}  // namespace busytime
