#include "busytime/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>

#include "busytime/algorithms.hpp"

namespace busytime {

std::optional<EdfAssignment> edf_feasible(const Instance& instance,
                                          std::vector<Placement> placements) {
  std::vector<std::int32_t> order(placements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int32_t>(i);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return placements[a].time < placements[b].time;
  });

  std::vector<std::size_t> jobs_by_release(instance.jobs.size());
  for (std::size_t i = 0; i < jobs_by_release.size(); ++i) jobs_by_release[i] = i;
  std::sort(jobs_by_release.begin(), jobs_by_release.end(), [&](std::size_t a, std::size_t b) {
    return instance.jobs[a].release < instance.jobs[b].release;
  });

  EdfAssignment assignment;
  assignment.job_to_placement.assign(instance.jobs.size(), -1);
  // (deadline, id, job index) of released unassigned jobs
  std::set<std::tuple<Time, JobId, std::size_t>> released;
  std::size_t next_release = 0;
  std::size_t assigned = 0;

  for (std::int32_t pi : order) {
    const Placement& placement = placements[pi];
    while (next_release < jobs_by_release.size() &&
           instance.jobs[jobs_by_release[next_release]].release <= placement.time) {
      const std::size_t j = jobs_by_release[next_release];
      released.emplace(instance.jobs[j].deadline, instance.jobs[j].id, j);
      ++next_release;
    }
    if (!released.empty() && std::get<0>(*released.begin()) < placement.time) {
      return std::nullopt;  // a released job's deadline already passed
    }
    std::int64_t room = instance.machine_types.at(placement.type).capacity;
    while (room > 0 && !released.empty()) {
      const auto it = released.begin();
      assignment.job_to_placement[std::get<2>(*it)] = pi;
      released.erase(it);
      --room;
      ++assigned;
    }
  }
  if (assigned != instance.jobs.size()) return std::nullopt;
  return assignment;
}

namespace {

// Dinic max-flow on the tiny job/placement graph.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  void add_edge(int from, int to, std::int64_t capacity) {
    edges_.push_back({to, head_[from], capacity});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  std::int64_t run(int source, int sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      cursor_ = head_;
      while (std::int64_t pushed = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) {
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    int next;
    std::int64_t capacity;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].capacity > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          queue.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t dfs(int u, int sink, std::int64_t limit) {
    if (u == sink || limit == 0) return limit;
    for (int& e = cursor_[u]; e != -1; e = edges_[e].next) {
      Edge& edge = edges_[e];
      if (edge.capacity > 0 && level_[edge.to] == level_[u] + 1) {
        const std::int64_t pushed =
            dfs(edge.to, sink, std::min(limit, edge.capacity));
        if (pushed > 0) {
          edge.capacity -= pushed;
          edges_[e ^ 1].capacity += pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

}  // namespace

bool matching_feasible(const Instance& instance, const std::vector<Placement>& placements) {
  const int n = static_cast<int>(instance.jobs.size());
  const int p = static_cast<int>(placements.size());
  const int source = n + p;
  const int sink = n + p + 1;
  MaxFlow flow(n + p + 2);
  for (int j = 0; j < n; ++j) flow.add_edge(source, j, 1);
  for (int i = 0; i < p; ++i) {
    flow.add_edge(n + i, sink, instance.machine_types.at(placements[i].type).capacity);
    for (int j = 0; j < n; ++j) {
      if (instance.jobs[j].release <= placements[i].time &&
          placements[i].time <= instance.jobs[j].deadline) {
        flow.add_edge(j, n + i, 1);
      }
    }
  }
  return flow.run(source, sink) == n;
}

namespace {

struct StateKey {
  std::size_t step;
  std::vector<Time> deadlines;  // sorted multiset

  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const {
    std::size_t h = 1469598103934665603ull ^ key.step;
    for (Time d : key.deadlines) {
      h ^= static_cast<std::size_t>(d) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct StateEntry {
  Rational cost;
  bool cover = false;                 // assign everything via the optimal cover
  std::vector<std::int32_t> partial;  // otherwise: canonical types, descending
};

class ExactSolver {
 public:
  ExactSolver(const Instance& instance, const OracleLimits& limits) : instance_(instance) {
    keep_ = canonical_type_indices(instance.machine_types);
    std::vector<MachineType> canonical;
    for (std::size_t idx : keep_) canonical.push_back(instance.machine_types[idx]);
    if (instance.job_count() > limits.max_jobs) {
      throw OracleLimitExceeded("exact_opt: " + std::to_string(instance.job_count()) +
                                " jobs exceed limit " + std::to_string(limits.max_jobs));
    }
    if (static_cast<std::int64_t>(canonical.size()) > limits.max_types) {
      throw OracleLimitExceeded("exact_opt: " + std::to_string(canonical.size()) +
                                " machine types exceed limit " + std::to_string(limits.max_types));
    }
    for (const auto& job : instance.jobs) deadline_times_.push_back(job.deadline);
    std::sort(deadline_times_.begin(), deadline_times_.end());
    deadline_times_.erase(std::unique(deadline_times_.begin(), deadline_times_.end()),
                          deadline_times_.end());
    if (static_cast<std::int64_t>(deadline_times_.size()) > limits.max_distinct_deadlines) {
      throw OracleLimitExceeded("exact_opt: " + std::to_string(deadline_times_.size()) +
                                " distinct deadlines exceed limit " +
                                std::to_string(limits.max_distinct_deadlines));
    }
    table_.emplace(std::move(canonical));

    // Arrivals bucketed per step: step i sees releases in (D[i-1], D[i]].
    arrivals_.resize(deadline_times_.size());
    arriving_jobs_.resize(deadline_times_.size());
    for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
      const auto& job = instance.jobs[j];
      const std::size_t step =
          std::lower_bound(deadline_times_.begin(), deadline_times_.end(), job.release) -
          deadline_times_.begin();
      arrivals_[step].push_back(job.deadline);
      arriving_jobs_[step].push_back(j);
    }
    for (auto& bucket : arrivals_) std::sort(bucket.begin(), bucket.end());
  }

  OracleResult solve() {
    OracleResult result;
    if (instance_.jobs.empty()) {
      result.cost = 0;
      return result;
    }
    result.cost = best(0, arrivals_[0]);
    reconstruct(result.schedule);
    return result;
  }

 private:
  const Rational& best(std::size_t step, const std::vector<Time>& unassigned) {
    const StateKey key{step, unassigned};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.cost;

    const auto& types = table_->types();
    const std::int64_t alive = static_cast<std::int64_t>(unassigned.size());
    const Time now = deadline_times_[step];
    const std::int64_t due =
        std::upper_bound(unassigned.begin(), unassigned.end(), now) - unassigned.begin();
    assert(due == 0 || unassigned.front() >= now);

    StateEntry entry;
    entry.cover = true;
    entry.cost = table_->cost(alive);
    if (step + 1 < deadline_times_.size()) {
      entry.cost += best(step + 1, arrivals_[step + 1]);
    }

    // Partial dispatches: multisets built largest type first, every machine
    // added while total capacity is still short of the alive count. Covering
    // multisets are dominated by the optimal-cover option above.
    std::vector<std::int32_t> chosen;
    if (step + 1 < deadline_times_.size()) {
      enumerate(static_cast<std::int32_t>(types.size()) - 1, 0, Rational(0), due, alive, step,
                unassigned, chosen, entry);
    }
    auto [it, inserted] = memo_.emplace(key, std::move(entry));
    return it->second.cost;
  }

  void enumerate(std::int32_t max_type, std::int64_t capacity, const Rational& spent,
                 std::int64_t due, std::int64_t alive, std::size_t step,
                 const std::vector<Time>& unassigned, std::vector<std::int32_t>& chosen,
                 StateEntry& entry) {
    if (capacity >= due) {
      // Admissible bound: covering every remaining job ignoring windows.
      const std::int64_t remaining = alive - capacity + future_after(step);
      if (spent + lower_bound(remaining) < entry.cost) {
        std::vector<Time> next(unassigned.begin() + capacity, unassigned.end());
        const auto& incoming = arrivals_[step + 1];
        next.insert(next.end(), incoming.begin(), incoming.end());
        std::sort(next.begin(), next.end());
        const Rational total = spent + best(step + 1, next);
        if (total < entry.cost) {
          entry.cost = total;
          entry.cover = false;
          entry.partial = chosen;
        }
      }
    }
    const auto& types = table_->types();
    for (std::int32_t k = max_type; k >= 0; --k) {
      if (capacity + types[k].capacity >= alive) continue;  // would cover; handled optimally
      chosen.push_back(k);
      enumerate(k, capacity + types[k].capacity, spent + types[k].cost, due, alive, step,
                unassigned, chosen, entry);
      chosen.pop_back();
    }
  }

  std::int64_t future_after(std::size_t step) const {
    std::int64_t count = 0;
    for (std::size_t s = step + 1; s < arrivals_.size(); ++s) {
      count += static_cast<std::int64_t>(arrivals_[s].size());
    }
    return count;
  }

  const Rational& lower_bound(std::int64_t remaining) { return table_->cost(remaining); }

  void reconstruct(Schedule& schedule) {
    schedule.system = TypeSystem::real;
    // Replay choices with the actual job identities, EDF per step.
    std::set<std::tuple<Time, JobId, std::size_t>> released;
    for (std::size_t step = 0; step < deadline_times_.size(); ++step) {
      std::vector<Time> unassigned;
      for (const auto& [d, id, idx] : released) unassigned.push_back(d);
      std::sort(unassigned.begin(), unassigned.end());
      const auto& incoming = arrivals_[step];
      unassigned.insert(unassigned.end(), incoming.begin(), incoming.end());
      std::sort(unassigned.begin(), unassigned.end());
      for (std::size_t j : arriving_jobs_[step]) {
        released.emplace(instance_.jobs[j].deadline, instance_.jobs[j].id, j);
      }
      const auto it = memo_.find(StateKey{step, unassigned});
      assert(it != memo_.end());
      const StateEntry& entry = it->second;
      std::vector<std::int32_t> multiset =
          entry.cover ? table_->multiset(static_cast<std::int64_t>(unassigned.size()))
                      : entry.partial;
      for (std::int32_t k : multiset) {
        Batch batch;
        batch.type = static_cast<std::int32_t>(keep_[k]);
        batch.time = deadline_times_[step];
        std::int64_t room = table_->types()[k].capacity;
        while (room > 0 && !released.empty()) {
          const auto front = released.begin();
          batch.jobs.push_back(std::get<1>(*front));
          released.erase(front);
          --room;
        }
        if (!batch.jobs.empty()) schedule.batches.push_back(std::move(batch));
      }
    }
    assert(released.empty());
  }

  const Instance& instance_;
  std::vector<std::size_t> keep_;  // canonical index -> original index
  std::optional<BatchCostTable> table_;
  std::vector<Time> deadline_times_;
  std::vector<std::vector<Time>> arrivals_;          // deadlines arriving per step
  std::vector<std::vector<std::size_t>> arriving_jobs_;  // job indices per step
  std::unordered_map<StateKey, StateEntry, StateKeyHash> memo_;
};

}  // namespace

OracleResult exact_opt(const Instance& instance, const OracleLimits& limits) {
  ExactSolver solver(instance, limits);
  return solver.solve();
}

}  // namespace busytime
