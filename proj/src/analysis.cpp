#include "busytime/analysis.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace busytime {

std::vector<Violation> check_valid_assignment(const Instance& instance,
                                              std::span<const std::int64_t> capacities,
                                              const IntervalAssignment& assignment) {
  std::vector<Violation> violations;
  std::unordered_map<JobId, const JobSpec*> by_id;
  by_id.reserve(instance.jobs.size() * 2);
  for (const auto& job : instance.jobs) by_id.emplace(job.id, &job);

  std::unordered_map<JobId, std::size_t> owner;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const IntervalTuple& tuple = assignment[i];
    if (tuple.type < 0 || (tuple.type > 0 &&
                           static_cast<std::size_t>(tuple.type - 1) >= capacities.size())) {
      violations.push_back({i, "unknown_type", "type " + std::to_string(tuple.type)});
      continue;
    }
    const std::int64_t required = tuple.type == 0 ? 1 : capacities[tuple.type - 1];
    if (static_cast<std::int64_t>(tuple.jobs.size()) != required) {
      violations.push_back({i, "size",
                            "|J_I| = " + std::to_string(tuple.jobs.size()) + ", required " +
                                std::to_string(required) + " for type " +
                                std::to_string(tuple.type)});
    }
    for (JobId id : tuple.jobs) {
      const auto it = by_id.find(id);
      if (it == by_id.end()) {
        violations.push_back({i, "unknown_job", "job " + std::to_string(id)});
        continue;
      }
      const JobSpec& job = *it->second;
      if (job.release < tuple.left || job.deadline > tuple.right) {
        violations.push_back({i, "window",
                              "job " + std::to_string(id) + " window [" +
                                  std::to_string(job.release) + "," + std::to_string(job.deadline) +
                                  "] not inside [" + std::to_string(tuple.left) + "," +
                                  std::to_string(tuple.right) + "]"});
      }
      const auto [prev, inserted] = owner.emplace(id, i);
      if (!inserted) {
        violations.push_back({i, "unique",
                              "job " + std::to_string(id) + " already charged to tuple " +
                                  std::to_string(prev->second)});
      }
    }
  }

  // Same-type intervals must be slot-disjoint; a shared endpoint counts as
  // overlap.
  std::map<std::int32_t, std::vector<std::pair<Time, std::size_t>>> by_type;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    by_type[assignment[i].type].push_back({assignment[i].left, i});
  }
  for (auto& [type, list] : by_type) {
    std::sort(list.begin(), list.end());
    for (std::size_t j = 1; j < list.size(); ++j) {
      const IntervalTuple& prev = assignment[list[j - 1].second];
      const IntervalTuple& cur = assignment[list[j].second];
      if (cur.left <= prev.right) {
        violations.push_back({list[j].second, "disjoint",
                              "type " + std::to_string(type) + " intervals " +
                                  std::to_string(list[j - 1].second) + " and " +
                                  std::to_string(list[j].second) + " share a slot"});
      }
    }
  }
  return violations;
}

Int sigma(const IntervalAssignment& assignment) {
  Int total = 0;
  for (const auto& tuple : assignment) total += pow2(static_cast<unsigned>(tuple.type));
  return total;
}

CreditReport credit_audit(const Instance& instance, std::span<const std::int64_t> capacities,
                          const Schedule& schedule, const IntervalAssignment& assignment) {
  CreditReport report;
  report.total_distributed = 0;
  report.schedule_cost = 0;

  std::unordered_map<JobId, std::size_t> interval_of;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    for (JobId id : assignment[i].jobs) interval_of.emplace(id, i);
  }
  std::vector<Rational> received(assignment.size(), Rational(0));
  std::vector<bool> served(assignment.size(), false);

  for (std::size_t x = 0; x < schedule.batches.size(); ++x) {
    const Batch& batch = schedule.batches[x];
    const std::int32_t k = batch.type;
    if (k < 0 || static_cast<std::size_t>(k) >= capacities.size()) {
      report.failures.push_back("batch " + std::to_string(x) + " has unknown type " +
                                std::to_string(k));
      continue;
    }
    const Rational batch_cost = Rational(pow2(static_cast<unsigned>(k)));
    report.schedule_cost += batch_cost;

    CreditBatchRow row;
    row.batch_index = x;
    row.type = k;
    row.low_side = 0;
    row.high_side = 0;
    for (JobId id : batch.jobs) {
      const auto it = interval_of.find(id);
      if (it == interval_of.end()) continue;  // I(j) empty: no credit
      const std::size_t i = it->second;
      const IntervalTuple& tuple = assignment[i];
      served[i] = true;
      const Rational interval_share =
          Rational(pow2(static_cast<unsigned>(tuple.type))) /
          static_cast<std::int64_t>(tuple.jobs.size());
      Rational credit;
      if (tuple.type <= k) {
        credit = interval_share;
        row.low_side += credit;
      } else {
        credit = Rational(pow2(static_cast<unsigned>(k) + 1)) / capacities[k];
        row.high_side += credit;
        if (interval_share > credit) {
          report.failures.push_back("claim small-side: batch " + std::to_string(x) + " job " +
                                    std::to_string(id) + " interval share " +
                                    rational_to_string(interval_share) + " > credit " +
                                    rational_to_string(credit));
        }
      }
      received[i] += credit;
      report.total_distributed += credit;
    }
    const Rational side_bound = Rational(pow2(static_cast<unsigned>(k) + 1));
    if (row.low_side > side_bound) {
      report.failures.push_back("claim low-side: batch " + std::to_string(x) + " distributed " +
                                rational_to_string(row.low_side) + " > " +
                                rational_to_string(side_bound));
    }
    if (row.high_side > side_bound) {
      report.failures.push_back("claim high-side: batch " + std::to_string(x) + " distributed " +
                                rational_to_string(row.high_side) + " > " +
                                rational_to_string(side_bound));
    }
    report.batches.push_back(std::move(row));
  }

  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (!served[i]) {
      report.failures.push_back("interval unserved: tuple " + std::to_string(i) +
                                " intersects no batch");
      continue;
    }
    const Rational needed = Rational(pow2(static_cast<unsigned>(assignment[i].type)));
    if (received[i] < needed) {
      report.failures.push_back("interval " + std::to_string(i) + " received " +
                                rational_to_string(received[i]) + " < " +
                                rational_to_string(needed));
    }
    report.intervals.push_back({i, assignment[i].type, received[i]});
  }

  if (report.total_distributed > 4 * report.schedule_cost) {
    report.failures.push_back("total distributed " + rational_to_string(report.total_distributed) +
                              " > 4x schedule cost " + rational_to_string(report.schedule_cost));
  }
  return report;
}

int overlap_depth(const DispatchTrace& trace, const Instance& instance) {
  std::unordered_map<JobId, const JobSpec*> by_id;
  by_id.reserve(instance.jobs.size() * 2);
  for (const auto& job : instance.jobs) by_id.emplace(job.id, &job);

  // One interval per dispatch time, spanning min release to max deadline over
  // everything dispatched then.
  std::map<Time, std::pair<Time, Time>> spans;
  for (const auto& entry : trace) {
    for (JobId id : entry.jobs) {
      const JobSpec& job = *by_id.at(id);
      auto [it, inserted] = spans.try_emplace(entry.time, job.release, job.deadline);
      if (!inserted) {
        it->second.first = std::min(it->second.first, job.release);
        it->second.second = std::max(it->second.second, job.deadline);
      }
    }
  }
  std::vector<std::pair<Time, int>> events;
  for (const auto& [time, span] : spans) {
    events.push_back({span.first, 1});
    events.push_back({span.second + 1, -1});
  }
  std::sort(events.begin(), events.end());
  int depth = 0;
  int max_depth = 0;
  for (const auto& [slot, delta] : events) {
    depth += delta;
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

}  // namespace busytime
