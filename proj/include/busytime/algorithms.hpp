#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "busytime/analysis.hpp"
#include "busytime/engine.hpp"
#include "busytime/instance.hpp"
#include "busytime/ladder.hpp"

namespace busytime {

// Minimum-cost machine multiset whose capacities cover m jobs, via the
// recurrence cost(m) = min_k cost(m - min(B_k, m)) + c_k with cost(0) = 0.
// The table extends lazily and is shared across queries.
class BatchCostTable {
 public:
  explicit BatchCostTable(std::vector<MachineType> canonical_types);

  const Rational& cost(std::int64_t m);
  // Types achieving cost(m), largest capacity first.
  std::vector<std::int32_t> multiset(std::int64_t m);
  const std::vector<MachineType>& types() const { return types_; }

 private:
  std::vector<MachineType> types_;
  std::vector<Rational> cost_;
  std::vector<std::int32_t> pick_;
};

struct GetOptimalBatchesResult {
  std::vector<std::int32_t> types;
  Rational cost;
};

GetOptimalBatchesResult get_optimal_batches(std::int64_t m,
                                            const std::vector<MachineType>& canonical_types);

// Batches every waiting job through the optimal-cover table whenever a
// deadline forces a dispatch; 2-competitive on agreeable instances.
class GreedyBatcher final : public OnlineAlgorithm {
 public:
  GreedyBatcher(std::vector<MachineType> menu, std::string name = "greedy_agreeable");
  std::string_view name() const override { return name_; }
  std::int64_t capacity_of(std::int32_t type) override;
  std::vector<std::int32_t> decide(Time now, const WaitingSet& waiting) override;

 private:
  std::string name_;
  BatchCostTable table_;
};

// At a deadline, picks the single type minimizing cost / min(B_k, |W|),
// smallest type on ties.
class MostCostEfficient final : public OnlineAlgorithm {
 public:
  explicit MostCostEfficient(std::vector<MachineType> menu);
  std::string_view name() const override { return "most_cost_efficient"; }
  std::int64_t capacity_of(std::int32_t type) override;
  std::vector<std::int32_t> decide(Time now, const WaitingSet& waiting) override;

 private:
  std::vector<MachineType> menu_;
};

// Covers only the jobs due right now with the cheapest types, except that the
// menu's largest machine is dispatched once |W| reaches its capacity.
class LazyAlgorithm final : public OnlineAlgorithm {
 public:
  explicit LazyAlgorithm(std::vector<MachineType> menu);
  std::string_view name() const override { return "lazy"; }
  std::int64_t capacity_of(std::int32_t type) override;
  std::vector<std::int32_t> decide(Time now, const WaitingSet& waiting) override;

 private:
  BatchCostTable table_;
};

// Uses the largest type whose cost fits inside the spend accumulated since
// the waiting set last emptied (type 0 when nothing fits); the accumulator
// resets whenever a dispatch clears the waiting set.
class RampUpAlgorithm final : public OnlineAlgorithm {
 public:
  explicit RampUpAlgorithm(std::vector<MachineType> menu);
  std::string_view name() const override { return "ramp_up"; }
  std::int64_t capacity_of(std::int32_t type) override;
  std::vector<std::int32_t> decide(Time now, const WaitingSet& waiting) override;
  void on_dispatch(const TraceEntry& batch, std::size_t waiting_after) override;

 private:
  std::vector<MachineType> menu_;
  Rational accumulated_ = 0;
};

// The general-deadline algorithm. Works on the virtual ladder: at the
// deadline of critical job j*, grows a nested interval chain [r_{j*}, tau] =
// I_0 subseteq I_1 ... and uses the first rung k whose latest own batch lies
// outside I_k. Emits the interval-assignment ledger that certifies its cost.
class MainAlgorithm final : public OnlineAlgorithm {
 public:
  explicit MainAlgorithm(NormalizedLadder ladder);
  std::string_view name() const override { return "main"; }
  TypeSystem type_system() const override { return TypeSystem::virtual_ladder; }
  std::int64_t capacity_of(std::int32_t type) override;
  void on_arrivals(Time now, std::span<const JobSpec> jobs) override;
  std::vector<std::int32_t> decide(Time now, const WaitingSet& waiting) override;
  void on_dispatch(const TraceEntry& batch, std::size_t waiting_after) override;

  const NormalizedLadder& ladder() const { return ladder_; }
  const IntervalAssignment& ledger() const { return ledger_; }

 private:
  struct RungHistory {
    Time time = 0;              // tau of the latest own rung batch
    Time earliest_arrival = 0;  // min release among that batch's jobs
    std::vector<JobId> jobs;
    JobId critical = 0;
  };

  NormalizedLadder ladder_;
  std::vector<std::optional<RungHistory>> latest_;  // per rung
  std::unordered_map<JobId, Time> release_;
  IntervalAssignment ledger_;
  std::optional<IntervalTuple> pending_;  // built in decide, sealed on dispatch
};

// greedy_agreeable | greedy_general | most_cost_efficient | lazy | ramp_up,
// all on the real menu. Returns nullptr for unknown names and for "main"
// (which needs a ladder; see make_main_algorithm).
std::unique_ptr<OnlineAlgorithm> make_baseline(std::string_view name,
                                               std::vector<MachineType> menu);

std::unique_ptr<MainAlgorithm> make_main_algorithm(const Instance& instance);

bool is_known_algorithm(std::string_view name);

}  // namespace busytime
