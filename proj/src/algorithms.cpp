#include "busytime/algorithms.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace busytime {

BatchCostTable::BatchCostTable(std::vector<MachineType> canonical_types)
    : types_(std::move(canonical_types)) {
  if (!is_canonical(types_)) {
    throw std::invalid_argument("BatchCostTable requires canonical types");
  }
  cost_.push_back(Rational(0));
  pick_.push_back(-1);
}

const Rational& BatchCostTable::cost(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("negative job count");
  while (static_cast<std::int64_t>(cost_.size()) <= m) {
    const std::int64_t i = static_cast<std::int64_t>(cost_.size());
    Rational best;
    std::int32_t best_type = -1;
    for (std::size_t k = 0; k < types_.size(); ++k) {
      const std::int64_t covered = std::min<std::int64_t>(types_[k].capacity, i);
      const Rational candidate = cost_[i - covered] + types_[k].cost;
      if (best_type < 0 || candidate < best) {
        best = candidate;
        best_type = static_cast<std::int32_t>(k);
      }
    }
    cost_.push_back(std::move(best));
    pick_.push_back(best_type);
  }
  return cost_[m];
}

std::vector<std::int32_t> BatchCostTable::multiset(std::int64_t m) {
  cost(m);
  std::vector<std::int32_t> picked;
  std::int64_t remaining = m;
  while (remaining > 0) {
    const std::int32_t k = pick_[remaining];
    picked.push_back(k);
    remaining -= std::min<std::int64_t>(types_[k].capacity, remaining);
  }
  std::sort(picked.begin(), picked.end(), std::greater<>());  // largest capacity first
  return picked;
}

GetOptimalBatchesResult get_optimal_batches(std::int64_t m,
                                            const std::vector<MachineType>& canonical_types) {
  BatchCostTable table(canonical_types);
  GetOptimalBatchesResult result;
  result.cost = table.cost(m);
  result.types = table.multiset(m);
  return result;
}

GreedyBatcher::GreedyBatcher(std::vector<MachineType> menu, std::string name)
    : name_(std::move(name)), table_(std::move(menu)) {}

std::int64_t GreedyBatcher::capacity_of(std::int32_t type) {
  return table_.types()[type].capacity;
}

std::vector<std::int32_t> GreedyBatcher::decide(Time, const WaitingSet& waiting) {
  return table_.multiset(static_cast<std::int64_t>(waiting.size()));
}

MostCostEfficient::MostCostEfficient(std::vector<MachineType> menu) : menu_(std::move(menu)) {
  if (!is_canonical(menu_)) {
    throw std::invalid_argument("most_cost_efficient requires canonical types");
  }
}

std::int64_t MostCostEfficient::capacity_of(std::int32_t type) {
  return menu_[type].capacity;
}

std::vector<std::int32_t> MostCostEfficient::decide(Time, const WaitingSet& waiting) {
  const std::int64_t w = static_cast<std::int64_t>(waiting.size());
  std::int32_t best = 0;
  Rational best_rate = menu_[0].cost / std::min<std::int64_t>(menu_[0].capacity, w);
  for (std::size_t k = 1; k < menu_.size(); ++k) {
    const Rational rate = menu_[k].cost / std::min<std::int64_t>(menu_[k].capacity, w);
    if (rate < best_rate) {  // smallest type wins ties
      best_rate = rate;
      best = static_cast<std::int32_t>(k);
    }
  }
  return {best};
}

LazyAlgorithm::LazyAlgorithm(std::vector<MachineType> menu) : table_(std::move(menu)) {}

std::int64_t LazyAlgorithm::capacity_of(std::int32_t type) {
  return table_.types()[type].capacity;
}

std::vector<std::int32_t> LazyAlgorithm::decide(Time now, const WaitingSet& waiting) {
  const auto& types = table_.types();
  const std::int32_t largest = static_cast<std::int32_t>(types.size()) - 1;
  if (static_cast<std::int64_t>(waiting.size()) >= types[largest].capacity) {
    return {largest};
  }
  return table_.multiset(static_cast<std::int64_t>(waiting.due_count(now)));
}

RampUpAlgorithm::RampUpAlgorithm(std::vector<MachineType> menu) : menu_(std::move(menu)) {
  if (!is_canonical(menu_)) {
    throw std::invalid_argument("ramp_up requires canonical types");
  }
}

std::int64_t RampUpAlgorithm::capacity_of(std::int32_t type) {
  return menu_[type].capacity;
}

std::vector<std::int32_t> RampUpAlgorithm::decide(Time, const WaitingSet&) {
  std::int32_t chosen = 0;  // type 0 when nothing fits the accumulated spend
  for (std::size_t k = menu_.size(); k-- > 0;) {
    if (menu_[k].cost <= accumulated_) {
      chosen = static_cast<std::int32_t>(k);
      break;
    }
  }
  return {chosen};
}

void RampUpAlgorithm::on_dispatch(const TraceEntry& batch, std::size_t waiting_after) {
  accumulated_ += menu_[batch.type].cost;
  if (waiting_after == 0) accumulated_ = 0;
}

MainAlgorithm::MainAlgorithm(NormalizedLadder ladder) : ladder_(std::move(ladder)) {
  latest_.resize(ladder_.rung_count());
}

std::int64_t MainAlgorithm::capacity_of(std::int32_t type) {
  ladder_.ensure_rung(static_cast<std::size_t>(type));
  return ladder_.rung(static_cast<std::size_t>(type)).capacity;
}

void MainAlgorithm::on_arrivals(Time, std::span<const JobSpec> jobs) {
  for (const auto& job : jobs) release_.emplace(job.id, job.release);
}

std::vector<std::int32_t> MainAlgorithm::decide(Time now, const WaitingSet& waiting) {
  const JobSpec& critical = waiting.earliest();
  assert(critical.deadline == now);

  Time left = critical.release;
  std::size_t k = 0;
  // Grow I_k leftward while the latest rung-k batch time falls inside it; the
  // right endpoint is `now` throughout, and batch times never exceed it.
  while (k < latest_.size() && latest_[k] && latest_[k]->time >= left) {
    left = std::min(left, latest_[k]->earliest_arrival);
    ++k;
  }
  ladder_.ensure_rung(k);
  if (latest_.size() < ladder_.rung_count()) latest_.resize(ladder_.rung_count());

  IntervalTuple tuple;
  tuple.left = left;
  tuple.right = now;
  tuple.type = static_cast<std::int32_t>(k);
  tuple.jobs.push_back(critical.id);
  if (k > 0) {
    const RungHistory& below = *latest_[k - 1];
    for (JobId id : below.jobs) {
      if (id != below.critical) tuple.jobs.push_back(id);
    }
  }
  pending_ = std::move(tuple);
  return {static_cast<std::int32_t>(k)};
}

void MainAlgorithm::on_dispatch(const TraceEntry& batch, std::size_t) {
  assert(pending_ && pending_->type == batch.type && pending_->right == batch.time);
  ledger_.push_back(std::move(*pending_));
  pending_.reset();

  RungHistory history;
  history.time = batch.time;
  history.jobs = batch.jobs;
  history.critical = batch.critical.value();  // the engine always has one here
  Time earliest = release_.at(batch.jobs.front());
  for (JobId id : batch.jobs) earliest = std::min(earliest, release_.at(id));
  history.earliest_arrival = earliest;
  latest_[static_cast<std::size_t>(batch.type)] = std::move(history);
}

std::unique_ptr<OnlineAlgorithm> make_baseline(std::string_view name,
                                               std::vector<MachineType> menu) {
  if (name == "greedy_agreeable") return std::make_unique<GreedyBatcher>(std::move(menu));
  if (name == "greedy_general") {
    return std::make_unique<GreedyBatcher>(std::move(menu), "greedy_general");
  }
  if (name == "most_cost_efficient") return std::make_unique<MostCostEfficient>(std::move(menu));
  if (name == "lazy") return std::make_unique<LazyAlgorithm>(std::move(menu));
  if (name == "ramp_up") return std::make_unique<RampUpAlgorithm>(std::move(menu));
  return nullptr;
}

std::unique_ptr<MainAlgorithm> make_main_algorithm(const Instance& instance) {
  return std::make_unique<MainAlgorithm>(normalize_types(instance));
}

bool is_known_algorithm(std::string_view name) {
  return name == "main" || name == "greedy_agreeable" || name == "greedy_general" ||
         name == "most_cost_efficient" || name == "lazy" || name == "ramp_up";
}

}  // namespace busytime
