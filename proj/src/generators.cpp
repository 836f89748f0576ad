#include "busytime/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "busytime/oracle.hpp"

namespace busytime {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

Instance gen_random(const RandomSpec& spec) {
  if (spec.jobs < 1 || spec.types < 1) {
    throw std::invalid_argument("gen_random requires n >= 1 and K >= 1");
  }
  std::mt19937_64 rng(spec.seed);
  Instance instance;

  if (spec.pow2_costs) {
    // A ready-made ladder: costs 2^k, capacities at least doubling, so the
    // per-job cost is non-increasing and normalization is the identity.
    std::uniform_int_distribution<std::int64_t> start(1, 2);
    std::uniform_int_distribution<std::int64_t> extra(0, 2);
    std::int64_t capacity = start(rng);
    for (std::int32_t k = 0; k < spec.types; ++k) {
      instance.machine_types.push_back({capacity, Rational(pow2(static_cast<unsigned>(k)))});
      capacity = capacity * 2 + extra(rng);
    }
  } else {
    std::uniform_int_distribution<std::int64_t> cap_step(1, 4);
    std::uniform_int_distribution<std::int64_t> num(1, 24);
    std::uniform_int_distribution<std::int64_t> den(1, 6);
    std::vector<MachineType> raw;
    std::int64_t capacity = 0;
    for (std::int32_t k = 0; k < spec.types; ++k) {
      capacity += cap_step(rng);
      raw.push_back({capacity, Rational(1) + Rational(num(rng), den(rng))});
    }
    instance.machine_types = canonicalize_types(raw);
  }

  std::uniform_int_distribution<Time> release_dist(0, std::max<Time>(0, spec.horizon - 1));
  std::uniform_int_distribution<Time> window_dist(0, spec.window_max);
  std::vector<Time> releases;
  std::vector<Time> deadlines;
  for (std::int64_t j = 0; j < spec.jobs; ++j) {
    const Time release = release_dist(rng);
    const Time deadline = std::min<Time>(spec.horizon, release + window_dist(rng));
    releases.push_back(release);
    deadlines.push_back(deadline);
  }
  if (spec.agreeable) {
    std::sort(releases.begin(), releases.end());
    std::sort(deadlines.begin(), deadlines.end());
    for (std::int64_t j = 0; j < spec.jobs; ++j) {
      instance.jobs.push_back({j, releases[j], std::max(releases[j], deadlines[j])});
    }
  } else {
    for (std::int64_t j = 0; j < spec.jobs; ++j) {
      instance.jobs.push_back({j, releases[j], deadlines[j]});
    }
  }
  validate_instance(instance);
  return instance;
}

std::optional<AppendixVariant> appendix_variant_from_name(std::string_view name) {
  if (name == "greedy") return AppendixVariant::greedy;
  if (name == "cost_efficient") return AppendixVariant::cost_efficient;
  if (name == "lazy") return AppendixVariant::lazy;
  if (name == "ramp_up") return AppendixVariant::ramp_up;
  return std::nullopt;
}

namespace {

std::vector<MachineType> appendix_menu(int K) {
  std::vector<MachineType> menu;
  for (int l = 0; l <= K; ++l) {
    menu.push_back({ipow(10, l), Rational(pow2(static_cast<unsigned>(l)))});
  }
  return menu;
}

void check_appendix_size(std::int64_t jobs) {
  if (jobs > 1'000'000) {
    throw std::invalid_argument("appendix_a_instance would create " + std::to_string(jobs) +
                                " jobs (limit 10^6)");
  }
}

}  // namespace

Instance appendix_a_instance(AppendixVariant variant, int K) {
  if (K < 2 || K % 2 != 0) {
    throw std::invalid_argument("appendix_a_instance requires even K >= 2");
  }
  Instance instance;
  instance.machine_types = appendix_menu(K);
  const std::int64_t half = ipow(10, K / 2);
  JobId next_id = 0;

  switch (variant) {
    case AppendixVariant::greedy:
    case AppendixVariant::cost_efficient: {
      // half groups of half jobs; each group has one job due at the next slot
      // and the rest share one late deadline. Groups sit two slots apart so
      // each forced decision sees exactly one group.
      check_appendix_size(half * half);
      const Time late = half * 2 + 2;
      for (std::int64_t g = 0; g < half; ++g) {
        const Time at = 2 * g + 1;
        instance.jobs.push_back({next_id++, at, at + 1});
        for (std::int64_t j = 1; j < half; ++j) {
          instance.jobs.push_back({next_id++, at, late});
        }
      }
      break;
    }
    case AppendixVariant::lazy: {
      check_appendix_size(half);
      for (std::int64_t j = 0; j < half; ++j) {
        instance.jobs.push_back({next_id++, 1, 2 + j});
      }
      break;
    }
    case AppendixVariant::ramp_up: {
      // Each repetition: group l (size 10^l, except 2 at l=0 and 10^{K/2}-1 at
      // l=K/2) arrives at offset 2l (l=0) respectively 2l+1; one job per group
      // is due at the next slot, the rest at the repetition's own late slot.
      // The next repetition starts at the first odd slot after that, once the
      // ramp-up accumulator has been cleared.
      const std::int64_t reps = ipow(10, K / 2 - 1);
      std::int64_t per_rep = 2;
      for (int l = 1; l < K / 2; ++l) per_rep += ipow(10, l);
      per_rep += ipow(10, K / 2) - 1;
      check_appendix_size(reps * per_rep);
      Time anchor = 0;
      for (std::int64_t rep = 0; rep < reps; ++rep) {
        const Time late = anchor + K + 3;
        for (int l = 0; l <= K / 2; ++l) {
          const Time at = l == 0 ? anchor : anchor + 2 * l + 1;
          std::int64_t size = l == 0 ? 2 : ipow(10, l);
          if (l == K / 2) size = ipow(10, K / 2) - 1;
          instance.jobs.push_back({next_id++, at, at + 1});
          for (std::int64_t j = 1; j < size; ++j) {
            instance.jobs.push_back({next_id++, at, late});
          }
        }
        anchor = late + 1 + (late % 2 == 0 ? 0 : 1);  // next odd slot after `late`
      }
      break;
    }
  }
  validate_instance(instance);
  return instance;
}

Rational appendix_a_expected_alg_cost(AppendixVariant variant, int K) {
  const std::int64_t half = ipow(10, K / 2);
  switch (variant) {
    case AppendixVariant::greedy:
    case AppendixVariant::cost_efficient:
      return Rational(half * pow2(static_cast<unsigned>(K / 2)));
    case AppendixVariant::lazy:
      return Rational(half);
    case AppendixVariant::ramp_up:
      return Rational(ipow(10, K / 2 - 1) * pow2(static_cast<unsigned>(1 + K / 2)));
  }
  throw std::logic_error("unreachable");
}

Rational appendix_a_opt_bound(AppendixVariant variant, int K) {
  const std::int64_t half = ipow(10, K / 2);
  switch (variant) {
    case AppendixVariant::greedy:
    case AppendixVariant::cost_efficient:
      return Rational(half + pow2(static_cast<unsigned>(K)));
    case AppendixVariant::lazy:
      return Rational(pow2(static_cast<unsigned>(K / 2)));
    case AppendixVariant::ramp_up:
      return Rational((2 + K / 2) * ipow(10, K / 2 - 1) + pow2(static_cast<unsigned>(K)));
  }
  throw std::logic_error("unreachable");
}

TightExample tight_example(int q) {
  if (q < 1) throw std::invalid_argument("tight_example requires q >= 1");
  TightExample out;
  // Types k <= q have capacity 2^k; types k >= q+1 have capacity 2^{q+k}.
  for (int k = 0; k <= 2 * q + 2; ++k) {
    const int cap_exp = k <= q ? k : q + k;
    out.instance.machine_types.push_back(
        {static_cast<std::int64_t>(1) << cap_exp, Rational(pow2(static_cast<unsigned>(k)))});
  }

  JobId next_id = 0;
  auto add_tuple = [&](Time left, Time right, std::int32_t type, std::int64_t count) {
    IntervalTuple tuple{left, right, type, {}};
    for (std::int64_t j = 0; j < count; ++j) {
      out.instance.jobs.push_back({next_id, left, right});
      tuple.jobs.push_back(next_id);
      ++next_id;
    }
    out.assignment.push_back(std::move(tuple));
  };

  for (std::int64_t r = 1; r <= (std::int64_t(1) << q); ++r) {
    for (int s = 0; s <= q + 1; ++s) {
      add_tuple(2 * r, 2 * r + 1, s, s == 0 ? 1 : std::int64_t(1) << (s - 1));
    }
  }
  const Time tail = (Time(1) << (q + 1)) + 2;
  add_tuple(0, tail, 2 * q + 2, std::int64_t(1) << (3 * q + 1));

  // Constructed solution: one type-(q+1) batch per r at slot 2r+1 carrying all
  // tuple jobs of that r, padded with tail jobs; one final type-(q+1) batch.
  out.schedule.system = TypeSystem::real;
  const std::int64_t batch_capacity = std::int64_t(1) << (2 * q + 1);
  const IntervalTuple& tail_tuple = out.assignment.back();
  std::size_t tail_next = 0;
  for (std::int64_t r = 1; r <= (std::int64_t(1) << q); ++r) {
    Batch batch;
    batch.type = q + 1;
    batch.time = 2 * r + 1;
    for (int s = 0; s <= q + 1; ++s) {
      const IntervalTuple& tuple = out.assignment[(r - 1) * (q + 2) + s];
      batch.jobs.insert(batch.jobs.end(), tuple.jobs.begin(), tuple.jobs.end());
    }
    while (static_cast<std::int64_t>(batch.jobs.size()) < batch_capacity) {
      batch.jobs.push_back(tail_tuple.jobs[tail_next++]);
    }
    out.schedule.batches.push_back(std::move(batch));
  }
  Batch final_batch;
  final_batch.type = q + 1;
  final_batch.time = tail;
  while (tail_next < tail_tuple.jobs.size()) {
    final_batch.jobs.push_back(tail_tuple.jobs[tail_next++]);
  }
  out.schedule.batches.push_back(std::move(final_batch));

  validate_instance(out.instance);
  return out;
}

std::vector<MachineType> adversary_menu(std::int64_t M) {
  return {{1, Rational(1)}, {M * M * M, Rational(M)}};
}

Theorem3Source::Theorem3Source(std::int64_t M, std::function<bool(std::int32_t)> is_large)
    : M_(M), group_size_(M * M * M / 2), is_large_(std::move(is_large)) {
  if (M < 4 || M % 2 != 0) throw std::invalid_argument("theorem3_source requires even M >= 4");
}

void Theorem3Source::scan_trace(const DispatchTrace& trace) {
  // A large dispatch observed after the latest release schedules the next
  // group at the following odd slot; beyond M groups it is only counted.
  for (; scanned_ < trace.size(); ++scanned_) {
    const TraceEntry& entry = trace[scanned_];
    if (!is_large_(entry.type)) continue;
    if (releases_.empty() || entry.time < releases_.back()) continue;
    if (pending_) continue;
    if (groups_released() >= M_) {
      ++suppressed_;
      continue;
    }
    pending_ = entry.time + (entry.time % 2 == 0 ? 1 : 2);
  }
}

std::optional<Time> Theorem3Source::peek_time(Time, const DispatchTrace& trace) {
  scan_trace(trace);
  return pending_;
}

std::vector<JobSpec> Theorem3Source::take(Time at, const DispatchTrace& trace) {
  scan_trace(trace);
  if (!pending_ || *pending_ != at) {
    throw std::logic_error("theorem3_source: take at an unannounced time");
  }
  pending_.reset();
  releases_.push_back(at);
  std::vector<JobSpec> group;
  group.reserve(group_size_);
  for (std::int64_t j = 0; j < group_size_; ++j) {
    group.push_back({next_id_++, at, next_even_});
    next_even_ += 2;
  }
  yielded_.insert(yielded_.end(), group.begin(), group.end());
  return group;
}

namespace {

// Deadlines of one adversary group, ascending. Groups are released in deadline
// order, so each group owns a contiguous block of even slots.
std::vector<std::vector<const JobSpec*>> group_jobs(const Instance& realized,
                                                    const std::vector<Time>& release_times) {
  std::vector<std::vector<const JobSpec*>> groups(release_times.size());
  for (const auto& job : realized.jobs) {
    const auto it = std::lower_bound(release_times.begin(), release_times.end(), job.release);
    if (it == release_times.end() || *it != job.release) {
      throw std::logic_error("adversary job released outside any group");
    }
    groups[it - release_times.begin()].push_back(&job);
  }
  for (auto& group : groups) {
    std::sort(group.begin(), group.end(),
              [](const JobSpec* a, const JobSpec* b) { return a->deadline < b->deadline; });
  }
  return groups;
}

Rational validated_bound(const Instance& realized, const std::vector<Placement>& placements,
                         const std::string& label) {
  const auto assignment = edf_feasible(realized, placements);
  if (!assignment) {
    throw std::logic_error("adversary_opt_bounds: constructed solution " + label +
                           " is infeasible");
  }
  Schedule schedule;
  schedule.system = TypeSystem::real;
  schedule.batches.resize(placements.size());
  for (std::size_t i = 0; i < placements.size(); ++i) {
    schedule.batches[i].type = placements[i].type;
    schedule.batches[i].time = placements[i].time;
  }
  for (std::size_t j = 0; j < realized.jobs.size(); ++j) {
    schedule.batches[assignment->job_to_placement[j]].jobs.push_back(realized.jobs[j].id);
  }
  std::erase_if(schedule.batches, [](const Batch& batch) { return batch.jobs.empty(); });
  if (!validate_schedule(realized, schedule).empty()) {
    throw std::logic_error("adversary_opt_bounds: constructed solution " + label +
                           " failed validation");
  }
  return schedule_cost(realized, schedule);
}

}  // namespace

Rational adversary_opt_bounds(std::int64_t M, const Instance& realized,
                              const DispatchTrace& trace, const std::vector<Time>& release_times,
                              const std::function<bool(std::int32_t)>& is_large) {
  if (release_times.empty()) throw std::invalid_argument("no groups released");
  const auto groups = group_jobs(realized, release_times);
  const std::size_t g = groups.size();

  // q_i: jobs the algorithm covered with small machines between releases i and
  // i+1. With capacity-1 smalls this is the paper's small-batch count; ladder
  // runs realize their small rungs as that many unit machines.
  std::vector<std::int64_t> q(g, 0);
  for (const auto& entry : trace) {
    if (is_large(entry.type)) continue;
    const auto it =
        std::upper_bound(release_times.begin(), release_times.end(), entry.time);
    if (it == release_times.begin()) continue;  // before the first release: impossible
    q[it - release_times.begin() - 1] += static_cast<std::int64_t>(entry.jobs.size());
  }

  constexpr std::int32_t kSmall = 0;
  constexpr std::int32_t kLarge = 1;

  // Solution A: one large batch at each group's first deadline.
  std::vector<Placement> a;
  for (const auto& group : groups) a.push_back({group.front()->deadline, kLarge});
  Rational best = validated_bound(realized, a, "A");

  // Solutions B and C pair a run of small batches on alternating groups with
  // one large batch carrying that group's remainder plus the entire next
  // group. The large lands on the first deadline past the algorithm's own
  // trigger, which is always past the next group's release.
  const auto alternating = [&](std::size_t first_small_group, const std::string& label) {
    std::vector<Placement> placements;
    if (first_small_group >= 1) {
      placements.push_back({groups[0].front()->deadline, kLarge});
    }
    for (std::size_t i = first_small_group; i < g; i += 2) {
      const auto& group = groups[i];
      const std::int64_t smalls =
          std::min<std::int64_t>(q[i] + 1, static_cast<std::int64_t>(group.size()));
      for (std::int64_t s = 0; s < smalls; ++s) {
        placements.push_back({group[s]->deadline, kSmall});
      }
      if (smalls < static_cast<std::int64_t>(group.size())) {
        placements.push_back({group[smalls]->deadline, kLarge});
      } else if (i + 1 < g) {
        placements.push_back({groups[i + 1].front()->deadline, kLarge});
      }
    }
    return validated_bound(realized, placements, label);
  };

  if (g >= 2) {
    best = std::min(best, alternating(1, "B"));  // large on group 1, smalls on even groups
  }
  best = std::min(best, alternating(0, "C"));  // smalls on odd groups first
  return best;
}

}  // namespace busytime
