#include "busytime/ladder.hpp"

#include <stdexcept>

namespace busytime {

NormalizedLadder NormalizedLadder::from_canonical(std::vector<MachineType> canonical_types) {
  if (!is_canonical(canonical_types)) {
    throw std::invalid_argument("normalize_types requires a canonical type list");
  }
  NormalizedLadder ladder;
  ladder.real_types_ = std::move(canonical_types);
  ladder.scale_ = ladder.real_types_[0].cost;

  // Round each scaled cost up to the next power of two; per power keep only
  // the max-capacity real type. Capacities increase with index, so the last
  // writer per power wins.
  for (std::size_t i = 0; i < ladder.real_types_.size(); ++i) {
    const Rational ratio = ladder.real_types_[i].cost / ladder.scale_;
    const unsigned p = ceil_log2(ratio);
    if (ladder.by_power_.size() <= p) ladder.by_power_.resize(p + 1);
    ladder.by_power_[p] = {RoundedType{ladder.real_types_[i].capacity, i}};
  }

  // Rung 0 is the unique real type at power 2^0 (the cheapest type itself).
  const RoundedType base = ladder.by_power_[0].front();
  ladder.rungs_.push_back(LadderRung{base.capacity, base.index, 1});
  return ladder;
}

void NormalizedLadder::ensure_rung(std::size_t k) {
  while (rungs_.size() <= k) {
    const std::size_t next = rungs_.size();
    const LadderRung& prev = rungs_.back();
    const std::int64_t doubled = prev.capacity * 2;
    // Larger capacity wins between the real type rounded to this power and two
    // copies of the previous rung; ties go to the single real type.
    if (next < by_power_.size() && !by_power_[next].empty() &&
        by_power_[next].front().capacity >= doubled) {
      const RoundedType& real = by_power_[next].front();
      rungs_.push_back(LadderRung{real.capacity, real.index, 1});
    } else {
      rungs_.push_back(LadderRung{doubled, prev.real_type, prev.real_count * 2});
    }
  }
}

std::size_t NormalizedLadder::ensure_capacity(std::int64_t jobs) {
  std::size_t k = 0;
  while (true) {
    ensure_rung(k);
    if (rungs_[k].capacity > jobs) return k;
    ++k;
  }
}

Rational NormalizedLadder::rung_cost(std::size_t k) const {
  return Rational(pow2(static_cast<unsigned>(k))) * scale_;
}

Rational NormalizedLadder::realization_cost(std::size_t k) const {
  const LadderRung& r = rungs_.at(k);
  return real_types_[r.real_type].cost * r.real_count;
}

NormalizedLadder normalize_types(const Instance& instance) {
  auto ladder = NormalizedLadder::from_canonical(canonicalize_types(instance.machine_types));
  ladder.ensure_capacity(instance.job_count());
  return ladder;
}

}  // namespace busytime
