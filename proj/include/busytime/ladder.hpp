#pragma once

#include <cstdint>
#include <vector>

#include "busytime/instance.hpp"

namespace busytime {

// One virtual machine type of cost 2^k (in units of the scale), realized by
// `real_count` copies of one real type.
struct LadderRung {
  std::int64_t capacity = 0;    // beta_k
  std::size_t real_type = 0;    // index into real_types()
  std::int64_t real_count = 1;  // always a power of two
};

// Virtual machine-type ladder: rung k has cost 2^k and capacity beta_k with
// beta_{k+1} >= 2 beta_k, so the per-job cost 2^k/beta_k is non-increasing.
// Rungs are generated lazily; adaptive runs extend the ladder as jobs appear.
class NormalizedLadder {
 public:
  static NormalizedLadder from_canonical(std::vector<MachineType> canonical_types);

  const Rational& scale() const { return scale_; }
  const std::vector<MachineType>& real_types() const { return real_types_; }

  std::size_t rung_count() const { return rungs_.size(); }
  const LadderRung& rung(std::size_t k) const { return rungs_.at(k); }

  // Extends by the doubling rule until rung k exists.
  void ensure_rung(std::size_t k);
  // Extends until some beta_k > jobs; returns the index of that rung.
  std::size_t ensure_capacity(std::int64_t jobs);

  // Original-unit cost of a rung-k batch: 2^k * scale.
  Rational rung_cost(std::size_t k) const;
  // Original-unit cost of the rung's realization; <= rung_cost(k).
  Rational realization_cost(std::size_t k) const;

 private:
  Rational scale_ = 1;
  std::vector<MachineType> real_types_;
  std::vector<LadderRung> rungs_;
  // Per power p: the real type (max capacity) whose scaled cost rounds up to 2^p.
  struct RoundedType {
    std::int64_t capacity;
    std::size_t index;
  };
  std::vector<std::vector<RoundedType>> by_power_;  // at most one entry per power
};

// Builds the ladder for a (not necessarily canonical) instance, extended until
// beta > n. The instance's types are canonicalized first.
NormalizedLadder normalize_types(const Instance& instance);

}  // namespace busytime
