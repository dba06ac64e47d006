#pragma once

#include <cstdint>
#include <random>

#include "rational.hpp"

namespace psc {

// Deterministic stream generator. A given (master_seed, stream) pair yields
// the same draw sequence on every platform and under any thread schedule;
// parallel code must derive one stream per work item via fork().
class Rng {
 public:
  explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform in [0, n), unbiased (rejection sampling). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t int_in(std::int64_t lo, std::int64_t hi);

  // True with probability p, p in [0,1] with a machine-word denominator.
  bool chance(const Rational& p);

  // Uniform over the grid {t/den_bound : lo <= t/den_bound <= hi}.
  Rational rational_in(const Rational& lo, const Rational& hi,
                       unsigned long den_bound);

  // Derived independent stream; deterministic in (this stream, substream).
  Rng fork(std::uint64_t substream) const;

 private:
  std::uint64_t master_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace psc
