#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "calnet/rat.hpp"

namespace calnet {

// Counter-based pseudorandom generator: output i of a stream is
// splitmix64_mix(key + (i+1) * GAMMA), i.e. the standard splitmix64
// sequence started at `key`. Streams never carry hidden state beyond
// the (key, counter) pair, so any draw is reproducible from
// (seed, stream, counter).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Exact uniform integer in [0, bound), bound >= 1, by rejection
  // sampling on fixed-width bit blocks.
  mpz_class next_below(const mpz_class& bound);

  // Exact Bernoulli draw with success probability p in [0,1].
  bool bernoulli(const Rat& p);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// splitmix64 finalizer; also used to derive substream keys.
std::uint64_t mix64(std::uint64_t x);

// Deterministic seed derivation for named substreams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace calnet
