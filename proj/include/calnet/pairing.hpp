#pragma once

#include <cstdint>
#include <utility>

namespace calnet {

// Cantor pairing of nonnegative integers: pair(t,s) = (t+s)(t+s+1)/2 + s.
std::uint64_t cantor_pair(std::uint64_t t, std::uint64_t s);

// Inverse of cantor_pair; returns (t, s).
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t i);

// Task scheduled at stage n >= 1: the t-coordinate of the Cantor unpairing
// of n-1. Every task index recurs infinitely often along n = 1, 2, ...
std::uint64_t schedule(std::uint64_t n);

// schedule(n) reduced to a finite pool of `pool_size` entries.
int task_of_stage(std::uint64_t n, long pool_size);

}  // namespace calnet
