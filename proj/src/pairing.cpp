#include "calnet/pairing.hpp"

#include <cmath>
#include <stdexcept>

namespace calnet {

std::uint64_t cantor_pair(std::uint64_t t, std::uint64_t s) {
  std::uint64_t w = t + s;
  return w * (w + 1) / 2 + s;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t i) {
  // w = floor((sqrt(8i+1)-1)/2), then fix up any floating-point drift.
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(i) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > i) --w;
  while ((w + 1) * (w + 2) / 2 <= i) ++w;
  std::uint64_t s = i - w * (w + 1) / 2;
  return {w - s, s};
}

std::uint64_t schedule(std::uint64_t n) {
  if (n == 0) throw std::domain_error("schedule: stages start at 1");
  return cantor_unpair(n - 1).first;
}

int task_of_stage(std::uint64_t n, long pool_size) {
  if (pool_size <= 0) throw std::domain_error("task_of_stage: empty pool has no tasks");
  return static_cast<int>(schedule(n) % static_cast<std::uint64_t>(pool_size));
}

}  // namespace calnet
