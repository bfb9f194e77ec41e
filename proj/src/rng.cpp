#include "calnet/rng.hpp"

#include <stdexcept>
#include <vector>

namespace calnet {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(seed + kGamma * a) ^ mix64(b + 0x5851F42D4C957F2DULL));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(stream == 0 ? seed : derive_seed(seed, stream)) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + kGamma * counter_);
}

mpz_class CounterRng::next_below(const mpz_class& bound) {
  if (sgn(bound) <= 0) throw std::domain_error("next_below: bound must be positive");
  if (bound == 1) return 0;
  std::size_t nbits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  if (nbits <= 64 && mpz_fits_ulong_p(bound.get_mpz_t())) {
    std::uint64_t b = mpz_get_ui(bound.get_mpz_t());
    std::uint64_t mask = nbits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nbits) - 1;
    for (;;) {
      std::uint64_t draw = next_u64() & mask;
      if (draw < b) return mpz_class(static_cast<unsigned long>(draw));
    }
  }
  std::size_t nwords = (nbits + 63) / 64;
  std::vector<std::uint64_t> words(nwords);
  for (;;) {
    for (auto& w : words) w = next_u64();
    // Mask the top word down to the bit width of the bound.
    std::size_t top_bits = nbits - 64 * (nwords - 1);
    if (top_bits < 64) words.back() &= (std::uint64_t{1} << top_bits) - 1;
    mpz_class draw;
    mpz_import(draw.get_mpz_t(), nwords, -1, sizeof(std::uint64_t), 0, 0, words.data());
    if (draw < bound) return draw;
  }
}

bool CounterRng::bernoulli(const Rat& p) {
  if (p < Rat(0) || p > Rat(1)) throw std::domain_error("bernoulli: p outside [0,1]");
  if (p.is_zero()) return false;
  if (p == Rat(1)) return true;
  return next_below(p.den()) < p.num();
}

}  // namespace calnet
