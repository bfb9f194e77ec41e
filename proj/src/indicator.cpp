#include "calnet/indicator.hpp"

#include <stdexcept>

namespace calnet {

int interval_indicator(int side, const Rat& p) {
  if (side != 0 && side != 1) throw std::domain_error("interval_indicator: side must be 0 or 1");
  if (p < Rat(0) || p > Rat(1)) throw std::domain_error("interval_indicator: p outside [0,1]");
  bool upper = p >= Rat(1, 2);
  return (side == 1) == upper ? 1 : 0;
}

}  // namespace calnet
