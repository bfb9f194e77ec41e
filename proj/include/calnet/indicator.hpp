#pragma once

#include "calnet/rat.hpp"

namespace calnet {

// Characteristic function of the forecast buckets: side 0 is [0, 1/2),
// side 1 is [1/2, 1]. Exactly one of the two indicators is 1 for any
// p in [0,1]. Rejects p outside [0,1].
int interval_indicator(int side, const Rat& p);

}  // namespace calnet
