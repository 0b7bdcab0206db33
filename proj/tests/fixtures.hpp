#pragma once

#include "jladder/ladder.hpp"

// One table shared by the unit tests; high enough for L = 3000 plus one reverse iterate.
inline const jladder::ZetaIntegralTable& shared_table() {
  static const jladder::ZetaIntegralTable table = jladder::build_table(11000.0, 0.05);
  return table;
}
