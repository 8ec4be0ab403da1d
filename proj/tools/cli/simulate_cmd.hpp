#pragma once

#include <cstdint>
#include <iosfwd>

#include "tailrisk/simulate.hpp"

namespace tailrisk::cli {

// Header "y" for models a-d, "x,y" for e-h; n = 0 writes the header only.
void write_simulation(std::ostream& out, const ModelSpec& spec);

}  // namespace tailrisk::cli
