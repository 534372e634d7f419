#pragma once

#include <string>

#include "plumb/graph.hpp"

namespace plumb {

// Chain -2,-1,-7,-3,-3,-7,-1,-2 with a -3 leaf under each -1 vertex.
PlumbingGraph example_dpp();

// Star with `branches` >= 2 arms around a -N center: each arm is
// center -- u(-N) -- v(-1) with two -N leaves under v.  N must be large
// enough for negative definiteness; validation rejects it otherwise.
PlumbingGraph example_star(unsigned branches, const Int& weight);

// ADE trees, all weights -2: "a<k>" (k>=1), "d<k>" (k>=4), "e6", "e7", "e8".
PlumbingGraph example_ade(const std::string& name);

}  // namespace plumb
