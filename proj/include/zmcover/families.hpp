#pragma once

#include <cstdint>

#include "zmcover/multigraph.hpp"

namespace zmcover {

// Two vertices joined by two parallel edges 0->1; pi_1 is Z.
MultiGraph doubled_edge();

// C_n with edges (i, i+1 mod n), n >= 1 (C_1 is a loop, C_2 a doubled edge).
MultiGraph cycle_graph(std::uint32_t n);

// Path on n vertices with edges (i, i+1).
MultiGraph path_graph(std::uint32_t n);

// K_n with edges (i, j), i < j, in lexicographic order.
MultiGraph complete_graph(std::uint32_t n);

// Outer 5-cycle, spokes i -> i+5, inner pentagram.
MultiGraph petersen_graph();

// One vertex carrying n loops labelled 0..n-1 (the bouquet whose pi_1 is F_n).
MultiGraph rose_graph(std::uint32_t n);

}  // namespace zmcover
