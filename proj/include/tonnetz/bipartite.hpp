#pragma once

#include <cstddef>
#include <vector>

namespace tonnetz {

/// Maximum-cardinality matching in a bipartite graph (Hopcroft–Karp).
/// `adjacency[l]` lists the right vertices adjacent to left vertex l.
/// Returns the matching size.
std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adjacency, std::size_t right_count);

} // namespace tonnetz
