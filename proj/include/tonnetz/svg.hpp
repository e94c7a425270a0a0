#pragma once

#include "tonnetz/cluster.hpp"
#include "tonnetz/io.hpp"

#include <string>

namespace tonnetz::svg {

/// Persistence diagram on a fixed canvas: the diagonal, proper points as
/// dots and essential classes as vertical lines u = birth.
std::string render_diagram(const io::LabeledDiagram& diagram);

/// Dendrogram with merge height on the horizontal axis; every merge is a
/// vertical split line at its height.
std::string render_dendrogram(const Dendrogram& dendrogram);

} // namespace tonnetz::svg
