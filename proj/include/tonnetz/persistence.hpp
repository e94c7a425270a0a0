#pragma once

#include "tonnetz/tonnetz.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace tonnetz {

struct ProperPoint {
    double birth = 0.0;
    double death = 0.0;

    double persistence() const { return death - birth; }

    friend bool operator==(const ProperPoint&, const ProperPoint&) = default;
    friend auto operator<=>(const ProperPoint&, const ProperPoint&) = default;
};

/// Persistence diagram of one homological degree. Multiplicity is
/// expressed by repetition; both lists are kept sorted ascending.
/// Points on the diagonal are never stored.
struct PersistenceDiagram {
    int degree = 0;
    std::vector<ProperPoint> proper;
    std::vector<double> essential; ///< births of classes that never die

    void sort();
    /// Rank of the degree's homology at threshold t: classes with
    /// birth <= t < death (essentials count with death = +inf).
    std::size_t betti_at(double t) const;

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

using DiagramSet = std::map<int, PersistenceDiagram>;

/// Persistence diagrams by standard column reduction of the boundary
/// matrix over the two-element field. Throws std::invalid_argument if a
/// face of some simplex is missing or does not precede it.
DiagramSet compute_persistence(const Filtration& filtration, const std::set<int>& degrees = {0, 1, 2});

/// Degree-0 diagram by a union-find sweep with the elder rule. Independent
/// of the matrix reduction; used to cross-check it.
PersistenceDiagram h0_oracle(const Filtration& filtration);

/// Summary quantities read off a diagram.
struct DiagramFeatures {
    std::vector<double> essential_births;
    std::size_t proper_count = 0;
    double max_persistence = 0.0;
    /// |u1 - u2| for a degree-1 diagram with exactly two essential classes.
    std::optional<double> essential_gap;
};

DiagramFeatures diagram_features(const PersistenceDiagram& diagram);

/// Convenience: deform the Tonnetz by `profile` and compute its diagrams.
DiagramSet profile_diagrams(const PitchClassProfile& profile, const std::set<int>& degrees = {0, 1, 2});

} // namespace tonnetz
