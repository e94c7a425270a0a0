#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <span>
#include <vector>

namespace tonnetz {

/// Equal-tuning pitch class, always reduced modulo 12 (0 = C, ..., 11 = B).
class PitchClass {
public:
    constexpr PitchClass() = default;
    constexpr explicit PitchClass(int v) : value_(((v % 12) + 12) % 12) {}

    constexpr int value() const { return value_; }
    constexpr PitchClass transposed(int k) const { return PitchClass(value_ + k); }

    friend constexpr bool operator==(PitchClass, PitchClass) = default;
    friend constexpr auto operator<=>(PitchClass, PitchClass) = default;

private:
    int value_ = 0;
};

inline constexpr int kPitchClassCount = 12;

using PitchClassSet = std::bitset<kPitchClassCount>;

/// Interval class of two pitch classes: min(d, 12 - d) with d = (a - b) mod 12.
constexpr int interval_class(PitchClass a, PitchClass b)
{
    const int d = PitchClass(a.value() - b.value()).value();
    return d <= 6 ? d : 12 - d;
}

/// Tonnetz adjacency: minor third, major third or perfect fifth (and inversions).
constexpr bool is_tonnetz_edge(PitchClass a, PitchClass b)
{
    const int ic = interval_class(a, b);
    return ic == 3 || ic == 4 || ic == 5;
}

using Edge = std::array<int, 2>;
using Triangle = std::array<int, 3>;

/// A 2-dimensional simplicial complex on pitch-class labeled vertices.
///
/// Simplices are indexed globally: vertices first (in the order stored),
/// then edges, then triangles. Every vertex tuple is sorted ascending.
struct SimplicialComplex {
    std::vector<int> vertices;
    std::vector<Edge> edges;
    std::vector<Triangle> triangles;

    std::size_t simplex_count() const { return vertices.size() + edges.size() + triangles.size(); }
    long euler_characteristic() const
    {
        return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
               static_cast<long>(triangles.size());
    }
};

/// The Tonnetz torus: 12 vertices, 36 edges (consonant intervals) and
/// 24 triangles (the major and minor triads). Edges and triangles are
/// sorted lexicographically by their vertex tuples.
const SimplicialComplex& build_tonnetz();

/// Full subcomplex spanned by `pcs`: every simplex of `complex` whose
/// vertices all lie in the set.
SimplicialComplex induced_subcomplex(const SimplicialComplex& complex, const PitchClassSet& pcs);

/// Number of connected components of the 1-skeleton.
std::size_t connected_components(const SimplicialComplex& complex);

/// Relabels every vertex v as v + k (mod 12). On the Tonnetz this is a
/// simplicial automorphism.
SimplicialComplex transpose_complex(const SimplicialComplex& complex, int k);

/// Total duration (seconds) per pitch class.
struct PitchClassProfile {
    std::array<double, kPitchClassCount> durations{};

    double& operator[](PitchClass pc) { return durations[static_cast<std::size_t>(pc.value())]; }
    double operator[](PitchClass pc) const { return durations[static_cast<std::size_t>(pc.value())]; }

    double total() const;
    /// Entry for class v is moved to class v + k.
    PitchClassProfile rotated(int k) const;
    /// Scaled so entries sum to 1; an all-zero profile is returned unchanged.
    PitchClassProfile normalized() const;
    /// Throws std::invalid_argument on a negative or non-finite entry.
    void validate() const;

    friend bool operator==(const PitchClassProfile&, const PitchClassProfile&) = default;
};

struct FiltrationEntry {
    std::size_t simplex = 0; ///< global simplex index in the source complex
    int dimension = 0;
    double value = 0.0;
    std::vector<int> vertices;
};

/// Simplices in filtration order. Values are nondecreasing and every face
/// precedes its cofaces.
struct Filtration {
    std::vector<FiltrationEntry> entries;

    std::size_t size() const { return entries.size(); }
};

/// Lower-star filtration: each simplex takes the maximum height of its
/// vertices. `heights` is indexed by vertex label. Ties are ordered by
/// (value, dimension, simplex index).
///
/// Sublevel persistence of the piecewise-linear extension of the heights
/// over the complex coincides with the persistence of this filtration.
Filtration lower_star_filtration(const SimplicialComplex& complex, std::span<const double> heights);

/// Lower-star filtration of the Tonnetz (or a subcomplex of it) with vertex
/// heights given by the profile. Throws std::invalid_argument on an invalid
/// profile.
Filtration deform(const SimplicialComplex& complex, const PitchClassProfile& profile);

} // namespace tonnetz
